"""Pure request handlers: the CLI calls these in-process, the app over HTTP.

Domain errors propagate to the caller; the FastAPI layer translates them
to structured 422 bodies and the CLI to exit codes, so both clients see
the same behavior.
"""

from __future__ import annotations

import os

from ..errors import InconclusiveError
from ..filtration import (
    GoodFiltrationSpec,
    LeftIdealPresentation,
    TruncationParams,
    filtration_step_dims,
    interleave_width,
)
from ..hilbert import (
    DimensionConfig,
    HilbertSample,
    module_dimension,
    multiplicity,
    scan_exact_fit,
)
from ..opparser import parse, parse_poly, print_op, print_poly
from ..prooflab import (
    IdentityReport,
    bernstein_corpus,
    binomial_count,
    check_factorial_identity,
    check_product_rule,
    check_recursion_step,
    check_vanishing,
    eq1_suite,
    independence_rank,
    submodule_monotonicity,
)
from ..corpus import CorpusEntry
from ..weyl import NEG_INF, DiffOp, apply, bernstein_degree, order_degree
from .models import (
    ApplyRequest,
    ApplyResponse,
    CheckRequest,
    CheckResponse,
    CompareRequest,
    CompareResponse,
    CorpusRequest,
    CorpusResponse,
    CorpusRowModel,
    DimRequest,
    DimResponse,
    IdentityReportModel,
    NormalizeRequest,
    NormalizeResponse,
)


def _parse_generators(texts: list[str], n: int) -> LeftIdealPresentation:
    gens = tuple(parse(g, n) for g in texts if g.strip())
    return LeftIdealPresentation(n, gens)


def _int_degree(value) -> int | None:
    return None if value is NEG_INF else int(value)


def do_normalize(req: NormalizeRequest) -> NormalizeResponse:
    op = parse(req.expr, req.n).truncated(req.trunc)
    return NormalizeResponse(
        n=req.n,
        input=req.expr,
        normal_form=print_op(op),
        term_count=len(op.terms),
        bernstein_degree=_int_degree(bernstein_degree(op)),
        order_degree=_int_degree(order_degree(op)),
    )


def do_apply(req: ApplyRequest) -> ApplyResponse:
    op = parse(req.op, req.n)
    f = parse_poly(req.poly, req.n)
    return ApplyResponse(n=req.n, result=print_poly(apply(op, f, trunc=req.trunc)))


def _dim_config(req) -> DimensionConfig:
    return DimensionConfig(
        slack=req.slack,
        stabilization_window=req.stabilization_window,
        budget=req.budget,
        fit_window=req.fit_window,
    )


def do_dim(req: DimRequest) -> DimResponse:
    ideal = _parse_generators(req.generators, req.n)
    d, fit = module_dimension(ideal, _dim_config(req))
    return DimResponse(
        n=req.n,
        degree=d,
        samples=[[s.t, s.value] for s in fit.samples],
        binomial_coeffs=[str(c) for c in fit.binomial_coeffs],
        leading=str(fit.leading),
        multiplicity=str(multiplicity(fit)),
        exact=fit.exact_on_window,
        stabilized=fit.all_stabilized,
        fit_window=[fit.fit_window[0], fit.fit_window[1]],
        verdict="PASS" if d >= req.n else "FAIL",
    )


def _report_model(r: IdentityReport) -> IdentityReportModel:
    witness = None
    if r.witness is not None:
        witness = print_op(r.witness) if isinstance(r.witness, DiffOp) else str(r.witness)
    return IdentityReportModel(
        identity=r.identity_name,
        parameters={k: (str(v) if not isinstance(v, (int, bool)) else v) for k, v in r.parameters.items()},
        holds=r.holds,
        inconclusive=r.inconclusive,
        witness=witness,
    )


def _require(value, flag: str):
    if value is None:
        raise ValueError(f"suite requires {flag}")
    return value


def do_check(req: CheckRequest) -> CheckResponse:
    params = TruncationParams(req.slack, req.stabilization_window)
    reports: list[IdentityReport] = []
    detail: dict = {}
    inconclusive_flag = False

    if req.suite == "eq1":
        all_reports = eq1_suite(cases=req.cases, seed=req.seed, n_max=req.n)
        reports = [r for r in all_reports if not r.holds]
        passed_count = sum(1 for r in all_reports if r.holds)
        total = len(all_reports)
    elif req.suite == "eq2":
        f = parse_poly(_require(req.f, "--f"), req.n)
        if req.s is not None:
            pairs = [(req.s, t) for t in ([req.t] if req.t is not None else range(req.s))]
        else:
            pairs = [(s, t) for s in range(1, 5) for t in range(s)]
        for s, t in pairs:
            reports.append(check_vanishing(f, s, t, i=req.i, params=params))
        total = len(reports)
        passed_count = sum(1 for r in reports if r.holds)
    elif req.suite == "eq3":
        f = parse_poly(_require(req.f, "--f"), req.n)
        if req.s is not None and req.t is not None:
            pairs = [(req.s, req.t)]
        else:
            pairs = [(s, t) for s in range(1, 4) for t in range(1, 4)]
        for s, t in pairs:
            reports.append(check_recursion_step(f, req.i, s, t))
        total = len(reports)
        passed_count = sum(1 for r in reports if r.holds)
    elif req.suite == "eq4":
        f = parse_poly(_require(req.f, "--f"), req.n)
        ts = [req.t] if req.t is not None else list(range(4))
        for t in ts:
            reports.append(check_factorial_identity(f, t, i=req.i, params=params))
        total = len(reports)
        passed_count = sum(1 for r in reports if r.holds)
    elif req.suite == "independence":
        h = req.h if req.h is not None else req.n
        t = req.t if req.t is not None else 3
        gens = tuple(DiffOp.x(i, req.n) for i in range(1, h + 1))
        ideal = LeftIdealPresentation(req.n, gens)
        expected = binomial_count(h, t)
        try:
            rank = independence_rank(ideal, h, t, params)
        except InconclusiveError as exc:
            reports = [
                IdentityReport("independence", {"h": h, "t": t, "n": req.n}, False, inconclusive=True)
            ]
            detail = {"note": str(exc), "expected": expected}
            inconclusive_flag = True
            total, passed_count = 1, 0
        else:
            holds = rank == expected
            reports = [
                IdentityReport(
                    "independence",
                    {"h": h, "t": t, "n": req.n, "rank": rank, "expected": expected},
                    holds,
                )
            ]
            detail = {"rank": rank, "expected": expected}
            total, passed_count = 1, int(holds)
    elif req.suite == "submodule":
        ideal = _parse_generators(req.generators, req.n)
        p = parse(_require(req.p, "--p"), req.n)
        try:
            result = submodule_monotonicity(ideal, p, _dim_config(req))
        except InconclusiveError as exc:
            reports = [
                IdentityReport("submodule", {"p": print_op(p), "n": req.n}, False, inconclusive=True)
            ]
            detail = {"note": str(exc)}
            inconclusive_flag = True
            total, passed_count = 1, 0
        else:
            reports = [
                IdentityReport(
                    "submodule",
                    {
                        "p": print_op(p),
                        "n": req.n,
                        "d_sub": result.d_sub,
                        "d_full": result.d_full,
                    },
                    result.holds,
                )
            ]
            detail = {"d_sub": result.d_sub, "d_full": result.d_full}
            total, passed_count = 1, int(result.holds)
    else:  # pragma: no cover - pydantic forbids other values
        raise ValueError(f"unknown suite {req.suite!r}")

    inconclusive_flag = inconclusive_flag or any(r.inconclusive for r in reports)
    failed = [r for r in reports if not r.holds and not r.inconclusive]
    return CheckResponse(
        suite=req.suite,
        seed=req.seed,
        cases=total,
        passed_count=passed_count,
        failed_count=len(failed),
        inconclusive_count=sum(1 for r in reports if r.inconclusive),
        passed=passed_count == total,
        inconclusive=inconclusive_flag,
        reports=[_report_model(r) for r in reports],
        detail=detail,
    )


def _spec_degree(spec: GoodFiltrationSpec, t_max: int, params, fit_window: int) -> tuple[int | None, bool]:
    dims, stabilized = filtration_step_dims(spec, t_max, params)
    samples = [HilbertSample(j, v, stabilized) for j, v in enumerate(dims)]
    fit = scan_exact_fit(samples, fit_window)
    if fit is None or fit.degree is NEG_INF:
        return None, stabilized
    return int(fit.degree), stabilized


def do_compare(req: CompareRequest) -> CompareResponse:
    ideal = _parse_generators(req.generators, req.n)
    params = TruncationParams(req.slack, req.stabilization_window)
    specs = []
    for model in req.specs:
        ops = tuple(parse(g, req.n) for g in model.generators)
        shifts = tuple(model.shifts) if model.shifts is not None else (0,) * len(ops)
        specs.append(GoodFiltrationSpec(ideal, ops, shifts))
    w = interleave_width(specs[0], specs[1], req.t_max, params)
    degrees = []
    stabilized = True
    for spec in specs:
        degree, stab = _spec_degree(spec, req.t_max, params, req.fit_window)
        degrees.append(degree)
        stabilized = stabilized and stab
    equal = degrees[0] is not None and all(d == degrees[0] for d in degrees)
    return CompareResponse(
        w=w, degrees=degrees, equal_degrees=equal, t_max=req.t_max, stabilized=stabilized
    )


def do_corpus(req: CorpusRequest) -> CorpusResponse:
    entries = []
    for model in req.entries:
        ideal = _parse_generators(model.generators, model.n)
        entries.append(
            CorpusEntry(name=model.name, n=model.n, ideal=ideal, expected_d=model.expect_d)
        )
    threads_env = os.environ.get("WEYL_THREADS", "").strip()
    threads = int(threads_env) if threads_env.isdigit() else None
    config = _dim_config(req)
    report = bernstein_corpus(entries, config, threads=threads)
    rows = [
        CorpusRowModel(
            name=r.name,
            n=r.n,
            d=r.d,
            multiplicity=None if r.multiplicity is None else str(r.multiplicity),
            stabilized=r.stabilized,
            verdict=r.verdict,
            expected_d=r.expected_d,
            detail=r.detail,
            runtime=r.runtime,
        )
        for r in report.rows
    ]
    return CorpusResponse(
        rows=rows,
        passed=report.passed,
        failure_count=len(report.failures),
        inconclusive_count=len(report.inconclusive),
    )
