"""Mechanical checks of the symbolic identities behind the dimension bound.

Everything here is either an exact operator identity (checked by normal
form equality) or a statement about classes in a cyclic module M = D/I
(checked through reduce_element).  A zero residual certifies membership
in the ideal regardless of truncation, because the truncated subspace is
always contained in the true intersection; a NONZERO claim is trusted
only when the truncation is stabilized, otherwise the report says
inconclusive rather than pass or fail.
"""

from __future__ import annotations

import math
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .errors import InconclusiveError
from .filtration import (
    LeftIdealPresentation,
    TruncationParams,
    exponent_pairs_of_degree,
    ideal_dims_at_slacks,
    reduce_element_certified,
    reduce_op_sparse,
)
from .hilbert import (
    DimensionConfig,
    HilbertFit,
    HilbertSample,
    module_dimension,
    multiplicity,
    scan_exact_fit,
)
from .linalg import RowSpace, rank_of_rows
from .weyl import DiffOp, NEG_INF, Polynomial, bernstein_degree, mul, poly_pow


@dataclass(frozen=True)
class IdentityReport:
    identity_name: str
    parameters: dict
    holds: bool
    witness: object = None
    inconclusive: bool = False


def _operator_power(base: DiffOp, k: int) -> DiffOp:
    result = DiffOp.one(base.n)
    for _ in range(k):
        result = mul(result, base)
    return result


def _require_univariate_monic(f: Polynomial, i: int) -> None:
    if not 1 <= i <= f.n:
        raise ValueError(f"variable index {i} out of range 1..{f.n}")
    if f.total_degree() is NEG_INF or f.total_degree() < 1:
        raise ValueError("f must be nonconstant")
    for a in f.terms:
        if any(e and j != i - 1 for j, e in enumerate(a)):
            raise ValueError(f"f must involve only x{i}")
    if f.sorted_terms()[0][1] != 1:
        raise ValueError("f must be monic")


def check_product_rule(f: Polynomial, i: int) -> IdentityReport:
    """d_i f = f d_i + df/dx_i as operators."""
    if not 1 <= i <= f.n:
        raise ValueError(f"variable index {i} out of range 1..{f.n}")
    f_op = f.as_operator()
    lhs = mul(DiffOp.d(i, f.n), f_op)
    rhs = mul(f_op, DiffOp.d(i, f.n)) + f.derivative(i).as_operator()
    holds = lhs == rhs
    return IdentityReport(
        "product-rule",
        {"f": repr(f), "i": i, "n": f.n},
        holds,
        witness=None if holds else lhs - rhs,
    )


def check_recursion_step(f: Polynomial, i: int, s: int, t: int) -> IdentityReport:
    """f^s d^t = d (f^s d^(t-1)) - s f' f^(s-1) d^(t-1), exactly as operators."""
    if s < 1 or t < 1:
        raise ValueError("recursion step needs s >= 1 and t >= 1")
    n = f.n
    d_i = DiffOp.d(i, n)
    fs = poly_pow(f, s).as_operator()
    lhs = mul(fs, _operator_power(d_i, t))
    mid = mul(d_i, mul(fs, _operator_power(d_i, t - 1)))
    correction = mul(
        (f.derivative(i) * poly_pow(f, s - 1)).as_operator(),
        _operator_power(d_i, t - 1),
    )
    rhs = mid - DiffOp.constant(s, n) * correction
    holds = lhs == rhs
    return IdentityReport(
        "recursion-step",
        {"f": repr(f), "i": i, "s": s, "t": t, "n": n},
        holds,
        witness=None if holds else lhs - rhs,
    )


def check_vanishing(
    f: Polynomial,
    s: int,
    t: int,
    i: int = 1,
    params: TruncationParams = TruncationParams(),
) -> IdentityReport:
    """f^s d_i^t z = 0 in D/Df whenever s > t."""
    if not s > t >= 0:
        raise ValueError("vanishing check needs s > t >= 0")
    _require_univariate_monic(f, i)
    ideal = LeftIdealPresentation(f.n, (f.as_operator(),))
    element = mul(poly_pow(f, s).as_operator(), _operator_power(DiffOp.d(i, f.n), t))
    vector, stabilized, _ = reduce_element_certified(element, ideal, params)
    zero = not any(vector)
    parameters = {"f": repr(f), "i": i, "s": s, "t": t, "n": f.n, "stabilized": stabilized}
    if zero:
        return IdentityReport("vanishing", parameters, True)
    if not stabilized:
        return IdentityReport("vanishing", parameters, False, inconclusive=True)
    return IdentityReport("vanishing", parameters, False, witness=vector)


def check_factorial_identity(
    f: Polynomial,
    t: int,
    i: int = 1,
    params: TruncationParams = TruncationParams(),
) -> IdentityReport:
    """f^t d_i^t z = (-1)^t t! (f')^t z, and (f')^t z != 0, in D/Df.

    The nonvanishing side needs f squarefree; callers pick f accordingly.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    _require_univariate_monic(f, i)
    n = f.n
    ideal = LeftIdealPresentation(n, (f.as_operator(),))
    lhs = mul(poly_pow(f, t).as_operator(), _operator_power(DiffOp.d(i, n), t))
    fprime_t = poly_pow(f.derivative(i), t).as_operator()
    rhs = DiffOp.constant(Fraction((-1) ** t * math.factorial(t)), n) * fprime_t
    diff_vector, diff_stab, _ = reduce_element_certified(lhs - rhs, ideal, params)
    nonzero_vector, nz_stab, _ = reduce_element_certified(fprime_t, ideal, params)
    parameters = {"f": repr(f), "i": i, "t": t, "n": n}
    if any(diff_vector):
        if not diff_stab:
            return IdentityReport("factorial-identity", parameters, False, inconclusive=True)
        return IdentityReport("factorial-identity", parameters, False, witness=diff_vector)
    if not any(nonzero_vector):
        # zero residual certifies (f')^t in the ideal: genuine failure
        return IdentityReport("factorial-identity", parameters, False, witness=fprime_t)
    if not nz_stab:
        return IdentityReport("factorial-identity", parameters, False, inconclusive=True)
    return IdentityReport("factorial-identity", parameters, True)


def binomial_count(h: int, t: int) -> int:
    """Number of monomials in h variables of total degree <= t."""
    if h < 0 or t < 0:
        raise ValueError("h and t must be >= 0")
    return math.comb(t + h, h)


def independence_rank(
    ideal: LeftIdealPresentation,
    h: int,
    t: int,
    params: TruncationParams = TruncationParams(),
) -> int:
    """Rank of {d_1^{t_1}..d_h^{t_h} z : sum t_i <= t} inside Gamma_t."""
    n = ideal.n
    if not 0 <= h <= n:
        raise ValueError(f"need 0 <= h <= {n}")
    if t < 0:
        raise ValueError("t must be >= 0")
    rows = []
    for total in range(t + 1):
        for alpha in _tuples_with_sum(h, total):
            b = alpha + (0,) * (n - h)
            op = DiffOp.monomial((0,) * n, b)
            vector, stabilized, _ = reduce_element_certified(op, ideal, params, t=t)
            if not stabilized:
                raise InconclusiveError(
                    f"truncation unstabilized while reducing d^{alpha}; raise the slack"
                )
            rows.append({j: v for j, v in enumerate(vector) if v})
    return rank_of_rows(rows)


def _tuples_with_sum(h: int, total: int):
    if h == 0:
        if total == 0:
            yield ()
        return
    if h == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _tuples_with_sum(h - 1, total - first):
            yield (first,) + rest


@dataclass(frozen=True)
class SubmoduleReport:
    d_sub: int
    d_full: int
    holds: bool
    fit_sub: HilbertFit
    fit_full: HilbertFit


def submodule_monotonicity(
    ideal: LeftIdealPresentation,
    p: DiffOp,
    config: DimensionConfig = DimensionConfig(),
) -> SubmoduleReport:
    """d(D.p') <= d(M) for the class p' of p, per the submodule bound."""
    d_full, fit_full = module_dimension(ideal, config)
    params = config.truncation_params()
    vector, stabilized, _ = reduce_element_certified(p, ideal, params)
    if not any(vector):
        raise ValueError("p is zero in M; pick a nonzero class")
    if not stabilized:
        raise InconclusiveError("cannot certify p != 0 in M; raise the slack")
    t_hi = min(config.initial_t, config.budget)
    while True:
        samples = _submodule_samples(ideal, p, t_hi, params)
        fit = scan_exact_fit(samples, config.fit_window)
        if fit is not None:
            break
        if t_hi >= config.budget:
            raise InconclusiveError("no exact stabilized fit for the submodule filtration")
        t_hi = min(2 * t_hi, config.budget)
    d_sub = int(fit.degree)
    return SubmoduleReport(d_sub, d_full, d_sub <= d_full, fit, fit_full)


def _submodule_samples(
    ideal: LeftIdealPresentation, p: DiffOp, t_hi: int, params: TruncationParams
) -> list[HilbertSample]:
    """h'(t) = rank{class of m.p : deg m <= t}, the filtration of D.p'."""
    n = ideal.n
    t_ref = t_hi + int(bernstein_degree(p))
    slack = params.resolved_slack(ideal)
    dims = ideal_dims_at_slacks(
        ideal, t_ref, [slack, slack + params.stabilization_window]
    )
    stabilized = dims[0] == dims[1]
    span = RowSpace()
    out = []
    for t in range(t_hi + 1):
        for a, b in exponent_pairs_of_degree(n, t):
            span.add(reduce_op_sparse(mul(DiffOp.monomial(a, b), p), ideal, t_ref, params))
        out.append(HilbertSample(t, span.rank, stabilized))
    return out


# ---------------------------------------------------------------------------
# randomized identity suites


def random_polynomial(rng: random.Random, n: int, max_degree: int) -> Polynomial:
    """Nonzero random polynomial with small rational coefficients."""
    while True:
        terms = {}
        for _ in range(rng.randint(1, 5)):
            total = rng.randint(0, max_degree)
            cuts = sorted(rng.randint(0, total) for _ in range(n - 1))
            parts = []
            prev = 0
            for c in cuts + [total]:
                parts.append(c - prev)
                prev = c
            num = rng.choice([v for v in range(-9, 10) if v])
            den = rng.randint(1, 5)
            exp = tuple(parts)
            terms[exp] = terms.get(exp, Fraction(0)) + Fraction(num, den)
        f = Polynomial(n, terms)
        if not f.is_zero():
            return f


def eq1_suite(cases: int = 200, seed: int = 0, n_max: int = 3, deg_max: int = 4):
    """Randomized product-rule reports; exact equality each case."""
    rng = random.Random(seed)
    reports = []
    for _ in range(cases):
        n = rng.randint(1, n_max)
        i = rng.randint(1, n)
        f = random_polynomial(rng, n, deg_max)
        reports.append(check_product_rule(f, i))
    return reports


# ---------------------------------------------------------------------------
# corpus runner


@dataclass(frozen=True)
class CorpusRow:
    name: str
    n: int
    d: int | None
    multiplicity: Fraction | None
    stabilized: bool | None
    runtime: float
    verdict: str  # pass | fail | inconclusive | zero-module
    expected_d: int | None
    detail: str = ""


@dataclass(frozen=True)
class CorpusReport:
    rows: tuple

    @property
    def passed(self) -> bool:
        return all(r.verdict == "pass" for r in self.rows)

    @property
    def failures(self) -> list:
        return [r for r in self.rows if r.verdict in ("fail", "zero-module")]

    @property
    def inconclusive(self) -> list:
        return [r for r in self.rows if r.verdict == "inconclusive"]


def _run_corpus_entry(entry, config: DimensionConfig) -> CorpusRow:
    from .errors import ZeroModuleError

    start = time.perf_counter()
    name, n, expected = entry.name, entry.n, entry.expected_d
    try:
        d, fit = module_dimension(entry.ideal, config)
    except ZeroModuleError:
        return CorpusRow(
            name, n, None, None, None, time.perf_counter() - start,
            "zero-module", expected, "module is zero",
        )
    except InconclusiveError as exc:
        return CorpusRow(
            name, n, None, None, None, time.perf_counter() - start,
            "inconclusive", expected, str(exc),
        )
    elapsed = time.perf_counter() - start
    mult = multiplicity(fit)
    if not n <= d <= 2 * n:
        verdict, detail = "fail", f"d = {d} outside [n, 2n] = [{n}, {2 * n}]"
    elif expected is not None and d != expected:
        verdict, detail = "fail", f"d = {d}, expected {expected}"
    else:
        verdict, detail = "pass", ""
    return CorpusRow(name, n, d, mult, fit.all_stabilized, elapsed, verdict, expected, detail)


def bernstein_corpus(
    entries,
    config: DimensionConfig = DimensionConfig(),
    threads: int | None = None,
) -> CorpusReport:
    """Run module_dimension over a corpus; d >= n must hold on every entry.

    Inconclusive entries are flagged and the run continues.  Output order
    is by entry name regardless of scheduling.
    """
    ordered = sorted(entries, key=lambda e: e.name)
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda e: _run_corpus_entry(e, config), ordered))
    else:
        rows = [_run_corpus_entry(e, config) for e in ordered]
    return CorpusReport(tuple(rows))
