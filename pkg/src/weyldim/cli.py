"""Command line client for the engine.

Every command builds the same request model the HTTP service accepts.
By default it is evaluated in-process; with --server URL the request is
POSTed to a running service (`weyldim serve`) instead, so the CLI is a
thin client either way.

Exit codes: 0 pass, 1 property failure, 2 usage or parse error,
3 degenerate input (zero module), 4 inconclusive truncation.
JSON output is byte-stable for identical flags and seed: keys are
sorted, rationals are strings, and runtimes appear only in tables.
"""

from __future__ import annotations

import argparse
import json
import sys

import httpx

from .corpus import load_corpus_dir, load_corpus_file
from .errors import (
    InconclusiveError,
    InsufficientDataError,
    OpSyntaxError,
    WeylError,
    ZeroModuleError,
)
from .opparser import print_op
from .service import api
from .service.models import (
    ApplyRequest,
    CheckRequest,
    CompareRequest,
    CorpusEntryModel,
    CorpusRequest,
    DimRequest,
    FiltrationSpecModel,
    NormalizeRequest,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3
EXIT_INCONCLUSIVE = 4

_HANDLERS = {
    "/v1/normalize": api.do_normalize,
    "/v1/apply": api.do_apply,
    "/v1/dim": api.do_dim,
    "/v1/check": api.do_check,
    "/v1/compare": api.do_compare,
    "/v1/corpus": api.do_corpus,
}

_REMOTE_EXIT = {
    "parse_error": EXIT_USAGE,
    "corpus_error": EXIT_USAGE,
    "usage_error": EXIT_USAGE,
    "zero_module": EXIT_DEGENERATE,
    "inconclusive": EXIT_INCONCLUSIVE,
}


class _RemoteError(Exception):
    def __init__(self, exit_code: int, message: str):
        super().__init__(message)
        self.exit_code = exit_code


def _make_client(server: str) -> httpx.Client:
    return httpx.Client(base_url=server, timeout=300.0)


def _call(args, path: str, request) -> dict:
    if not args.server:
        return _HANDLERS[path](request).model_dump(mode="json")
    with _make_client(args.server) as client:
        resp = client.post(path, json=request.model_dump(mode="json"))
    if resp.status_code == 200:
        return resp.json()
    try:
        body = resp.json()
    except ValueError:
        body = {}
    tag = body.get("error", "usage_error")
    message = body.get("message", resp.text)
    raise _RemoteError(_REMOTE_EXIT.get(tag, EXIT_USAGE), f"{tag}: {message}")


def _emit_json(payload) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2))


def _split_ideal(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def _format_table(headers, rows, right_align=()) -> str:
    table = [list(map(str, headers))] + [list(map(str, r)) for r in rows]
    widths = [max(len(row[c]) for row in table) for c in range(len(headers))]
    lines = []
    for i, row in enumerate(table):
        cells = []
        for c, cell in enumerate(row):
            if c in right_align and i > 0:
                cells.append(cell.rjust(widths[c]))
            else:
                cells.append(cell.ljust(widths[c]))
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# commands


def _cmd_normalize(args) -> int:
    req = NormalizeRequest(n=args.n, expr=args.expr, trunc=args.trunc)
    data = _call(args, "/v1/normalize", req)
    if args.output == "json":
        _emit_json(data)
    else:
        print(data["normal_form"])
    return EXIT_OK


def _cmd_apply(args) -> int:
    req = ApplyRequest(n=args.n, op=args.op, poly=args.poly, trunc=args.trunc)
    data = _call(args, "/v1/apply", req)
    if args.output == "json":
        _emit_json(data)
    else:
        print(data["result"])
    return EXIT_OK


def _dim_request_args(args) -> DimRequest:
    if args.corpus_file is not None and args.ideal is not None:
        raise ValueError("give either a corpus file or --ideal, not both")
    if args.corpus_file is not None:
        entry = load_corpus_file(args.corpus_file)
        n = entry.n
        generators = [print_op(g) for g in entry.ideal.generators]
    else:
        if args.ideal is None:
            raise ValueError("dim needs a corpus file or --ideal")
        if args.n is None:
            raise ValueError("--ideal requires -n")
        n = args.n
        generators = _split_ideal(args.ideal)
    return DimRequest(
        n=n,
        generators=generators,
        slack=args.slack,
        budget=args.budget,
        fit_window=args.window,
        stabilization_window=args.stabilization_window,
    )


def _cmd_dim(args) -> int:
    data = _call(args, "/v1/dim", _dim_request_args(args))
    if args.output == "json":
        _emit_json(data)
    else:
        print(_format_table(["t", "h(t)"], data["samples"], right_align={0, 1}))
        print(f"degree        {data['degree']}")
        print(f"leading       {data['leading']}")
        print(f"multiplicity  {data['multiplicity']}")
        print(f"stabilized    {str(data['stabilized']).lower()}")
        print(f"d >= n: {data['verdict']}")
    return EXIT_OK if data["verdict"] == "PASS" else EXIT_FAIL


def _check_requests(args) -> list[CheckRequest]:
    suites = [
        name
        for name, on in (
            ("eq1", args.eq1),
            ("eq2", args.eq2),
            ("eq3", args.eq3),
            ("eq4", args.eq4),
            ("independence", args.independence),
            ("submodule", args.submodule),
        )
        if on
    ]
    if not suites:
        raise ValueError("pick at least one of --eq1 --eq2 --eq3 --eq4 --independence --submodule")
    generators = _split_ideal(args.ideal) if args.ideal is not None else []
    return [
        CheckRequest(
            suite=suite,
            n=args.n or 1,
            f=args.f,
            i=args.i,
            s=args.s,
            t=args.t,
            h=args.h,
            p=args.p,
            generators=generators,
            seed=args.seed,
            cases=args.cases,
            slack=args.slack,
            budget=args.budget,
            fit_window=args.window,
            stabilization_window=args.stabilization_window,
        )
        for suite in suites
    ]


def _render_check_table(data: dict) -> str:
    lines = [f"suite {data['suite']}  seed {data['seed']}"]
    for rep in data["reports"]:
        status = "INCONCLUSIVE" if rep["inconclusive"] else ("PASS" if rep["holds"] else "FAIL")
        params = " ".join(f"{k}={v}" for k, v in sorted(rep["parameters"].items()))
        lines.append(f"  [{status}] {rep['identity']} {params}")
        if rep.get("witness"):
            lines.append(f"    witness: {rep['witness']}")
    for key, value in sorted(data["detail"].items()):
        lines.append(f"  {key}: {value}")
    lines.append(
        f"  passed {data['passed_count']}/{data['cases']}"
        + (f"  inconclusive {data['inconclusive_count']}" if data["inconclusive_count"] else "")
    )
    return "\n".join(lines)


def _cmd_check(args) -> int:
    results = [_call(args, "/v1/check", req) for req in _check_requests(args)]
    if args.output == "json":
        _emit_json({"checks": results})
    else:
        print("\n".join(_render_check_table(data) for data in results))
    if any(data["failed_count"] for data in results):
        return EXIT_FAIL
    if any(data["inconclusive"] for data in results):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _cmd_compare(args) -> int:
    entry = load_corpus_file(args.corpus_file)
    if len(entry.filtrations) < 2:
        raise ValueError("compare needs a corpus file with two filtration: lines")
    specs = [
        FiltrationSpecModel(
            generators=[print_op(u) for u in spec.generators_in_M],
            shifts=list(spec.shifts),
        )
        for spec in entry.filtrations[:2]
    ]
    req = CompareRequest(
        n=entry.n,
        generators=[print_op(g) for g in entry.ideal.generators],
        specs=specs,
        t_max=args.t_max,
        slack=args.slack,
        stabilization_window=args.stabilization_window,
        fit_window=args.window,
    )
    data = _call(args, "/v1/compare", req)
    if args.output == "json":
        _emit_json(data)
    else:
        w = data["w"]
        print(f"interleaving width w = {'not found' if w is None else w} (t_max {data['t_max']})")
        degrees = " ".join("?" if d is None else str(d) for d in data["degrees"])
        print(f"hilbert degrees: {degrees}")
        print(f"equal degrees: {'yes' if data['equal_degrees'] else 'no'}")
    if data["w"] is None or any(d is None for d in data["degrees"]):
        return EXIT_INCONCLUSIVE
    if not data["equal_degrees"]:
        return EXIT_FAIL
    return EXIT_OK


def _cmd_corpus(args) -> int:
    entries = load_corpus_dir(args.directory)
    req = CorpusRequest(
        entries=[
            CorpusEntryModel(
                name=e.name,
                n=e.n,
                generators=[print_op(g) for g in e.ideal.generators],
                expect_d=e.expected_d,
            )
            for e in entries
        ],
        slack=args.slack,
        budget=args.budget,
        fit_window=args.window,
        stabilization_window=args.stabilization_window,
    )
    data = _call(args, "/v1/corpus", req)
    if args.output == "json":
        stripped = dict(data)
        stripped["rows"] = [
            {k: v for k, v in row.items() if k != "runtime"} for row in data["rows"]
        ]
        _emit_json(stripped)
    else:
        rows = [
            [
                row["name"],
                row["n"],
                "-" if row["d"] is None else row["d"],
                row["multiplicity"] or "-",
                "-" if row["stabilized"] is None else str(row["stabilized"]).lower(),
                f"{row['runtime']:.2f}s",
                row["verdict"] + (f" ({row['detail']})" if row["detail"] else ""),
            ]
            for row in data["rows"]
        ]
        print(
            _format_table(
                ["name", "n", "d", "multiplicity", "stabilized", "runtime", "verdict"],
                rows,
                right_align={1, 2, 5},
            )
        )
        print(
            f"entries {len(rows)}  failures {data['failure_count']}"
            f"  inconclusive {data['inconclusive_count']}"
        )
    if data["failure_count"]:
        return EXIT_FAIL
    if data["inconclusive_count"]:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("weyldim.service.app:app", host=args.host, port=args.port)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(sub, engine: bool = True) -> None:
    sub.add_argument("--output", choices=("json", "table"), default="table")
    sub.add_argument("--server", default=None, help="URL of a running weyldim service")
    if engine:
        sub.add_argument("--slack", type=int, default=None,
                         help="ideal truncation slack (default: max generator degree + 2)")
        sub.add_argument("--budget", type=int, default=16, help="largest sampled t")
        sub.add_argument("--window", type=int, default=4, help="trailing exact-fit window")
        sub.add_argument("--stabilization-window", type=int, default=2)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weyldim",
        description="Exact Weyl-algebra engine: normal forms, module dimensions, proof checks.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("normalize", help="parse an operator and print its normal form")
    p.add_argument("expr")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--trunc", type=int, default=None, help="drop x-degree above this bound")
    _add_common(p, engine=False)
    p.set_defaults(func=_cmd_normalize)

    p = subs.add_parser("apply", help="apply an operator to a polynomial")
    p.add_argument("op")
    p.add_argument("poly")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--trunc", type=int, default=None)
    _add_common(p, engine=False)
    p.set_defaults(func=_cmd_apply)

    p = subs.add_parser("dim", help="Hilbert fit and module dimension d(M) for M = D/I")
    p.add_argument("corpus_file", nargs="?", default=None)
    p.add_argument("-n", type=int, default=None)
    p.add_argument("--ideal", default=None, help='comma-separated generators, "" for the zero ideal')
    _add_common(p)
    p.set_defaults(func=_cmd_dim)

    p = subs.add_parser("check", help="verify proof identities")
    for flag in ("eq1", "eq2", "eq3", "eq4", "independence", "submodule"):
        p.add_argument(f"--{flag}", action="store_true")
    p.add_argument("-n", type=int, default=1)
    p.add_argument("--f", default=None, help="monic polynomial for eq2/eq3/eq4")
    p.add_argument("--i", type=int, default=1, help="variable index")
    p.add_argument("--s", type=int, default=None)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--h", type=int, default=None, help="height for independence")
    p.add_argument("--p", default=None, help="module element for submodule")
    p.add_argument("--ideal", default=None, help="ideal generators for submodule")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=200)
    _add_common(p)
    p.set_defaults(func=_cmd_check)

    p = subs.add_parser("compare", help="interleaving width of two good filtrations")
    p.add_argument("corpus_file")
    p.add_argument("--t-max", dest="t_max", type=int, default=8)
    _add_common(p)
    p.set_defaults(func=_cmd_compare)

    p = subs.add_parser("corpus", help="run the dimension corpus; d >= n must hold")
    p.add_argument("directory", nargs="?", default="corpus")
    _add_common(p)
    p.set_defaults(func=_cmd_corpus)

    p = subs.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _RemoteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ZeroModuleError as exc:
        print(f"degenerate input: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (InconclusiveError, InsufficientDataError) as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (OpSyntaxError, WeylError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except httpx.HTTPError as exc:
        print(f"server error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
