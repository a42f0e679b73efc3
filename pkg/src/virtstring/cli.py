"""Command-line front end.

Subcommands: matrix, rho, mu, nu, bounds, orbit, equiv, paper-check.
Diagrams are given as arrow-list text ("T0 H1 H0 T1"), as a named example
("M" or "alpha:p,q"), or line-by-line in a corpus file.  JSON output is
deterministic: identical invocations produce byte-identical bytes.

Exit codes: 0 success, 1 failed paper-check, 2 parse/usage errors,
3 budget-inconclusive results.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import acceptance
from .based_matrix import (
    based_matrix,
    canonical_form,
    classify,
    homologous,
    reduce_to_primitive,
)
from .diagram import (
    DiagramError,
    GaussDiagram,
    make_alpha_pq,
    make_example_M,
    parse_diagram,
    serialize_diagram,
)
from .invariants import TermSum, bound_report, mu_analysis, nu
from .moves import BudgetExceeded, homotopic_bounded, type3_orbit

SCHEMA = "virtstring/1"

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE = 2
EXIT_INCONCLUSIVE = 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_PARSE):
        super().__init__(message)
        self.code = code


def _resolve(spec: str) -> GaussDiagram:
    """A diagram argument: named example or arrow-list text."""
    if spec == "M":
        return make_example_M()
    if spec.startswith("alpha:"):
        try:
            p, q = (int(x) for x in spec[len("alpha:"):].split(","))
            return make_alpha_pq(p, q)
        except (ValueError, DiagramError) as exc:
            raise CliError(f"bad example spec {spec!r}: {exc}") from exc
    try:
        return parse_diagram(spec)
    except DiagramError as exc:
        raise CliError(f"cannot parse diagram {spec!r}: {exc}") from exc


def _input_diagrams(args) -> list[GaussDiagram]:
    if args.corpus:
        out = []
        try:
            with open(args.corpus) as fh:
                for line in fh:
                    line = line.strip()
                    if not line or line.startswith("#"):
                        continue
                    out.append(_resolve(line))
        except OSError as exc:
            raise CliError(f"cannot read corpus: {exc}") from exc
        return out
    if args.example:
        return [_resolve(args.example)]
    if getattr(args, "diagram", None) is not None:
        return [_resolve(args.diagram)]
    raise CliError("no diagram given (positional, --example, or --corpus)")


def _dump(payload, fmt: str, text_fn) -> None:
    if fmt == "json":
        doc = {"schema": SCHEMA, "results": payload}
        sys.stdout.write(json.dumps(doc, sort_keys=True, separators=(",", ":")))
        sys.stdout.write("\n")
    else:
        text_fn(payload)


def _matrix_json(m) -> dict:
    return {
        "labels": [list(l) if isinstance(l, tuple) else l for l in m.labels],
        "rows": [list(r) for r in m.b],
    }


def _matrix_text(m, out=sys.stdout) -> None:
    width = max(len(str(v)) for row in m.b for v in row)
    names = []
    for l in m.labels:
        names.append(l if isinstance(l, str) else f"{l[0][0]}{l[1]}")
    out.write("      " + " ".join(f"{n:>{width}}" for n in names) + "\n")
    for name, row in zip(names, m.b):
        out.write(f"{name:>5} " + " ".join(f"{v:>{width}}" for v in row) + "\n")


def _termsum_json(ts: TermSum) -> dict:
    items = sorted((repr(k), c) for k, c in ts.coefficients.items())
    return {
        "terms": [{"key": k, "coefficient": c} for k, c in items],
        "total_multiplicity": ts.total_multiplicity,
        "unresolved": ts.unresolved,
        "zero": ts.is_zero(),
    }


def _cmd_matrix(args) -> int:
    results = []
    for g in _input_diagrams(args):
        m = based_matrix(g)
        prim, red = reduce_to_primitive(m)
        results.append(
            {
                "diagram": serialize_diagram(g),
                "matrix": _matrix_json(m),
                "primitive": _matrix_json(prim),
                "is_primitive": prim.size == m.size,
                "reduction_steps": [
                    {"kind": k, "removed": [list(l) for l in labels]}
                    for k, labels in red.steps
                ],
            }
        )

    def text(res):
        for r in res:
            print(f"diagram: {r['diagram']}")
            print("based matrix:")
            m = based_matrix(parse_diagram(r["diagram"]))
            _matrix_text(m)
            prim, _ = reduce_to_primitive(m)
            print(f"primitive ({'already' if r['is_primitive'] else 'after reduction'}):")
            _matrix_text(prim)

    _dump(results, args.format, text)
    return EXIT_OK


def _cmd_rho(args) -> int:
    results = []
    for g in _input_diagrams(args):
        prim, _ = reduce_to_primitive(based_matrix(g))
        results.append({"diagram": serialize_diagram(g), "rho": prim.size - 1})
    _dump(
        results,
        args.format,
        lambda res: [print(f"{r['diagram'] or '(empty)'}: rho = {r['rho']}") for r in res],
    )
    return EXIT_OK


def _cmd_mu(args) -> int:
    results = []
    for g in _input_diagrams(args):
        rep = mu_analysis(g)
        results.append(
            {
                "diagram": serialize_diagram(g),
                "arrows": rep.arrows,
                "rho": rep.rho,
                "t_mu_lower": rep.t_mu_lower,
                "t_mu_half": rep.t_mu_half,
                "exact": rep.t_mu_exact,
                "justification": rep.exactness_justification,
                "C": rep.C,
                "A": rep.A,
                "O": rep.O,
                "terms": [
                    {
                        "arrow": t.arrow,
                        "sign": t.sign,
                        "semi_trivial": t.semi_trivial,
                        "certified_not_semi_trivial": t.certified_not_semi_trivial,
                    }
                    for t in rep.terms
                ],
            }
        )

    def text(res):
        for r in res:
            print(
                f"{r['diagram'] or '(empty)'}: t(mu)/2 >= {r['t_mu_half']}"
                f"{' (exact)' if r['exact'] else ''}, rho = {r['rho']}, O = {r['O']}"
            )

    _dump(results, args.format, text)
    return EXIT_OK


def _cmd_nu(args) -> int:
    code = EXIT_OK
    results = []
    for g in _input_diagrams(args):
        ts = nu(g, max_states=args.max_states)
        if ts.unresolved:
            code = EXIT_INCONCLUSIVE
        results.append({"diagram": serialize_diagram(g), "nu": _termsum_json(ts)})

    def text(res):
        for r in res:
            s = r["nu"]
            status = "0" if s["zero"] else f"{len(s['terms'])} distinct terms"
            extra = f" ({s['unresolved']} unresolved)" if s["unresolved"] else ""
            print(f"{r['diagram'] or '(empty)'}: nu = {status}{extra}")

    _dump(results, args.format, text)
    return code


def _cmd_bounds(args) -> int:
    code = EXIT_OK
    results = []
    for g in _input_diagrams(args):
        rep = bound_report(g, max_states=args.max_states)
        rep["diagram"] = serialize_diagram(g)
        if rep["nu_unresolved"]:
            code = EXIT_INCONCLUSIVE
        results.append(rep)

    def text(res):
        for r in res:
            print(
                f"{r['diagram'] or '(empty)'}: arrows={r['arrows']} rho={r['rho']} "
                f"t_mu_half={r['t_mu_half']} t_nu_half={r['t_nu_half']} "
                f"O={r['O']} exact={r['exact']}"
            )

    _dump(results, args.format, text)
    return code


def _cmd_orbit(args) -> int:
    code = EXIT_OK
    results = []
    for g in _input_diagrams(args):
        try:
            cert = type3_orbit(g, max_states=args.max_states)
        except BudgetExceeded as exc:
            code = EXIT_INCONCLUSIVE
            results.append(
                {"diagram": serialize_diagram(g), "inconclusive": True, "reason": str(exc)}
            )
            continue
        results.append({"diagram": serialize_diagram(g), **cert.to_json()})

    def text(res):
        for r in res:
            if r.get("inconclusive"):
                print(f"{r['diagram'] or '(empty)'}: inconclusive ({r['reason']})")
            else:
                verdict = "irreducible" if r["irreducible"] else "reducible"
                print(
                    f"{r['diagram'] or '(empty)'}: orbit size {r['orbit_size']}, {verdict}"
                )

    _dump(results, args.format, text)
    return code


def _cmd_equiv(args) -> int:
    g = _resolve(args.d1)
    h = _resolve(args.d2)
    max_arrows = args.max_arrows or max(g.n, h.n) + 2
    sr = homotopic_bounded(g, h, max_arrows=max_arrows, max_states=args.max_states)
    hom = homologous(based_matrix(g), based_matrix(h))
    result = {
        "d1": serialize_diagram(g),
        "d2": serialize_diagram(h),
        "search": sr.to_json(),
        "matrices_homologous": hom,
        "max_arrows": max_arrows,
        "max_states": args.max_states,
    }

    def text(res):
        print(f"search: {res['search']['status']}")
        if res["search"]["path"] is not None:
            print(f"path length: {len(res['search']['path'])}")
        print(f"based matrices homologous: {res['matrices_homologous']}")
        if not res["matrices_homologous"]:
            print("(homology differs: the diagrams are certainly not homotopic)")

    _dump(result, args.format, text)
    if sr.status == "budget_exceeded":
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _cmd_paper_check(args) -> int:
    results = acceptance.run_all()
    if args.format == "json":
        _dump([r.to_json() for r in results], "json", None)
    else:
        for r in results:
            mark = "PASS" if r.passed else "FAIL"
            print(f"[{mark}] criterion {r.number}: {r.name} ({r.seconds:.2f}s) - {r.detail}")
        total = sum(r.passed for r in results)
        print(f"{total}/{len(results)} criteria passed")
    return EXIT_OK if all(r.passed for r in results) else EXIT_CHECK_FAILED


def _add_diagram_args(sp, positional=True):
    if positional:
        sp.add_argument("diagram", nargs="?", help="arrow-list text, 'M', or 'alpha:p,q'")
    sp.add_argument("--example", help="named example: M or alpha:p,q")
    sp.add_argument("--corpus", help="file with one diagram per line; # comments")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="virtstring",
        description="Invariants of virtual strings from Gauss diagrams",
    )
    ap.add_argument("--format", choices=("json", "text"), default="text")
    ap.add_argument("--max-arrows", type=int, default=None)
    ap.add_argument("--max-states", type=int, default=10**6)
    sub = ap.add_subparsers(dest="command", required=True)

    for name, fn in [
        ("matrix", _cmd_matrix),
        ("rho", _cmd_rho),
        ("mu", _cmd_mu),
        ("nu", _cmd_nu),
        ("bounds", _cmd_bounds),
        ("orbit", _cmd_orbit),
    ]:
        sp = sub.add_parser(name)
        _add_diagram_args(sp)
        sp.set_defaults(fn=fn)

    sp = sub.add_parser("equiv")
    sp.add_argument("d1")
    sp.add_argument("d2")
    sp.set_defaults(fn=_cmd_equiv)

    sp = sub.add_parser("paper-check")
    sp.set_defaults(fn=_cmd_paper_check)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except DiagramError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
