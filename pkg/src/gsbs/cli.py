"""Command-line interface.

Subcommands: analyze, check-matrix, reidemeister, lcs, mul, corpus.
Exit codes: 0 success, 1 mathematical refusal, 2 usage or schema error,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

from . import autos, corpus, groups, jsonutil, twisted, witness
from .errors import CapError, RefusalError, SchemaError
from .intlin import matrix_from_json

EXIT_OK = 0
EXIT_REFUSED = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def _degree(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"degree must be an integer, got {text!r}")
    if value < 2:
        raise argparse.ArgumentTypeError("degree must be at least 2")
    return value


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError("value must be at least 1")
    return value


def _print_json(payload: Any) -> None:
    sys.stdout.write(jsonutil.dumps(payload))


def _read_json_file(path: str, what: str) -> Any:
    p = Path(path)
    if not p.exists():
        raise SchemaError(f"{what}: file not found: {path}")
    return jsonutil.loads(p.read_text(), what)


def _load_element_arg(params: groups.GroupParams, text: str, what: str) -> groups.GroupElement:
    doc = jsonutil.loads(text, what) if text.lstrip().startswith("{") else _read_json_file(text, what)
    return groups.element_from_json(params, doc)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gsbs",
        description=(
            "Nilpotent quotients of generalized solvable Baumslag-Solitar groups: "
            "exact arithmetic, automorphisms, twisted conjugacy"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="witness certificates for a degree")
    p.add_argument("n", type=_degree)
    p.add_argument("--cmax", type=_positive, default=1, help="largest class to analyze")
    p.add_argument("--cap", type=_positive, default=groups.DEFAULT_MODULUS_CAP)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("check-matrix", help="column congruences for a matrix file")
    p.add_argument("n", type=_degree)
    p.add_argument("c", type=_positive)
    p.add_argument("matrix", help="path to a JSON array-of-rows matrix")
    p.add_argument("--cap", type=_positive, default=groups.DEFAULT_MODULUS_CAP)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check_matrix)

    p = sub.add_parser("reidemeister", help="twisted conjugacy class count")
    p.add_argument("n", type=_degree)
    p.add_argument("c", type=_positive)
    p.add_argument(
        "automorphism",
        nargs="?",
        default=None,
        help="path to an automorphism JSON file (default: the witness automorphism)",
    )
    p.add_argument("--oracle", action="store_true", help="use the box oracle instead")
    p.add_argument(
        "--box",
        nargs=2,
        type=_positive,
        metavar=("ELEMENT", "CONJUGATOR"),
        default=None,
        help="element and conjugator box radii for the oracle",
    )
    p.add_argument("--cap", type=_positive, default=twisted.DEFAULT_ORBIT_CAP)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_reidemeister)

    p = sub.add_parser("lcs", help="lower central series generator exponents")
    p.add_argument("n", type=_degree)
    p.add_argument("c", type=_positive)
    p.add_argument("--cap", type=_positive, default=groups.DEFAULT_MODULUS_CAP)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_lcs)

    p = sub.add_parser("mul", help="multiply two elements in normal form")
    p.add_argument("n", type=_degree)
    p.add_argument("c", type=_positive)
    p.add_argument("left", help="element JSON (inline or a file path)")
    p.add_argument("right", help="element JSON (inline or a file path)")
    p.add_argument("--cap", type=_positive, default=groups.DEFAULT_MODULUS_CAP)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("corpus", help="run or regenerate the regression corpus")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--run", action="store_true")
    mode.add_argument("--regen", action="store_true")
    p.add_argument("--file", default=None, help="corpus file (default: the shipped one)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_corpus)

    return parser


def cmd_analyze(args: argparse.Namespace) -> int:
    analysis = witness.analyze_degree(args.n, args.cmax, cap=args.cap)
    if args.json:
        _print_json(analysis.to_json())
    else:
        sys.stdout.write(witness.render_analysis(analysis))
    return EXIT_OK


def cmd_check_matrix(args: argparse.Namespace) -> int:
    params = groups.make_params(args.n, args.c, cap=args.cap)
    doc = _read_json_file(args.matrix, "matrix")
    M = matrix_from_json(doc, "matrix")
    if M.rows != params.r or M.cols != params.r:
        raise SchemaError(f"matrix must be {params.r} x {params.r} for this degree")
    ok = autos.extendable(params, M)  # refuses non-unimodular input
    lines = []
    failures = []
    for i in range(params.r):
        holds = autos.congruence_holds(params, M, i)
        lines.append(f"(M,c,{i + 1}): {'ok' if holds else 'FAIL'}")
        if not holds:
            failures.append(i + 1)
    verdict = "extendable" if ok else "fails " + ", ".join(f"(M,c,{i})" for i in failures)
    if args.json:
        _print_json(
            {
                "extendable": ok,
                "congruences": [
                    {"i": i + 1, "holds": autos.congruence_holds(params, M, i)}
                    for i in range(params.r)
                ],
                "verdict": verdict,
            }
        )
    else:
        for line in lines:
            print(line)
        print(verdict)
    return EXIT_OK


def cmd_reidemeister(args: argparse.Namespace) -> int:
    params = groups.make_params(args.n, args.c)
    if args.automorphism is None:
        phi = witness.witness_automorphism(params)
    else:
        doc = _read_json_file(args.automorphism, "automorphism")
        phi = autos.automorphism_from_json(params, doc)
    autos.require_valid(params, phi)
    if args.oracle:
        element_box, conjugator_box = args.box or (
            twisted.DEFAULT_ELEMENT_BOX,
            twisted.DEFAULT_CONJUGATOR_BOX,
        )
        record = twisted.reidemeister_oracle(
            params,
            phi,
            element_box=element_box,
            conjugator_box=conjugator_box,
            cap=args.cap,
            validate_input=False,
        )
        if args.json:
            _print_json(record.to_json())
        else:
            print(f"det(M - Id) = {record.det_m_minus_id}")
            for radius, count in record.counts:
                print(f"conjugator radius {radius}: {count} classes in the inner box")
            print(f"stabilized count: {record.count}")
    else:
        report = twisted.reidemeister_exact(params, phi, cap=args.cap, validate_input=False)
        if args.json:
            _print_json(report.to_json())
        else:
            print(f"det(M - Id) = {report.det_m_minus_id}")
            if report.finite:
                print(f"finite: {report.count} classes (bound {report.bound})")
            else:
                print("infinite: det(M - Id) = 0")
    return EXIT_OK


def cmd_lcs(args: argparse.Namespace) -> int:
    params = groups.make_params(args.n, args.c, cap=args.cap)
    rows = []
    for k in range(2, params.c + 2):
        closed = groups.lcs_exponent(params, k)
        brute = groups.lcs_exponent_bruteforce(params, k)
        if closed != brute:
            raise AssertionError(
                f"lower central series routes disagree at k={k}: {closed} vs {brute}"
            )
        rows.append((k, closed))
    if args.json:
        _print_json(
            {
                "params": groups.params_to_json(params),
                "terms": [{"k": k, "exponent": jsonutil.encode_int(e)} for k, e in rows],
            }
        )
    else:
        print(f"modulus m^c = {params.modulus}")
        for k, e in rows:
            label = "trivial" if e == 0 else f"generated by x^{e}"
            print(f"gamma_{k}: {label}")
    return EXIT_OK


def cmd_mul(args: argparse.Namespace) -> int:
    params = groups.make_params(args.n, args.c, cap=args.cap)
    left = _load_element_arg(params, args.left, "left element")
    right = _load_element_arg(params, args.right, "right element")
    result = groups.multiply(params, left, right)
    payload = groups.element_to_json(result)
    if args.json:
        _print_json(payload)
    else:
        print(f"y = {list(result.y)}, theta = {result.theta}")
    return EXIT_OK


def _default_corpus_path() -> Path:
    return Path(str(resources.files("gsbs").joinpath("data/corpus.json")))


def cmd_corpus(args: argparse.Namespace) -> int:
    path = Path(args.file) if args.file else _default_corpus_path()
    if args.regen:
        cases = corpus.regenerate()
        path.write_text(jsonutil.dumps(corpus.corpus_to_json(cases)))
        print(f"wrote {len(cases)} cases to {path}")
        return EXIT_OK
    doc = jsonutil.loads(path.read_text(), "corpus") if path.exists() else None
    if doc is None:
        raise SchemaError(f"corpus: file not found: {path}")
    cases = corpus.corpus_from_json(doc)
    results = corpus.run(cases)
    if args.json:
        _print_json(
            {
                "results": [
                    {
                        "n": res.n,
                        "c": res.c,
                        "ok": res.ok,
                        "mismatches": list(res.mismatches),
                    }
                    for res in results
                ],
                "ok": all(res.ok for res in results),
            }
        )
    else:
        for res in results:
            status = "pass" if res.ok else "FAIL: " + "; ".join(res.mismatches)
            print(f"(n={res.n}, c={res.c}) {status}")
        print(f"{sum(res.ok for res in results)}/{len(results)} cases pass")
    return EXIT_OK if all(res.ok for res in results) else EXIT_REFUSED


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        return args.func(args)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RefusalError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except CapError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def console_main() -> None:
    sys.exit(main())
