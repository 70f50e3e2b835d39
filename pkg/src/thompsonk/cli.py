"""Command-line front end.

Exit codes: 0 success, 1 a check failed (a counterexample is printed), 2 bad
usage or unparsable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .element import ElementError, from_json, inverse, multiply
from .gamma import UnsupportedArity, gamma_of, is_bipartite, odd_cycle, to_dot, two_colouring
from .homeo import log_slope_at_1, render_rational, stabilizes_point
from .oriented import PreconditionViolated, coset_normalize, decompose, is_oriented, preserves_Z, reduce_index
from .subgroups import in_Gk, in_K_ab, pi_ab
from .suites import SUITES, run_suite
from .words import WordParseError, eval_word, normal_form, parse_word

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _element(text: str, args):
    try:
        w = parse_word(text, k=args.k, z_arity=args.z_arity)
    except WordParseError as exc:
        raise UsageError(f"cannot parse {text!r}: {exc}") from exc
    return eval_word(w)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _describe(g) -> dict:
    return {"element": g.to_json(), "normal_form": str(normal_form(g))}


def cmd_reduce(args) -> int:
    src = args.source
    if src == "-":
        raw = sys.stdin.read()
    elif Path(src).is_file():
        raw = Path(src).read_text()
    else:
        raw = src
    try:
        g, changed = from_json(json.loads(raw))
    except (json.JSONDecodeError, ElementError) as exc:
        raise UsageError(f"bad element JSON: {exc}") from exc
    payload = _describe(g) | {"was_unreduced": changed}
    _emit(args, payload, json.dumps(g.to_json()) + "\n" + payload["normal_form"])
    return EXIT_OK


def cmd_mul(args) -> int:
    elems = [_element(w, args) for w in args.words]
    if len({e.arity for e in elems}) != 1:
        raise UsageError("all factors must live in the same group")
    out = elems[0]
    for e in elems[1:]:
        out = multiply(out, e)
    _emit(args, _describe(out), str(normal_form(out)))
    return EXIT_OK


def cmd_inv(args) -> int:
    g = inverse(_element(args.word, args))
    _emit(args, _describe(g), str(normal_form(g)))
    return EXIT_OK


def cmd_nf(args) -> int:
    g = _element(args.word, args)
    _emit(args, _describe(g), str(normal_form(g)))
    return EXIT_OK


def _colouring_text(col: dict) -> str:
    return "(" + ",".join(col[v] for v in sorted(col)) + ")"


def cmd_member(args) -> int:
    g = _element(args.word, args)
    tag = args.subgroup
    payload: dict = {"subgroup": tag, "normal_form": str(normal_form(g))}
    lines = []
    if tag in ("f3vec", "f2vec"):
        want = 3 if tag == "f3vec" else 2
        if g.arity != want:
            raise UsageError(f"{tag} needs an element of F_{want}, got arity {g.arity}")
        verdict = is_oriented(g)
        G = gamma_of(g)
        if verdict:
            col = two_colouring(G)
            payload["colouring"] = [col[v] for v in sorted(col)]
            lines.append(f"colouring {_colouring_text(col)}")
        else:
            cyc = odd_cycle(G)
            payload["odd_cycle"] = cyc
            lines.append("odd cycle " + " - ".join(f"v{v}" for v in cyc))
    elif tag == "gk":
        verdict = in_Gk(g)
        payload["log_slope_at_1"] = log_slope_at_1(g)
    elif tag.startswith("kab:"):
        try:
            a, b = (int(x) for x in tag[4:].split(","))
        except ValueError as exc:
            raise UsageError("kab needs the form kab:a,b") from exc
        if g.arity != 2:
            raise UsageError("K_(a,b) lives in F_2; use x letters")
        verdict = in_K_ab(g, a, b)
        payload["pi"] = list(pi_ab(g).as_tuple())
        lines.append(f"pi = {tuple(payload['pi'])}")
    elif tag.startswith("parabolic:"):
        try:
            x = Fraction(tag[len("parabolic:"):])
            verdict = stabilizes_point(g, x)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad point: {exc}") from exc
        payload["point"] = render_rational(x)
    elif tag == "zstab":
        if g.arity != 3:
            raise UsageError("zstab needs an element of F_3")
        bad = preserves_Z(g, args.depth)
        verdict = bad is None
        payload["depth"] = args.depth
        if bad is not None:
            payload["counterexample"] = bad
            lines.append(f"counterexample {bad}")
    else:
        raise UsageError(f"unsupported subgroup {tag!r}")
    payload["member"] = verdict
    _emit(args, payload, "\n".join(["true" if verdict else "false"] + lines))
    return EXIT_OK if verdict else EXIT_FAIL


def cmd_decompose(args) -> int:
    g = _element(args.word, args)
    try:
        word = decompose(g)
    except PreconditionViolated as exc:
        raise UsageError(str(exc)) from exc
    if args.reduce_index:
        word = reduce_index(word)
    _emit(args, {"word": str(word)}, str(word))
    return EXIT_OK


def cmd_coset(args) -> int:
    g = _element(args.word, args)
    try:
        h, f1, f2 = coset_normalize(g)
    except PreconditionViolated as exc:
        raise UsageError(str(exc)) from exc
    payload = {
        "h": str(normal_form(h)),
        "f1": str(reduce_index(decompose(f1))),
        "f2": str(reduce_index(decompose(f2))),
    }
    _emit(args, payload, "\n".join(f"{k} = {v}" for k, v in payload.items()))
    return EXIT_OK


def cmd_gamma(args) -> int:
    g = _element(args.word, args)
    try:
        G = gamma_of(g)
    except UnsupportedArity as exc:
        raise UsageError(str(exc)) from exc
    dot = to_dot(G, args.word)
    if args.dot:
        Path(args.dot).write_text(dot)
    payload = {
        "vertices": G.vertex_count,
        "edges": len(G.edges),
        "bipartite": is_bipartite(G),
        "edge_list": [[e.u, e.v, e.side] for e in G.edges],
    }
    text = f"{G.vertex_count} vertices, {len(G.edges)} edges, bipartite={str(payload['bipartite']).lower()}"
    _emit(args, payload, text if args.dot else text + "\n" + dot.rstrip())
    return EXIT_OK


def cmd_verify(args) -> int:
    params = {
        "max_splits": args.max_splits,
        "seed": args.seed,
        "depth": args.depth,
        "family": args.family,
        "n": args.n,
    }
    if args.k_given:
        params["k"] = args.k
    try:
        report = run_suite(args.suite, **params)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    data = report.to_json()
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        status = "pass" if report.passed else "FAIL"
        print(f"{report.suite}: {status} ({report.checked} checks, {data['runtime']}s)")
        for c in report.counterexamples:
            print(f"  counterexample [{c['check']}]: {json.dumps(c['item'])}")
    return EXIT_OK if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int, default=3, help="arity of y letters (default 3)")
    common.add_argument("--z-arity", type=int, default=None, help="arity of z letters (default 2k-1)")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="thompsonk", description="Tree-pair arithmetic in the Brown-Thompson groups F_k.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("reduce", parents=[common], help="reduce a JSON tree pair")
    s.add_argument("source", help="JSON text, a file path, or - for stdin")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("mul", parents=[common], help="multiply words left to right")
    s.add_argument("words", nargs="+")
    s.set_defaults(func=cmd_mul)

    for name, fn, helptext in (("inv", cmd_inv, "inverse of a word"), ("nf", cmd_nf, "normal form of a word")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("word")
        s.set_defaults(func=fn)

    s = sub.add_parser("member", parents=[common], help="subgroup membership")
    s.add_argument("word")
    s.add_argument(
        "--subgroup", required=True, help="gk | kab:a,b | parabolic:p/q | f3vec | f2vec | zstab"
    )
    s.add_argument("--depth", type=int, default=8, help="digit depth for zstab")
    s.set_defaults(func=cmd_member)

    s = sub.add_parser("decompose", parents=[common], help="write an oriented element in u, v, w")
    s.add_argument("word")
    s.add_argument("--reduce-index", action="store_true", help="use only indices 0, 1, 2")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("coset", parents=[common], help="positive even representative of a double coset")
    s.add_argument("word")
    s.set_defaults(func=cmd_coset)

    s = sub.add_parser("gamma", parents=[common], help="Gamma-graph of an element")
    s.add_argument("word")
    s.add_argument("--dot", help="write Graphviz DOT here")
    s.set_defaults(func=cmd_gamma)

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("suite", help=", ".join(sorted(SUITES)))
    s.add_argument("--max-splits", type=int)
    s.add_argument("--depth", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--family", help="relations suite: y | w | u | v | ow | phi")
    s.add_argument("--n", type=int, help="relations suite: largest index")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.k_given = any(a == "--k" or a.startswith("--k=") for a in argv)
    if args.k < 2:
        print("error: --k must be >= 2", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
