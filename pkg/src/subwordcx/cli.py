"""Command-line front end.

Exit status: 0 success, 1 verification failure, 2 unparseable input,
3 valid input the mathematics rejects (void complex, size caps).
"""
from __future__ import annotations

import argparse
import json
import sys as _sys

from .complex import SizeError, VoidComplexError, build_complex, classify, to_positions, vertex_decompose
from .coxeter import (
    CoxeterError,
    CoxeterSystem,
    SymmetricGroup,
    demazure_product,
    make_system,
    minimal_universal_word,
    parse_word,
    repetition_number,
)
from .grothendieck import (
    fomin_kirillov_expand,
    grothendieck_from_complex,
    grothendieck_recursive,
    one_minus,
    pipe_absorbable_elbows,
    reduced_pipe_dreams,
    render_pipe_dream,
)
from .kpoly import kpoly_demazure, kpoly_dual_checked, kpoly_faces, kpoly_shelling
from .topology import reduced_homology
from .verify import SUITES, run_suite

EXIT_VERIFY = 1
EXIT_PARSE = 2
EXIT_DOMAIN = 3


class ParseError(ValueError):
    pass


def _word(text) -> tuple:
    try:
        return parse_word(text)
    except ValueError as exc:
        raise ParseError(f"bad word {text!r}") from exc


def _infer_rank(kind: str, word, target_text) -> int:
    top = max(word, default=0)
    if kind == "A":
        n = top + 1
        if target_text:
            digits = target_text.replace(",", " ").split()
            n = max(n, len(digits) if len(digits) > 1 else len(target_text.strip()))
        return max(n, 1)
    if kind == "B":
        n = top
        if target_text:
            n = max(n, len(target_text.replace(",", " ").split()))
        return max(n, 1)
    raise ParseError("type I needs --rank (the dihedral parameter m)")


def _system(args, word=(), target_text=None) -> CoxeterSystem:
    kind = args.type.upper()
    rank = args.rank if args.rank is not None else _infer_rank(kind, word, target_text)
    try:
        return make_system(kind, rank)
    except CoxeterError as exc:
        raise ParseError(str(exc)) from exc


def _checked_word(sys: CoxeterSystem, word) -> tuple:
    try:
        return sys.check_word(word)
    except CoxeterError as exc:
        raise ParseError(str(exc)) from exc


def _element(sys: CoxeterSystem, text: str):
    try:
        return sys.parse(text)
    except (CoxeterError, ValueError) as exc:
        raise ParseError(f"bad element {text!r}: {exc}") from exc


def _emit(args, text: str, payload) -> None:
    print(json.dumps(payload, sort_keys=True) if args.json else text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_delta(args) -> int:
    word = _word(args.word)
    sys = _system(args, word)
    word = _checked_word(sys, word)
    d = sys.format(demazure_product(sys, word))
    _emit(args, d, {"word": list(word), "demazure_product": d})
    return 0


def _complex_inputs(args):
    word = _word(args.word)
    sys = _system(args, word, args.target)
    word = _checked_word(sys, word)
    return sys, word, _element(sys, args.target)


def cmd_complex(args) -> int:
    sys, word, target = _complex_inputs(args)
    cplx = build_complex(sys, word, target, brute=args.brute)
    if cplx.is_void:
        raise VoidComplexError(f"{args.word!r} does not contain {sys.format(target)}")
    payload = cplx.to_json()
    if args.homology:
        payload["homology"] = reduced_homology(cplx).to_json()
    if args.shelling:
        payload["shelling"] = [list(to_positions(f)) for f in vertex_decompose(sys, word, target).shelling_order()]
    if args.json:
        print(json.dumps(payload))
        return 0
    lines = [f"classification: {classify(cplx)}", f"facets ({len(cplx.facets)}):"]
    lines += ["  " + " ".join(map(str, f)) if f else "  (empty)" for f in cplx.facets]
    if args.homology:
        h = payload["homology"]
        lines.append(f"f-vector: {h['f_vector']}")
        for entry in h["reduced_homology"]:
            tors = "".join(f" + Z/{t}" for t in entry["torsion"])
            lines.append(f"H~_{entry['dim']} = Z^{entry['rank']}{tors}")
    if args.shelling:
        lines.append("shelling: " + " | ".join(" ".join(map(str, f)) for f in payload["shelling"]))
    print("\n".join(lines))
    return 0


def cmd_kpoly(args) -> int:
    sys, word, target = _complex_inputs(args)
    if args.method == "faces":
        poly = kpoly_faces(build_complex(sys, word, target))
    elif args.method == "demazure":
        poly = kpoly_demazure(sys, word, target)
    elif args.method == "shelling":
        poly = kpoly_shelling(sys, word, target)
    else:
        poly = kpoly_dual_checked(sys, word, target)
    if not poly and args.method != "dual":
        raise VoidComplexError(f"{args.word!r} does not contain {sys.format(target)}")
    _emit(args, str(poly), poly.to_json())
    return 0


def _perm(n: int, text: str) -> tuple:
    if n < 1:
        raise ParseError("--n must be positive")
    return _element(SymmetricGroup(n), text)


def cmd_groth(args) -> int:
    w = _perm(args.n, args.perm)
    if args.method == "recursive":
        poly = grothendieck_recursive(args.n, w, args.double)
    elif args.method in ("subword", "absorbable"):
        method = "demazure" if args.method == "subword" else "absorbable"
        poly = grothendieck_from_complex(args.n, w, args.double, method)
    else:
        if not args.double:
            raise ParseError("--method fk computes the double polynomial; add --double")
        poly = one_minus(fomin_kirillov_expand(args.n, w), args.n)
    _emit(args, str(poly), poly.to_json())
    return 0


def cmd_pipedreams(args) -> int:
    w = _perm(args.n, args.perm)
    dreams = reduced_pipe_dreams(args.n, w)
    if args.json:
        payload = {
            "perm": "".join(map(str, w)),
            "pipe_dreams": [
                {
                    "crossings": [list(c) for c in D],
                    "absorbable_elbows": sorted(list(c) for c in pipe_absorbable_elbows(args.n, D)),
                }
                for D in dreams
            ],
        }
        print(json.dumps(payload))
        return 0
    blocks = [render_pipe_dream(args.n, D) for D in dreams]
    print(f"{len(dreams)} reduced pipe dreams\n\n" + "\n\n".join(blocks))
    return 0


def cmd_repnum(args) -> int:
    sys, word, target = _complex_inputs(args)
    r = repetition_number(sys, word, target)
    _emit(args, str(r), {"word": list(word), "target": sys.format(target), "repetition_number": r})
    return 0


def cmd_universal(args) -> int:
    sys = _system(args, (), args.target)
    target = _element(sys, args.target)
    found = minimal_universal_word(sys, target, args.max_len)
    if not found:
        raise SizeError(f"no universal word of length <= {args.max_len}")
    payload = {"target": sys.format(target), "length": len(found[0]), "words": [list(w) for w in found]}
    text = "\n".join([f"minimal length {len(found[0])}"] + [" ".join(map(str, w)) for w in found])
    _emit(args, text, payload)
    return 0


def cmd_verify(args) -> int:
    report = run_suite(args.suite, args.max_size, args.seed)
    if args.json:
        print(json.dumps(report.to_json(), sort_keys=True))
    else:
        print(report.text(args.timings))
    return 0 if report.passed else EXIT_VERIFY


# ---------------------------------------------------------------------------


def _add_system(p, need_target=True):
    p.add_argument("--type", default="A", choices=["A", "B", "I", "a", "b", "i"], help="Coxeter type")
    p.add_argument("--rank", type=int, help="n for S_n or B_n, m for I_2(m); inferred for A and B")
    if need_target:
        p.add_argument("--target", required=True, help="group element, e.g. 1432")
    p.add_argument("--json", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="subwordcx", description="Subword complexes over finite Coxeter groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("delta", help="Demazure product of a word")
    _add_system(p, need_target=False)
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("complex", help="facets and classification of Delta(Q, pi)")
    _add_system(p)
    p.add_argument("--word", required=True)
    p.add_argument("--homology", action="store_true", help="add reduced integer homology")
    p.add_argument("--shelling", action="store_true", help="add a vertex-decomposition shelling")
    p.add_argument("--brute", action="store_true", help="enumerate facets by brute force")
    p.set_defaults(func=cmd_complex)

    p = sub.add_parser("kpoly", help="K-polynomial of Delta(Q, pi)")
    _add_system(p)
    p.add_argument("--word", required=True)
    p.add_argument("--method", default="demazure", choices=["faces", "demazure", "shelling", "dual"])
    p.set_defaults(func=cmd_kpoly)

    p = sub.add_parser("groth", help="Grothendieck polynomial of a permutation")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--perm", required=True)
    p.add_argument("--double", action="store_true")
    p.add_argument("--method", default="recursive", choices=["recursive", "subword", "absorbable", "fk"])
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_groth)

    p = sub.add_parser("pipedreams", help="reduced pipe dreams of a permutation")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--perm", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_pipedreams)

    p = sub.add_parser("repnum", help="most embeddings of one reduced word of pi in Q")
    _add_system(p)
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_repnum)

    p = sub.add_parser("universal", help="shortest words containing every reduced word of pi")
    _add_system(p)
    p.add_argument("--max-len", type=int, default=8)
    p.set_defaults(func=cmd_universal)

    p = sub.add_parser("verify", help="run property suites")
    p.add_argument("--suite", default="all", choices=[*SUITES, "all"])
    p.add_argument("--max-size", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timings", action="store_true", help="append wall-clock times (output no longer reproducible)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_PARSE
    except (VoidComplexError, SizeError) as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":  # pragma: no cover
    _sys.exit(main())
