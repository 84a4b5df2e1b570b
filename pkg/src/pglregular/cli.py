"""Command-line interface.

Exit codes: 0 success / positive outcome, 1 negative verification outcome,
2 usage or data error.  Output is JSON unless ``--pretty`` is given.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import classify, gf, projline, regular, search
from .errors import PGLError

OK, NEGATIVE, ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    print(json.dumps(obj))


def _field(args) -> gf.FieldSpec | None:
    if getattr(args, "field_file", None):
        with open(args.field_file) as fh:
            return gf.field_from_json(json.load(fh))
    if getattr(args, "q", None) is not None:
        return gf.field_of_order(args.q)
    return None


def _load_set(args) -> regular.RegularSet:
    if args.set == "-":
        data = json.load(sys.stdin)
    else:
        with open(args.set) as fh:
            data = json.load(fh)
    spec = _field(args)
    if "field" in data and spec is not None and gf.field_from_json(data["field"]) != spec:
        raise UsageError("the set's field disagrees with --q/--field-file")
    if "field" not in data and spec is None:
        raise UsageError("the set file has no field; pass --q or --field-file")
    return regular.from_json(data, spec)


def _member(S: regular.RegularSet, idx: int, name: str) -> projline.GroupElem:
    if not 0 <= idx < len(S):
        raise UsageError(f"--{name} {idx} out of range (set has {len(S)} members)")
    return S.members[idx]


# ---------------------------------------------------------------------------
# commands


def cmd_verify(args) -> int:
    S = _load_set(args)
    ok = regular.is_sharply_transitive(S, method=args.method)
    out = {"regular": ok, "q": S.spec.order, "size": len(S)}
    if not ok:
        out["reason"] = regular.explain_irregular(S)
    elif args.decompose:
        H, s = regular.coset_decompose(S)
        out["decomposition"] = {
            "subgroup": regular.to_json(H),
            "translator": projline.elem_to_json(s),
            "is_subgroup": regular.is_subgroup(H),
        }
    _emit(out)
    return OK if ok else NEGATIVE


def cmd_lemma_scan(args) -> int:
    S = _load_set(args)
    if not regular.is_sharply_transitive(S):
        _emit({"regular": False, "reason": regular.explain_irregular(S)})
        return NEGATIVE
    rep = regular.segre_scan(S)
    _emit({
        "checked": rep.checked,
        "violations": [[projline.elem_to_json(g) for g in quad] for quad in rep.violations],
    })
    return OK if rep.ok else NEGATIVE


def cmd_closure_trace(args) -> int:
    S = _load_set(args)
    if not regular.is_sharply_transitive(S):
        _emit({"regular": False, "reason": regular.explain_irregular(S)})
        return NEGATIVE
    g, h = _member(S, args.g, "g"), _member(S, args.h, "h")
    tr = regular.closure_witness(S, g, h)
    if args.pretty:
        print(_narrate(S, tr))
    else:
        _emit(regular.trace_to_json(S, tr))
    return OK if tr.closes else NEGATIVE


def _narrate(S, tr) -> str:
    x, y = tr.fixed_pair
    a, b, c = tr.abc
    lines = [
        f"g = {tr.g!r}",
        f"h = {tr.h!r}",
        "k_x with k h^-1 x = g x:",
        *(f"  {projline.point_at(S.spec, i)!r:>12} -> {k!r}" for i, k in enumerate(tr.k_table)),
        f"k = {tr.k!r} occurs at {x!r} and {y!r}",
        f"frame = {tr.frame!r} sends {x!r} -> (1:0) and g{x!r} -> (0:1)",
        f"u = {tr.u!r}",
        f"gu = {tr.witnesses[0]!r}, ku = {tr.witnesses[1]!r}, u = {tr.witnesses[2]!r}, hu = {tr.witnesses[3]!r}",
        f"product identity holds: {tr.segre_holds}; a = {a!r}, b c = {b * c!r}",
        f"h k^-1 g in frame = {tr.frame_residual!r}",
        f"h k^-1 g = {tr.residual!r}",
        f"k == g h: {tr.k == projline.mul(tr.g, tr.h)}",
    ]
    return "\n".join(lines)


def cmd_enumerate(args) -> int:
    spec = _field(args)
    if spec is None:
        raise UsageError("pass --q or --field-file")
    cfg = search.SearchConfig(
        spec,
        require_identity=not args.no_identity,
        limit=args.limit,
        symmetry_reduction=args.symmetry,
        worker_count=args.workers,
    )
    for S in search.enumerate_regular_sets(cfg):
        print(json.dumps(regular.to_json(S)))
    return OK


def cmd_verify_theorem(args) -> int:
    spec = _field(args)
    if spec is None:
        raise UsageError("pass --q or --field-file")
    cfg = search.SearchConfig(spec, symmetry_reduction=args.symmetry, worker_count=args.workers)
    rep = search.verify_theorem(cfg)
    _emit(rep.to_json())
    good = rep.all_are_subgroups and not rep.violations
    return OK if good else NEGATIVE


def cmd_classify(args) -> int:
    S = _load_set(args)
    t = classify.subgroup_type(S)
    _emit(t.to_json())
    return NEGATIVE if t.tag == classify.NOT_ON_LIST else OK


def cmd_construct(args) -> int:
    spec = _field(args)
    if spec is None:
        raise UsageError("pass --q or --field-file")
    S = classify.construct(spec, args.type, seed=args.seed)
    _emit(regular.to_json(S))
    return OK


def cmd_latin(args) -> int:
    S = _load_set(args)
    square = search.latin_square(S)
    latin = search.is_latin(square)
    if args.pretty:
        print(search.render_grid(square))
    else:
        _emit({"rows": square, "latin": latin})
    return OK if latin else NEGATIVE


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pglregular", description="Sharply transitive sets in PGL_2(q).")
    sub = p.add_subparsers(dest="command", required=True)

    def field_opts(sp, required=False):
        grp = sp.add_mutually_exclusive_group(required=required)
        grp.add_argument("--q", type=int, help="field order (default modulus)")
        grp.add_argument("--field-file", help="JSON field description {p, m, modulus}")

    def set_cmd(name, func, help):
        sp = sub.add_parser(name, help=help)
        field_opts(sp)
        sp.add_argument("--set", required=True, help="RegularSet JSON file, or - for stdin")
        sp.set_defaults(func=func)
        return sp

    sp = set_cmd("verify", cmd_verify, "test a set for sharp transitivity")
    sp.add_argument("--decompose", action="store_true", help="also write S = H s")
    sp.add_argument("--method", choices=["direct", "pairwise"], default="direct")

    set_cmd("lemma-scan", cmd_lemma_scan, "check the product identity on a regular set")

    sp = set_cmd("closure-trace", cmd_closure_trace, "trace the closure construction for g, h")
    sp.add_argument("--g", type=int, required=True, help="member index (canonical order)")
    sp.add_argument("--h", type=int, required=True, help="member index (canonical order)")
    sp.add_argument("--pretty", action="store_true")

    sp = sub.add_parser("enumerate", help="stream all regular sets as JSON lines")
    field_opts(sp, required=True)
    sp.add_argument("--no-identity", action="store_true")
    sp.add_argument("--limit", type=int)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--symmetry", action="store_true", help="enable symmetry reduction")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("verify-theorem", help="exhaustive check that regular sets with 1 are subgroups")
    field_opts(sp, required=True)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--symmetry", action="store_true")
    sp.set_defaults(func=cmd_verify_theorem)

    set_cmd("classify", cmd_classify, "recognise a regular subgroup")

    sp = sub.add_parser("construct", help="build a regular subgroup of a given type")
    field_opts(sp, required=True)
    sp.add_argument("--type", required=True, choices=["cyclic", "dihedral", "a4", "s4", "a5"])
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_construct)

    sp = set_cmd("latin", cmd_latin, "print the Latin square of a set")
    sp.add_argument("--pretty", action="store_true")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return ERROR if exc.code else OK
    try:
        return args.func(args)
    except (PGLError, UsageError, ValueError, OSError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


def run(argv: Sequence[str] | None = None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
