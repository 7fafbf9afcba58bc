"""toricmorph command line.

Exit codes: 0 success / positive verdict, 1 refutation or not-applicable,
2 input error, 3 unknown verdict.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .errors import InputError
from .fan import CATALOG_FAMILIES, Fan, catalog, fan_to_dict, parse_fan, serialize_fan, \
    standard_catalog, validate
from .grading import class_group, degree, valid_morphism_degree
from .morphism import (MORPHISM, NOT_MORPHISM, check_step, load_morphism, same_morphism,
                       sample, verify)
from .poly import DEFAULT_BUDGET
from .primitive import primitive_collections
from .stability import (BidegreeProfile, filtration_profile, stab_rank_shift,
                        stability_bound, stable_range_from_duality)

EXIT_OK, EXIT_REFUTED, EXIT_INPUT, EXIT_UNKNOWN = 0, 1, 2, 3


def _csv_ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


def _point(pt) -> str:
    return "[" + ":".join(str(x) for x in pt) + "]"


def _rows(pairs) -> str:
    width = max(len(k) for k, _ in pairs) + 2
    return "\n".join(f"{k:<{width}}{v}" for k, v in pairs)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--fan", metavar="PATH", help="fan JSON file")
    src.add_argument("--catalog", metavar="NAME", help="built-in fan, e.g. projective:2")
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(
        prog="toricmorph",
        description="Fans, Cox coordinates and stability ranges for morphisms CP^m -> X.")
    sub = parser.add_subparsers(dest="verb", metavar="VERB", required=True)

    sub.add_parser("catalog", parents=[common], help="list or print built-in fans")
    sub.add_parser("validate", parents=[common], help="check simplicial/smooth/complete")
    sub.add_parser("primcols", parents=[common], help="primitive collections and k")
    sub.add_parser("classgroup", parents=[common], help="class group and grading")

    p = sub.add_parser("degree", parents=[common], help="class of a multidegree")
    p.add_argument("--degrees", type=_csv_ints, required=True, metavar="CSV")

    p = sub.add_parser("check", parents=[common], help="verify a morphism candidate")
    p.add_argument("--morphism", required=True, metavar="PATH")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p = sub.add_parser("same", parents=[common], help="do two tuples define the same morphism")
    p.add_argument("--morphism", action="append", required=True, metavar="PATH")

    p = sub.add_parser("bound", parents=[common], help="homology stability range")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--degrees", type=_csv_ints, required=True, metavar="CSV")

    p = sub.add_parser("filtration", parents=[common], help="filtration dimension profile")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--pbar", type=_csv_ints, required=True, metavar="CSV")
    p.add_argument("--qbar", type=_csv_ints, metavar="CSV")
    p.add_argument("--step", type=_csv_ints, metavar="CSV")

    p = sub.add_parser("sample", parents=[common], help="random morphism candidate")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--degrees", type=_csv_ints, required=True, metavar="CSV")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--coeff-bound", type=int, default=9)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    return parser


def _fan(args, required: bool = True) -> Optional[Fan]:
    if args.fan:
        return parse_fan(Path(args.fan).read_text(encoding="utf-8"))
    if args.catalog:
        return catalog(args.catalog)
    if required:
        raise InputError("give --fan PATH or --catalog NAME")
    return None


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def cmd_catalog(args) -> int:
    if args.catalog or args.fan:
        fan = _fan(args)
        _emit(args, fan_to_dict(fan), serialize_fan(fan).rstrip("\n"))
        return EXIT_OK
    names = [f.name for f in standard_catalog()]
    _emit(args, {"families": list(CATALOG_FAMILIES), "examples": names},
          "families: " + ", ".join(CATALOG_FAMILIES) + "\nexamples: " + ", ".join(names))
    return EXIT_OK


def cmd_validate(args) -> int:
    rep = validate(_fan(args))
    lines = [_rows([("simplicial", _yn(rep.is_simplicial)), ("smooth", _yn(rep.is_smooth)),
                    ("complete", _yn(rep.is_complete))])]
    lines += [f"FAIL {where}: {why}" for where, why in rep.failures]
    _emit(args, rep.to_dict(), "\n".join(lines))
    return EXIT_OK if rep.ok else EXIT_REFUTED


def cmd_primcols(args) -> int:
    y = primitive_collections(_fan(args))
    _emit(args, y.to_dict(), " ".join(map(str, y.strata)) + f"  k={y.k}")
    return EXIT_OK


def cmd_classgroup(args) -> int:
    fan = _fan(args)
    cg = class_group(fan)
    degs = [list(cg.project([int(i == j) for j in range(fan.r)])) for i in range(fan.r)]
    payload = cg.to_dict()
    payload["group"] = str(cg)
    payload["variable_degrees"] = degs
    lines = [str(cg), "projection:"]
    lines += ["  " + " ".join(f"{x:>3}" for x in row) for row in cg.projection]
    lines += [f"deg x{i} = {tuple(d)}" for i, d in enumerate(degs)]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_degree(args) -> int:
    fan = _fan(args)
    ok = valid_morphism_degree(fan, args.degrees)
    cls = degree(fan, args.degrees).coords
    _emit(args, {"degrees": args.degrees, "class": list(cls), "valid_morphism_degree": ok},
          _rows([("class", str(tuple(cls))), ("valid_morphism_degree", _yn(ok))]))
    return EXIT_OK if ok else EXIT_REFUTED


def _verdict_exit(status: str) -> int:
    return {MORPHISM: EXIT_OK, NOT_MORPHISM: EXIT_REFUTED}.get(status, EXIT_UNKNOWN)


def _verdict_text(v) -> str:
    lines = [f"status: {v.status}"]
    for ch in v.per_collection:
        extra = ""
        if ch.witness is not None:
            extra += f"  witness {_point(ch.witness)}"
        if ch.common_factor is not None:
            extra += f"  common factor {ch.common_factor}"
        lines.append(f"  {ch.collection}: {ch.status}{extra}")
    if v.witness is not None:
        lines.append(f"witness: {_point(v.witness)}")
    return "\n".join(lines)


def cmd_check(args) -> int:
    cand = load_morphism(args.morphism, fan=_fan(args, required=False))
    v = verify(cand, args.budget)
    _emit(args, v.to_dict(), _verdict_text(v))
    return _verdict_exit(v.status)


def cmd_same(args) -> int:
    if len(args.morphism) != 2:
        raise InputError("same needs exactly two --morphism files")
    fan = _fan(args, required=False)
    c1, c2 = (load_morphism(p, fan=fan) for p in args.morphism)
    ok = same_morphism(c1, c2)
    _emit(args, {"same": ok}, f"same: {_yn(ok)}")
    return EXIT_OK if ok else EXIT_REFUTED


def cmd_bound(args) -> int:
    rep = stability_bound(_fan(args), args.m, args.degrees)
    lines = [f"k={rep.k} m={rep.m} d_min={rep.d_min}"]
    if rep.applicable:
        head = f"theorem_bound={rep.theorem_bound}"
        if rep.guest_bound is not None:
            head += f" guest_bound={rep.guest_bound}"
        lines.append(head)
        if rep.largest_guaranteed_dim is None:
            lines.append("no range guaranteed")
        else:
            lines.append(f"isomorphisms in all dimensions < {rep.theorem_bound} "
                         f"(largest guaranteed dimension {rep.largest_guaranteed_dim})")
    else:
        lines.append("not applicable: need m < k")
    lines += [f"note: {n}" for n in rep.notes if n != "no range guaranteed"]
    _emit(args, rep.to_dict(), "\n".join(lines))
    return EXIT_OK if rep.applicable else EXIT_REFUTED


def cmd_filtration(args) -> int:
    fan = _fan(args)
    qbar = args.qbar if args.qbar is not None else [0] * len(args.pbar)
    prof = BidegreeProfile(args.m, args.pbar, qbar)
    fp = filtration_profile(fan, prof)
    stable = stable_range_from_duality(fp)
    payload = fp.to_dict()
    payload["stable_range"] = stable
    pairs = [("N", fp.N), ("r", fp.r), ("m", fp.m), ("k", fp.k), ("p_min", fp.p_min),
             ("truncation_dim", fp.truncation_dim), ("stable_range", stable)]
    text = [_rows([(k, str(v)) for k, v in pairs])]
    if fp.per_l:
        text.append(f"{'l':>4} {'stratum_real_dim':>18} {'rl_config_dim':>15}")
        text += [f"{l + 1:>4} {s:>18} {c:>15}" for l, (s, c) in enumerate(fp.per_l)]
    if args.step is not None:
        a = check_step(fan, args.step).a
        after = BidegreeProfile(args.m, [x + y for x, y in zip(prof.p, a)],
                                [x + y for x, y in zip(prof.q, a)])
        shift = stab_rank_shift(prof, after, fan)
        payload["step"] = list(a)
        payload["after"] = after.to_dict()
        payload["stab_rank_shift"] = shift
        text.append(_rows([("step", ",".join(map(str, a))),
                           ("after_p", ",".join(map(str, after.p))),
                           ("after_q", ",".join(map(str, after.q))),
                           ("stab_rank_shift", str(shift))]))
    _emit(args, payload, "\n".join(text))
    return EXIT_OK


def cmd_sample(args) -> int:
    cand = sample(_fan(args), args.m, args.degrees, args.coeff_bound, args.seed)
    lines = [f"P{i} = {p}" for i, p in enumerate(cand.polys)]
    _emit(args, cand.to_dict(), "\n".join(lines))
    return EXIT_OK


COMMANDS = {
    "catalog": cmd_catalog,
    "validate": cmd_validate,
    "primcols": cmd_primcols,
    "classgroup": cmd_classgroup,
    "degree": cmd_degree,
    "check": cmd_check,
    "same": cmd_same,
    "bound": cmd_bound,
    "filtration": cmd_filtration,
    "sample": cmd_sample,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.verb](args)
    except (InputError, OSError) as exc:
        print(f"toricmorph: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
