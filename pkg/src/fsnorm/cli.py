"""Command-line front door.

Exit codes: 0 success or decided, 1 domain failure, 2 input failure,
3 undetermined verdict under ``--strict``.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .counterexample import EventualSeq, gap_demo
from .diagonal import Enumeration, diagonal_weights, verify_carry_bound
from .exactq import format_rational, parse_rational
from .fincat import CategoryError, DepthOverflow, load_category, max_depth, validate
from .homology import homology_coordinates, l1_simplicial, load_class, load_complex
from .locus import CARRIES, DEFAULT_QUOTIENT_DEPTH, EXACT, VIOLATED, carries, seminorm_locus, universal_locus
from .seminorm import Generated, ObjectMismatch, eval_generated, load_family

EXIT_OK, EXIT_DOMAIN, EXIT_INPUT, EXIT_UNDETERMINED = 0, 1, 2, 3


class InputError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _undetermined(args) -> int:
    return EXIT_UNDETERMINED if args.strict else EXIT_OK


def _depth(args) -> int:
    if args.depth < 0:
        raise InputError("--depth must be nonnegative")
    return min(args.depth, max_depth())


def _load(fn, *a):
    try:
        return fn(*a)
    except OSError as exc:
        raise InputError(str(exc)) from None
    except (ValueError, KeyError, TypeError) as exc:  # includes JSON and rational parse errors
        raise InputError(f"{a[-1]}: {exc}") from None


def _valid_category(path):
    cat = _load(load_category, path)
    rep = validate(cat)
    if not rep.ok:
        raise ObjectMismatch("; ".join(rep.errors))
    return cat


def _parse_vector(text: str) -> tuple:
    try:
        return tuple(parse_rational(x.strip()) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise InputError(str(exc)) from None


# subcommands ------------------------------------------------------------

def cmd_validate(args) -> int:
    cat = _load(load_category, args.category)
    rep = validate(cat)
    text = "valid" if rep.ok else "invalid\n" + "\n".join("  " + e for e in rep.errors)
    _emit(args, {"valid": rep.ok, "errors": rep.errors}, text)
    return EXIT_OK if rep.ok else EXIT_DOMAIN


def cmd_eval(args) -> int:
    cat = _valid_category(args.category)
    fam = _load(load_family, args.family)
    fam.check(cat)
    val = eval_generated(cat, fam, args.object, _parse_vector(args.vector), _depth(args))
    lines = [str(val)]
    for t in val.representation:
        lines.append(f"  {format_rational(t.coefficient)} * F({'.'.join(t.word) or 'id'})"
                     f"(entry {t.entry} at {t.src})")
    _emit(args, val.to_dict(), "\n".join(lines))
    return EXIT_OK


def _locus_line(loc) -> str:
    full = loc.space.dim == loc.space.ambient_dim
    if loc.space.dim == 0:
        body = f"N({loc.object}) = 0"
    elif full:
        body = f"N({loc.object}) = F({loc.object})"
    else:
        basis = ", ".join("(" + ", ".join(format_rational(x) for x in b) + ")"
                          for b in loc.space.canonical().vectors())
        body = f"N({loc.object}) = span{{{basis}}}"
    return f"{body}, {loc.status}"


def cmd_locus(args) -> int:
    cat = _valid_category(args.category)
    depth = _depth(args)
    if args.family is None:
        res = universal_locus(cat, depth, min(DEFAULT_QUOTIENT_DEPTH, max_depth()))
        locs = [res[o] for o in cat.object_names]
        payload = {"kind": "universal", "loci": [l.to_dict() for l in locs]}
        lines = [_locus_line(l) for l in locs]
        decided = all(l.status == EXACT for l in locs)
    else:
        fam = _load(load_family, args.family)
        fam.check(cat)
        h = Generated(cat, fam)
        bounds = [seminorm_locus(h, o, depth) for o in cat.object_names]
        locs = [l for b in bounds for l in b.loci()]
        payload = {"kind": "generated", "loci": [l.to_dict() for l in locs]}
        lines = [_locus_line(l).replace("N(", "N_sigma(") for l in locs]
        decided = all(b.exact for b in bounds)
    for cert in (c for l in locs for c in l.certificates):
        lines.append(f"  certificate: F({'.'.join(cert.witness_word)}) has eigenvalue "
                     f"{format_rational(cert.eigenvalue)} at {cert.object}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if decided else _undetermined(args)


def cmd_carry(args) -> int:
    cat = _valid_category(args.category)
    fs = _load(load_family, args.sigma)
    ft = _load(load_family, args.tau)
    fs.check(cat)
    ft.check(cat)
    verdict = carries(cat, Generated(cat, fs), Generated(cat, ft), _depth(args))
    text = verdict.status + (f" ({verdict.note})" if verdict.note else "")
    if verdict.witness is not None:
        o, v = verdict.witness
        text += (f"\n  witness at {o}: ({', '.join(format_rational(x) for x in v)}),"
                 f" sigma = 0, tau -> {verdict.tau_value}")
    for o, s in verdict.per_object:
        text += f"\n  {o}: {s}"
    _emit(args, verdict.to_dict(), text)
    return EXIT_OK if verdict.status in (CARRIES, VIOLATED) else _undetermined(args)


def _load_diagonal(path):
    def parse(p):
        with open(p, encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict) or set(data) != {"enumeration", "weights"}:
            raise ValueError("expected exactly the keys 'enumeration' and 'weights'")
        ents = []
        for i, e in enumerate(data["enumeration"]):
            if not isinstance(e, dict) or set(e) != {"object", "vector"}:
                raise ValueError(f"enumeration[{i}]: expected keys object, vector")
            ents.append((str(e["object"]), tuple(parse_rational(x) for x in e["vector"])))
        fams = [[parse_rational(x) for x in row] for row in data["weights"]]
        for j, row in enumerate(fams):
            if len(row) != len(ents):
                raise ValueError(f"weights[{j}] must have one weight per enumerated element")
            if any(x < 0 for x in row):
                raise ValueError(f"weights[{j}] has a negative weight")
        return Enumeration(tuple(ents)), fams
    return _load(parse, path)


def cmd_diagonal(args) -> int:
    cat = _valid_category(args.category)
    en, fams = _load_diagonal(args.weights)
    if not fams:
        raise InputError("at least one weight family is required")
    for o, a in en.entries:
        if not cat.has_object(o) or len(a) != cat.dim(o):
            raise ObjectMismatch(f"enumerated element ({o}, {list(a)}) does not live in the category")
    depth = _depth(args)
    v = diagonal_weights(en, fams)
    rng = random.Random(args.seed)
    values = [Fraction(k) for k in range(-2, 3)] + [Fraction(1, 2)]
    samples = [(o, a) for o, a in en.entries]
    for _ in range(args.samples):
        o = rng.choice(cat.objects)
        samples.append((o.name, tuple(rng.choice(values) for _ in range(o.dim))))
    ms = range(len(fams)) if args.m is None else [args.m]
    reports = []
    for m in ms:
        if not 0 <= m < len(fams):
            raise InputError(f"--m must be between 0 and {len(fams) - 1}")
        reports.append(verify_carry_bound(cat, en, v, fams, m, samples, depth))
    ok = all(r[3] for rep in reports for r in rep.verified_samples)
    lines = ["v = (" + ", ".join(format_rational(x) for x in v) + ")"]
    for rep in reports:
        held = sum(1 for r in rep.verified_samples if r[3])
        lines.append(f"m = {rep.m}: Q = {format_rational(rep.Q)}"
                     f" ({'exact' if rep.exact else 'truncated'}),"
                     f" bound holds on {held}/{len(rep.verified_samples)} samples")
    _emit(args, {"v": [format_rational(x) for x in v], "reports": [r.to_dict() for r in reports],
                 "all_hold": ok}, "\n".join(lines))
    if not ok:
        return EXIT_DOMAIN
    return EXIT_OK if all(r.exact for r in reports) else _undetermined(args)


def cmd_counterexample(args) -> int:
    prefix = _parse_vector(args.v_prefix) if args.v_prefix else ()
    try:
        tail = parse_rational(args.v_tail)
        v = EventualSeq(prefix, tail)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.m_max < 1:
        raise InputError("--m-max must be at least 1")
    rep = gap_demo(v, args.m_max)
    _emit(args, rep.to_dict(), rep.table())
    return EXIT_OK if rep.lower_bound_certified and rep.upper_bounds_ok else EXIT_DOMAIN


def cmd_homology(args) -> int:
    K = _load(load_complex, args.complex)
    cls = _load(load_class, K, args.cls)
    value = l1_simplicial(K, cls)
    coords = homology_coordinates(K, cls)
    payload = {
        "degree": cls.degree,
        "homology_coordinates": [format_rational(x) for x in coords],
        "l1_simplicial": format_rational(value),
        "note": "simplicial value; an upper bound for the singular l1 semi-norm",
    }
    text = (f"degree {cls.degree} class, coordinates ("
            f"{', '.join(format_rational(x) for x in coords)})\n"
            f"simplicial l1 value = {format_rational(value)} (upper bound for the singular semi-norm)")
    _emit(args, payload, text)
    return EXIT_OK


# parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--depth", type=int, default=8, help="truncation depth (default 8)")
    common.add_argument("--m-max", type=int, default=64, help="range of m for the gap table (default 64)")
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--strict", action="store_true", help="exit 3 on undetermined verdicts")
    common.add_argument("--seed", type=int, default=0, help="seed for sample generation")

    p = argparse.ArgumentParser(prog="fsnorm", description="Exact workbench for functorial semi-norms.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check a category file")
    s.add_argument("category")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("eval", parents=[common], help="evaluate a generated semi-norm")
    s.add_argument("category")
    s.add_argument("family")
    s.add_argument("object")
    s.add_argument("vector", help="comma-separated rationals, e.g. 1,-1/2")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("locus", parents=[common], help="vanishing loci (universal, or of a family)")
    s.add_argument("category")
    s.add_argument("--family", default=None)
    s.set_defaults(func=cmd_locus)

    s = sub.add_parser("carry", parents=[common], help="does sigma carry tau")
    s.add_argument("category")
    s.add_argument("sigma")
    s.add_argument("tau")
    s.set_defaults(func=cmd_carry)

    s = sub.add_parser("diagonal", parents=[common], help="diagonal weights and the Q bound")
    s.add_argument("category")
    s.add_argument("weights", help="JSON with 'enumeration' and 'weights'")
    s.add_argument("--m", type=int, default=None, help="single family index (default: all)")
    s.add_argument("--samples", type=int, default=20)
    s.set_defaults(func=cmd_diagonal)

    s = sub.add_parser("counterexample", parents=[common], help="the non-universality gap")
    s.add_argument("--v-prefix", default="", help="comma-separated prefix of the candidate weights")
    s.add_argument("--v-tail", default="1", help="eventual constant value (default 1)")
    s.set_defaults(func=cmd_counterexample)

    s = sub.add_parser("homology", parents=[common], help="simplicial l1 value of a class")
    s.add_argument("complex")
    s.add_argument("cls", metavar="class")
    s.set_defaults(func=cmd_homology)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, CategoryError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except (ObjectMismatch, DepthOverflow, ValueError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
