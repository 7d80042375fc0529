"""Command line interface: ``ousgeom <command> ...``.

Exit status is 0 on success, 1 when a checked property fails and 2 for
usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import campaign as camp
from .constructions import adjoin_normed, direct_sum, linf_space
from .core import classify, periphery_certificates
from .embeddings import axis_decomposition, find_linf_embedding, plane_coordinates, verify_linf_embedding
from .exact import RationalParseError, ShapeError, fmt, fmt_vector, parse_vector
from .io import FileFormatError, dump_space, load_norm, load_skeleton, load_space
from .skeleton import SkeletonError, generate_space, verify_skeleton
from .space import PreconditionError, SpaceError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _need(args, name):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name.replace('_', '-')} is required for {args.command}")
    return value


def _vectors(text: str) -> list[tuple]:
    return [parse_vector(part) for part in text.split(";") if part.strip()]


def _bool(b) -> str:
    return "true" if b else "false"


# -- construction expressions -------------------------------------------------


def _split_top(text: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise UsageError(f"unbalanced parentheses in {text!r}")
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    if depth:
        raise UsageError(f"unbalanced parentheses in {text!r}")
    parts.append(cur)
    return [p.strip() for p in parts]


def _wrapped(text: str) -> bool:
    """Whether the first character's parenthesis closes at the last character."""
    if not (text.startswith("(") and text.endswith(")")):
        return False
    depth = 0
    for i, ch in enumerate(text):
        depth += {"(": 1, ")": -1}.get(ch, 0)
        if depth == 0:
            return i == len(text) - 1
    return False


def _strip_parens(text: str) -> str:
    text = text.strip()
    while _wrapped(text):
        text = text[1:-1].strip()
    return text


def build_expression(expr: str):
    """Evaluate ``linf:<n>``, ``sum:<A>,<B>`` or ``adjoin:<A>,<normfile>``.

    Operands are nested expressions (parenthesize them when they contain
    commas) or paths to space files.
    """
    expr = _strip_parens(expr)
    kind, sep, rest = expr.partition(":")
    if not sep or kind not in ("linf", "sum", "adjoin"):
        if Path(expr).exists():
            return load_space(expr)
        raise UsageError(f"not a construction expression or space file: {expr!r}")
    if kind == "linf":
        try:
            n = int(rest)
        except ValueError:
            raise UsageError(f"linf needs an integer, got {rest!r}") from None
        if n < 1:
            raise UsageError("linf needs n >= 1")
        return linf_space(n)
    args = _split_top(rest)
    if len(args) != 2:
        raise UsageError(f"{kind} takes two operands, got {len(args)}")
    if kind == "sum":
        return direct_sum(build_expression(args[0]), build_expression(args[1]))
    return adjoin_normed(build_expression(args[0]), load_norm(_strip_parens(args[1])))


def _space(args):
    return build_expression(_need(args, "space"))


# -- commands -----------------------------------------------------------------


def cmd_analyze(args) -> int:
    V = _space(args)
    v = parse_vector(_need(args, "vector"))
    r = classify(V, v)
    print(f"vector = {fmt_vector(r.vector)}")
    print(f"norm = {fmt(r.norm)}")
    print(f"positive = {_bool(r.in_positive_cone)}")
    print(f"order_interval = {_bool(r.in_order_interval)}")
    print(f"canopy = {_bool(r.in_canopy)}")
    print(f"periphery = {_bool(r.in_periphery)}")
    print(f"cone_boundary = {_bool(r.on_cone_boundary)}")
    print(f"zero_state = {r.zero_state_index}")
    print(f"unit_state = {r.unit_state_index}")
    if r.in_canopy:
        c = periphery_certificates(V, v)
        print("certificates = " + ", ".join(_bool(b) for b in c.as_tuple()))
        if c.pair_witness is not None:
            print(f"orthogonal_partner = {fmt_vector(c.pair_witness)}")
        if c.sum_witness is not None:
            print(f"canopy_sum_partner = {fmt_vector(c.sum_witness)}")
        if c.state_witness is not None:
            print(f"vanishing_state = {fmt_vector(c.state_witness.functional)}")
    return EXIT_OK


def _print_axioms(rep) -> None:
    print(f"axiom1 = {_bool(rep.axiom1)}")
    if rep.axiom1_violation is not None:
        print(f"  missing reflection of {fmt_vector(rep.axiom1_violation)}")
    print(f"axiom2 = {_bool(rep.axiom2)}")
    v2 = rep.axiom2_violation
    if v2 is not None:
        lo, hi = v2.interval
        left = "[" if v2.lo_closed else "("
        right = "]" if v2.hi_closed else ")"
        print(
            f"  axiom 2 violated at lambda in {left}{fmt(lo)}, {fmt(hi)}{right} for pair "
            f"{fmt_vector(v2.u)}, {fmt_vector(v2.v)}; witness lambda = {fmt(v2.witness)}"
        )
    print(f"axiom3 = {_bool(rep.axiom3)}")
    v3 = rep.axiom3_violation
    if v3 is not None:
        coeffs = ", ".join(f"alpha[{i}]={fmt(a)}" for i, a in v3.coefficients)
        print(f"  axiom 3 violated: {coeffs}; j = {v3.j}; sum over i != j = {fmt(v3.complement_sum)}")
    if rep.axiom3_recession:
        print("  representations of e are unbounded")
    if rep.head_on_axis_conflict:
        print("head_on_axis_conflict = true")


def cmd_verify_skeleton(args) -> int:
    spec = load_skeleton(_need(args, "skeleton"))
    rep = verify_skeleton(spec)
    _print_axioms(rep)
    if rep.all_hold:
        print("all axioms hold")
        return EXIT_OK
    return EXIT_FAIL


def cmd_generate(args) -> int:
    spec = load_skeleton(_need(args, "skeleton"))
    try:
        gen = generate_space(spec)
    except SkeletonError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.report is not None:
            _print_axioms(exc.report)
        return EXIT_FAIL
    text = dump_space(gen.space)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    print(f"all axioms hold; generated space with {gen.space.nstates} states; periphery {gen.periphery_match}")
    for p in gen.unmatched:
        print(f"  peripheral point not in the skeleton: {fmt_vector(p)}")
    for p in gen.missing:
        print(f"  skeleton point that is not peripheral: {fmt_vector(p)}")
    return EXIT_OK if gen.periphery_match != "mismatch" else EXIT_FAIL


def cmd_construct(args) -> int:
    V = build_expression(_need(args, "expr"))
    text = dump_space(V)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return EXIT_OK


def cmd_decompose(args) -> int:
    V = _space(args)
    dec = axis_decomposition(V, parse_vector(_need(args, "vector")))
    print(f"lambda = {fmt(dec.lam)}")
    print(f"mu = {fmt(dec.mu)}")
    print(f"w = {fmt_vector(dec.w)}")
    return EXIT_OK


def cmd_plane(args) -> int:
    V = _space(args)
    u = parse_vector(_need(args, "base"))
    c = plane_coordinates(V, u, parse_vector(_need(args, "vector")))
    if c is None:
        print("not in the plane spanned by e and the base")
        return EXIT_FAIL
    print(f"coordinates = {fmt_vector(c)}")
    return EXIT_OK


def cmd_verify_embedding(args) -> int:
    V = _space(args)
    elems = _vectors(_need(args, "vector"))
    verdict = verify_linf_embedding(V, elems)
    print(f"accepted = {_bool(verdict.accepted)}")
    for f in verdict.failures:
        print(f"  {f}")
    if verdict.accepted:
        for i, g in enumerate(verdict.biorthogonal_states):
            print(f"  state {i} = {fmt_vector(g.functional)}")
    return EXIT_OK if verdict.accepted else EXIT_FAIL


def cmd_find_embedding(args) -> int:
    V = _space(args)
    n = _need(args, "n")
    if n < 2:
        raise UsageError("--n must be at least 2")
    cand = find_linf_embedding(V, n)
    if cand is None:
        print("not found at vertex resolution")
        return EXIT_FAIL
    print("found = " + "; ".join(fmt_vector(u) for u in cand.elements))
    return EXIT_OK


def cmd_campaign(args) -> int:
    name = _need(args, "property")
    if name not in camp.PROPERTIES:
        raise UsageError(f"unknown property {name!r}; known: {', '.join(sorted(camp.PROPERTIES))}")
    if args.grid:
        return _grid_campaign(name)
    if args.replay is not None:
        failures = camp.replay(name, args.replay)
        print(f"property: {name}\nreplayed seed: {args.replay}\nfailures: {len(failures)}")
        for f in failures:
            print(f"  inputs={f['inputs']} expected={f['expected']} actual={f['actual']}")
        return EXIT_FAIL if failures else EXIT_OK
    report = camp.run_campaign(name, args.trials, args.seed)
    print(report.render(timing=args.timing))
    return EXIT_OK if report.passed else EXIT_FAIL


def _grid_campaign(name) -> int:
    failures, points = [], 0
    if name == "adjoin-periphery":
        for V, X in camp.standard_adjoin_cases():
            n, f = camp.adjoin_grid_check(V, X)
            points += n
            failures += f
    elif name == "linf-closed-forms":
        for n in range(2, 6):
            points += len(camp.farey(4)) ** n
            failures += camp.linf_grid_check(n)
    else:
        raise UsageError(f"no grid mode for {name!r}")
    print(f"property: {name}\ngrid points: {points}\nfailures: {len(failures)}")
    for f in failures:
        print(f"  inputs={f['inputs']} expected={f['expected']} actual={f['actual']}")
    return EXIT_FAIL if failures else EXIT_OK


def cmd_random_space(args) -> int:
    dim = _need(args, "dim")
    count = args.n if args.n is not None else dim + 1
    V = camp.random_space(args.seed, dim, count)
    print(dump_space(V))
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "verify-skeleton": cmd_verify_skeleton,
    "generate": cmd_generate,
    "construct": cmd_construct,
    "decompose": cmd_decompose,
    "plane": cmd_plane,
    "verify-embedding": cmd_verify_embedding,
    "find-embedding": cmd_find_embedding,
    "campaign": cmd_campaign,
    "random-space": cmd_random_space,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ousgeom", description="Exact geometry of order unit spaces.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--space", help="space file or construction expression")
        p.add_argument("--skeleton", help="skeleton file")
        p.add_argument("--vector", help="comma separated rationals; ';' separates several vectors")
        p.add_argument("--base", help="peripheral base vector of the plane")
        p.add_argument("--n", type=int, help="embedding size or state count")
        p.add_argument("--dim", type=int, help="dimension for random-space")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--trials", type=int, default=100)
        p.add_argument("--expr", help="construction expression")
        p.add_argument("--property", help="campaign property name")
        p.add_argument("--replay", type=int, help="rerun a single trial seed")
        p.add_argument("--grid", action="store_true", help="exhaustive grid mode")
        p.add_argument("--timing", action="store_true", help="include elapsed time in reports")
        p.add_argument("--out", help="write the produced space file here")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, FileFormatError, RationalParseError, ShapeError, SpaceError, PreconditionError, SkeletonError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
