"""Command-line front end.

Exit codes:

    0  success (every point resolved, validation passed, 120 tritangents certified)
    1  input error (unreadable or malformed file, inconsistent dimensions)
    2  some point Unresolved or SingularJacobian; validation failed
    3  tritangent counts are partial (certified lower bounds only)
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import alphacert, exact, report, tritangent
from .alphacert import ConjPairs, FullReal, Outcome
from .errors import ParseError, RealCertError, SingularJacobian
from .polysys import BlockStructure, parse_points, parse_system, serialize_points, validate_block_structure

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_UNRESOLVED = 2
EXIT_PARTIAL = 3

log = logging.getLogger("realcert")


class InputError(Exception):
    pass


def _read(path: str, parser):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return parser(data)
    except ParseError as exc:
        raise ParseError(exc.message, exc.line, path) from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _jobs(args) -> int:
    if args.jobs is not None:
        return max(1, args.jobs)
    env = os.environ.get("ALPHACERT_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InputError(f"ALPHACERT_JOBS must be an integer, got {env!r}") from None
    return 1


def _structure(text: str):
    try:
        parts = [int(t) for t in text.split(",")]
    except ValueError:
        raise InputError(f"--structure expects integers m,k,l,q[,u,w], got {text!r}") from None
    if len(parts) not in (4, 6) or any(p < 0 for p in parts):
        raise InputError("--structure expects four or six non-negative integers m,k,l,q[,u,w]")
    return parts


def _resolve_structure(f, parts) -> BlockStructure:
    if len(parts) == 6:
        return BlockStructure(*parts)
    return BlockStructure.infer(f, *parts)


def _set_spec(args, f):
    if args.real:
        return FullReal(f.nvars), "R^n"
    if args.structure:
        bs = _resolve_structure(f, _structure(args.structure))
        rep = validate_block_structure(f, bs)
        if not rep.ok:
            raise InputError("system does not have the requested block structure\n" + rep.render())
        return ConjPairs(bs), ConjPairs(bs).describe()
    return None, "approximate-solution test only"


def _certify_task(job):
    f, x, V, max_iters, round_bits = job
    return alphacert.certify_report(f, x, V, max_iters=max_iters, round_bits=round_bits)


def _map(fn, items, jobs):
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items, chunksize=1))
    return [fn(item) for item in items]


# -- commands -------------------------------------------------------------------


def cmd_certify(args) -> int:
    f = _read(args.system, parse_system)
    points = _read(args.points, parse_points)
    if not f.is_square():
        raise InputError(f"{args.system}: system is {len(f)}x{f.nvars}; certification needs a square system")
    for i, x in enumerate(points):
        if len(x) != f.nvars:
            raise InputError(f"{args.points}: point {i} has {len(x)} coordinates, system has {f.nvars} variables")
    V, label = _set_spec(args, f)
    log.info("certifying %d points against %s", len(points), label)
    reports = _map(_certify_task, [(f, x, V, args.max_iters, args.round_bits) for x in points], _jobs(args))
    _emit(report.dumps(report.cert_record(i, r) for i, r in enumerate(reports)), args.out)
    done = {Outcome.IN_V, Outcome.NOT_IN_V} if V is not None else {Outcome.APPROX_ONLY}
    return EXIT_OK if all(r.outcome in done for r in reports) else EXIT_UNRESOLVED


def cmd_validate(args) -> int:
    f = _read(args.system, parse_system)
    bs = _resolve_structure(f, _structure(args.structure))
    rep = validate_block_structure(f, bs)
    _emit(f"structure {bs.m},{bs.k},{bs.l},{bs.q},{bs.u},{bs.w}\n" + rep.render() + "\n", args.out)
    return EXIT_OK if rep.ok else EXIT_UNRESOLVED


def cmd_refine(args) -> int:
    f = _read(args.system, parse_system)
    points = _read(args.points, parse_points)
    if not f.is_square():
        raise InputError(f"{args.system}: system is {len(f)}x{f.nvars}; Newton's method needs a square system")
    status = EXIT_OK
    out = []
    for i, x in enumerate(points):
        if len(x) != f.nvars:
            raise InputError(f"{args.points}: point {i} has {len(x)} coordinates, system has {f.nvars} variables")
        try:
            out.append(alphacert.refine(f, x, args.iters, args.round_bits))
        except SingularJacobian as exc:
            print(f"point {i}: {exc}; passed through unchanged", file=sys.stderr)
            out.append(x)
            status = EXIT_UNRESOLVED
    _emit(serialize_points(out, f.nvars), args.out)
    return status


def _solve_options(args) -> tritangent.SolveOptions:
    return tritangent.SolveOptions(box=args.box, frames=args.frames)


def cmd_solve(args) -> int:
    curve = _read(args.curve, tritangent.parse_curve)
    if args.raw:
        floats = tritangent.float_candidates(curve, args.starts, args.seed, options=_solve_options(args))
        points = [tuple(exact.dyadic_round(complex(v), 53) for v in w) for w in floats]
    else:
        cands = tritangent.multistart_solve(
            curve, args.starts, args.seed, options=_solve_options(args), jobs=_jobs(args)
        )
        points = [c.flatten() for c in cands]
    _emit(serialize_points(points, 18), args.out)
    return EXIT_OK


def cmd_tritangent(args) -> int:
    curve = _read(args.curve, tritangent.parse_curve)
    points = []
    if args.candidates:
        points += _read(args.candidates, parse_points)
        for i, x in enumerate(points):
            if len(x) != 18:
                raise InputError(f"{args.candidates}: candidate {i} has {len(x)} coordinates, expected 18")
    if args.starts:
        found = tritangent.multistart_solve(
            curve, args.starts, args.seed, options=_solve_options(args), jobs=_jobs(args)
        )
        points += [c.flatten() for c in found]
        if args.save_candidates:
            Path(args.save_candidates).write_text(serialize_points(points, 18), encoding="utf-8")
    if not curve.is_real():
        raise InputError(f"{args.curve}: curve coefficients must be real")
    opts = tritangent.ClassifyOptions(max_iters=args.max_iters, round_bits=args.round_bits, jobs=_jobs(args))
    rep = tritangent.classify_tritangents(curve, points, opts)
    _emit(report.dumps(report.classification_records(rep)), args.out)
    c = rep.counts
    print(
        "distinct {distinct_tritangents}  nonreal {nonreal}  real {real}  totally_real {totally_real}"
        "  real_not_totally {real_not_totally}  unresolved {unresolved}".format(**c),
        file=sys.stderr,
    )
    return EXIT_OK if rep.complete else EXIT_PARTIAL


# -- parser ---------------------------------------------------------------------


def _round_bits(text: str):
    if text.lower() in ("off", "none", "0"):
        return None
    try:
        bits = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected a positive integer or 'off'") from None
    if bits < 1:
        raise argparse.ArgumentTypeError("expected a positive integer or 'off'")
    return bits


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected a positive integer") from None
    if n < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return n


def _non_negative(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected a non-negative integer") from None
    if n < 0:
        raise argparse.ArgumentTypeError("expected a non-negative integer")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="realcert",
        description="Certify real solutions of polynomial systems in exact arithmetic.",
    )
    p.add_argument("-v", "--verbose", action="store_true", help="Log progress to stderr.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", help="Write the result here instead of stdout.")
        sp.add_argument("--jobs", type=_positive, help="Worker processes (default: $ALPHACERT_JOBS or 1).")

    def certify_opts(sp, round_default):
        sp.add_argument("--max-iters", type=_non_negative, default=alphacert.DEFAULT_MAX_ITERS,
                        help=f"Newton steps before giving up (default: {alphacert.DEFAULT_MAX_ITERS}).")
        sp.add_argument("--round-bits", type=_round_bits, default=round_default,
                        help=f"Dyadic rounding of iterates, doubling per step (default: {round_default or 'off'}).")

    sp = sub.add_parser("certify", help="Certify points against a set V.")
    sp.add_argument("system", help="System file.")
    sp.add_argument("points", help="Points file.")
    group = sp.add_mutually_exclusive_group()
    group.add_argument("--real", action="store_true", help="V = R^n.")
    group.add_argument("--structure", metavar="m,k,l,q", help="V = conjugate-pair set of this block structure.")
    certify_opts(sp, None)
    common(sp)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("validate", help="Check a system against a block structure.")
    sp.add_argument("system", help="System file.")
    sp.add_argument("--structure", metavar="m,k,l,q", required=True, help="Block structure (u,w optional).")
    sp.add_argument("--out", help="Write the report here instead of stdout.")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("refine", help="Apply Newton steps in exact arithmetic.")
    sp.add_argument("system", help="System file.")
    sp.add_argument("points", help="Points file.")
    sp.add_argument("--iters", type=_non_negative, default=2, help="Newton steps per point (default: 2).")
    sp.add_argument("--round-bits", type=_round_bits, default=None, help="Dyadic rounding after each step (default: off).")
    sp.add_argument("--out", help="Write the points here instead of stdout.")
    sp.set_defaults(func=cmd_refine)

    def solver_opts(sp, starts_required):
        sp.add_argument("--starts", type=_positive, required=starts_required, help="Random starts for the float search.")
        sp.add_argument("--seed", type=int, default=0, help="Seed of the PCG64 streams (default: 0).")
        sp.add_argument("--box", type=float, default=1.0, help="Scale of the random complex starts (default: 1.0).")
        sp.add_argument("--frames", type=_positive, default=tritangent.SolveOptions.frames,
                        help="Coordinate frames sharing the starts: the given one plus random real ones "
                        f"(default: {tritangent.SolveOptions.frames}).")

    sp = sub.add_parser("solve", help="Heuristic search for tritangent candidates.")
    sp.add_argument("curve", help="Curve file.")
    solver_opts(sp, True)
    sp.add_argument("--raw", action="store_true",
                    help="Write the float roots as 53-bit dyadics, without exact refinement or the alpha test.")
    common(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("tritangent", help="Certified tritangent counts of a space sextic.")
    sp.add_argument("curve", help="Curve file.")
    sp.add_argument("candidates", nargs="?", help="Points file of 18-coordinate candidates.")
    solver_opts(sp, False)
    sp.add_argument("--save-candidates", metavar="PATH", help="Also write all candidates (input and found) here.")
    certify_opts(sp, alphacert.DEFAULT_ROUND_BITS)
    common(sp)
    sp.set_defaults(func=cmd_tritangent)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.command == "tritangent" and not args.candidates and not args.starts:
        parser.error("tritangent needs a candidates file or --starts")
    try:
        return args.func(args)
    except (InputError, ParseError, RealCertError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
