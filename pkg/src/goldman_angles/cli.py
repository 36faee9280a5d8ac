"""Command-line front end: ``goldman-angles <surface|bracket|verify|twist|svg> ...``.

Every command is a pure function of its flags and input files. Exit codes:
0 success, 2 invalid input, 3 no stabilization, 4 numerical degeneracy,
5 verification failure.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys

from . import angles, config, goldman, surface, svg, twist
from .errors import GoldmanError, InvalidInput
from .group import conj_class, cyclic_reduce

EXIT_OK, EXIT_INVALID, EXIT_FAIL = 0, 2, 5


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidInput(message)


def _add_surface_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--surface", help="surface JSON file")
    p.add_argument("--kind", default="holed-torus", help="pants or holed-torus")
    p.add_argument("--length", type=float, default=2.0, help="holed torus: length of a")
    p.add_argument("--twist", type=float, default=0.0, help="holed torus: twist along a")
    p.add_argument("--b-length", type=float, default=None, help="holed torus: length of b at zero twist")
    p.add_argument("--lengths", help="pants: l1,l2,l3")


def _floats(text: str, n: int, flag: str) -> list[float]:
    try:
        vals = [float(t) for t in text.split(",")]
    except ValueError as exc:
        raise InvalidInput(f"{flag} needs {n} comma-separated numbers") from exc
    if len(vals) != n:
        raise InvalidInput(f"{flag} needs {n} comma-separated numbers")
    return vals


def _surface(args) -> surface.SurfaceRep:
    if args.surface:
        try:
            return surface.load(args.surface)
        except OSError as exc:
            raise InvalidInput(f"cannot read {args.surface}: {exc.strerror}") from exc
    kind = surface._kind(args.kind)
    if kind == surface.PANTS:
        if not args.lengths:
            raise InvalidInput("pants need --lengths l1,l2,l3")
        return surface.pants(*_floats(args.lengths, 3, "--lengths"))
    return surface.holed_torus(args.length, args.twist, args.b_length)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="goldman-angles", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("surface", help="write a surface file")
    _add_surface_flags(s)
    s.add_argument("--out", help="output path (default stdout)")

    b = sub.add_parser("bracket", help="Goldman bracket with angles, as JSON")
    _add_surface_flags(b)
    b.add_argument("--x", required=True)
    b.add_argument("--y", required=True)
    b.add_argument("--radius-cap", type=int, default=goldman.DEFAULT_RADIUS_CAP)
    b.add_argument("--split-triple", action="store_true",
                   help="count branches through a triple point separately instead of failing")
    b.add_argument("--out")

    v = sub.add_parser("verify", help="equal terms have equal angles; term count equals i(x, y)")
    _add_surface_flags(v)
    v.add_argument("--x", required=True)
    v.add_argument("--y", required=True, help="one word or a comma-separated list")
    v.add_argument("--metrics", type=int, default=5)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--radius-cap", type=int, default=goldman.DEFAULT_RADIUS_CAP)
    v.add_argument("--tol", type=float, default=None, help="angle equality tolerance")
    v.add_argument("--split-triple", action="store_true")
    v.add_argument("--out", help="angle CSV")

    t = sub.add_parser("twist", help="twist sweep along the distinguished curve, as CSV")
    _add_surface_flags(t)
    t.add_argument("--y", required=True)
    t.add_argument("--grid", default="-2:2:0.05", help="a:b:step")
    t.add_argument("--crosscheck", action="store_true", help="compare d length(y)/ds with sum cos(phi)")
    t.add_argument("--split-triple", action="store_true")
    t.add_argument("--out", help="CSV path (default stdout)")

    g = sub.add_parser("svg", help="picture of a term's lift in the half-plane")
    _add_surface_flags(g)
    g.add_argument("--x", required=True)
    g.add_argument("--y", required=True)
    g.add_argument("--record", type=int, default=0)
    g.add_argument("--arcs", type=int, default=2, help="n: draws arcs gamma_-n .. gamma_n")
    g.add_argument("--radius-cap", type=int, default=goldman.DEFAULT_RADIUS_CAP)
    g.add_argument("--split-triple", action="store_true")
    g.add_argument("--out", help="SVG path (default stdout)")
    return p


def _emit(text: str, path: str | None, stdout) -> None:
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)


# --------------------------------------------------------------------------
# commands


def cmd_surface(args, stdout) -> int:
    _emit(surface.dumps(_surface(args)), args.out, stdout)
    return EXIT_OK


def bracket_document(rep, x: str, y: str, cap: int, split_triple: bool = False) -> dict:
    bs = goldman.goldman_bracket(rep, x, y, cap, split_triple)
    rows = angles.record_angles(rep, x, y, bs.records)
    return {
        "x": x,
        "y": y,
        "radius_used": bs.radius_used,
        "records": [
            {
                "g": r.record.conjugator,
                "param": r.record.param,
                "sign": r.record.sign,
                "term_class": str(r.record.term_class),
                "theta": r.theta,
                "phi": r.phi,
            }
            for r in rows
        ],
        "sum": [{"class": str(c), "coeff": k} for c, k in bs.sorted_terms()],
        "i": len(bs.records),
        "terms_with_multiplicity": goldman.term_count(bs),
    }


def cmd_bracket(args, stdout) -> int:
    rep = _surface(args)
    doc = bracket_document(rep, args.x, args.y, args.radius_cap, args.split_triple)
    _emit(json.dumps(doc, indent=2) + "\n", args.out, stdout)
    return EXIT_OK


def _is_simple(rep: surface.SurfaceRep, x: str) -> bool:
    """Generators of the holed torus and the three pants boundaries, either orientation."""
    core, _ = cyclic_reduce(x)
    cls = {conj_class(core), conj_class(core.swapcase()[::-1])}
    simple = {"a", "b"} if rep.kind == surface.HOLED_TORUS else {"a", "b", "ab"}
    return any(c.word in simple for c in cls)


def _metrics(args) -> list[surface.SurfaceRep]:
    if args.metrics < 1:
        raise InvalidInput("--metrics must be at least 1")
    if args.surface:
        base = _surface(args)
        sampler = surface.MetricSampler(args.seed, base.kind)
        return [base] + [surface.sample_metric(sampler, i) for i in range(1, args.metrics)]
    sampler = surface.MetricSampler(args.seed, surface._kind(args.kind))
    return [surface.sample_metric(sampler, i) for i in range(args.metrics)]


def cmd_verify(args, stdout) -> int:
    reps = _metrics(args)
    ys = [w for w in args.y.split(",") if w]
    if not ys:
        raise InvalidInput("--y needs at least one word")
    ok = True
    all_reports = []
    for y in ys:
        reports = []
        counts = set()
        for k, rep in enumerate(reps):
            bs = goldman.goldman_bracket(rep, args.x, y, args.radius_cap, args.split_triple)
            rpt = angles.angle_report(rep, args.x, y, f"{y}#{k}", args.tol, bs.records)
            reports.append(rpt)
            if _is_simple(rep, args.x):
                counts.add((goldman.term_count(bs), len(bs.records)))
        dev = max((r.max_deviation for r in reports), default=0.0)
        passed = all(r.passed for r in reports)
        ok &= passed
        stdout.write(f"{'PASS' if passed else 'FAIL'} equal-terms x={args.x} y={y} "
                     f"metrics={len(reps)} max_theta_deviation={dev:.3e}\n")
        if counts:
            same = all(t == i for t, i in counts) and len({i for _, i in counts}) == 1
            ok &= same
            shown = ",".join(f"{t}/{i}" for t, i in sorted(counts))
            stdout.write(f"{'PASS' if same else 'FAIL'} term-count x={args.x} y={y} terms/i={shown}\n")
        all_reports += reports
    if args.out:
        buf = io.StringIO()
        angles.write_csv(all_reports, buf)
        _emit(buf.getvalue(), args.out, stdout)
    stdout.write(f"{'PASS' if ok else 'FAIL'}\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_twist(args, stdout) -> int:
    rep = _surface(args)
    grid = twist.parse_grid(args.grid)
    sw = twist.sweep(rep, args.y, grid, split_triple=args.split_triple)
    buf = io.StringIO()
    twist.write_csv(sw, buf)
    _emit(buf.getvalue(), args.out, stdout)
    report = stdout if args.out else sys.stderr
    mono = twist.monotonicity_check(sw)
    thetas = twist.theta_direction_check(sw)
    ok = all(mono.values()) and all(thetas.values())
    for g in sw.record_ids:
        report.write(f"{'PASS' if mono[g] else 'FAIL'} phi-decreasing g={g or '1'}\n")
        report.write(f"{'PASS' if thetas[g] else 'FAIL'} theta-direction g={g or '1'}\n")
    if args.crosscheck:
        rows = twist.wolpert_crosscheck(sw)
        worst = max((r.residual for r in rows), default=0.0)
        flag = "ok" if worst <= 1e-4 else "above soft threshold 1e-4"
        report.write(f"INFO length-derivative residual max={worst:.3e} ({flag})\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_svg(args, stdout) -> int:
    rep = _surface(args)
    if args.arcs < 0:
        raise InvalidInput("--arcs must be non-negative")
    bs = goldman.goldman_bracket(rep, args.x, args.y, args.radius_cap, args.split_triple)
    if not 0 <= args.record < len(bs.records):
        raise InvalidInput(f"--record {args.record} out of range; the bracket has {len(bs.records)} records")
    _emit(svg.render(rep, args.x, args.y, bs.records[args.record], args.arcs), args.out, stdout)
    return EXIT_OK


COMMANDS = {"surface": cmd_surface, "bracket": cmd_bracket, "verify": cmd_verify,
            "twist": cmd_twist, "svg": cmd_svg}


def main(argv=None, stdout=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    try:
        tol = config.from_env("GOLDMAN_TOL")
    except (ValueError, TypeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    try:
        args = build_parser().parse_args(_join_values(sys.argv[1:] if argv is None else list(argv)))
        with _tolerances(tol):
            return COMMANDS[args.command](args, stdout)
    except GoldmanError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return exc.exit_code


def _join_values(argv: list[str]) -> list[str]:
    # "--grid -2:2:0.05" would otherwise be read as an unknown option
    out, it = [], iter(argv)
    for a in it:
        if a == "--grid":
            out.append(f"--grid={next(it, '')}")
        else:
            out.append(a)
    return out


@contextlib.contextmanager
def _tolerances(tol: config.Tolerances):
    saved = config.tolerances()
    config.set_tolerances(tol)
    try:
        yield
    finally:
        config.set_tolerances(saved)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
