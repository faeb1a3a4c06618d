"""Command-line front end.

Exit codes: 0 success, 2 unreadable input or bad arguments, 3 degenerate
stable ball, 4 at or near a pole, 5 outside the convergence domain, 6 any
other domain error.
"""

from __future__ import annotations

import argparse
import hashlib
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import ehrhart, errors, lattice, plots, polytope, spectrum, stable, zeta
from .graph import homology_basis, parse_graph


@dataclass
class RunConfig:
    command: str
    input: str | None
    out: str | None
    params: dict[str, str] = field(default_factory=dict)
    input_text: str | None = None

    def header(self) -> list[str]:
        lines = [f"szeta {self.command}"]
        if self.input_text is not None:
            digest = hashlib.sha256(self.input_text.encode()).hexdigest()
            lines.append(f"input_sha256={digest}")
        lines += [f"{k}={v}" for k, v in sorted(self.params.items()) if v is not None]
        return lines


def parse_complex(text: str) -> complex:
    """'RE' or 'RE,IM'."""
    parts = text.split(",")
    if len(parts) > 2:
        raise argparse.ArgumentTypeError(f"expected RE or RE,IM, got {text!r}")
    try:
        return complex(float(parts[0]), float(parts[1]) if len(parts) == 2 else 0.0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _read(path: str | None) -> str:
    if path is None:
        raise errors.ParseError("--input is required")
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise errors.ParseError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _graph(cfg: RunConfig):
    cfg.input_text = _read(cfg.input)
    g = parse_graph(cfg.input_text)
    return g, homology_basis(g)


def _z_text(z: complex) -> str:
    return f"{z.real!r},{z.imag!r}"


# -- commands --------------------------------------------------------------------------

def cmd_spectrum(args, cfg: RunConfig) -> int:
    g, basis = _graph(cfg)
    ms = spectrum.enumerate_spectrum(g, basis, args.t)
    ordered = spectrum.ordered_spectrum(ms)
    prefix = args.out or "spectrum"
    Path(f"{prefix}_marked.csv").write_text(spectrum.write_spectrum_csv(ms, g, basis, cfg.header()))
    text = spectrum.write_ordered_csv(ordered, cfg.header())
    Path(f"{prefix}_ordered.csv").write_text(text)
    sys.stdout.write(text)
    if args.plot:
        plots.staircase([(float(l), a) for l, a in ordered], args.plot, "homology length spectrum")
    return 0


def cmd_zeta(args, cfg: RunConfig) -> int:
    g, basis = _graph(cfg)
    ball = stable.stable_ball(g, basis)
    zs = args.z or [complex(ball.dim + 1)]
    rows = []
    if args.meromorphic:
        hd = ehrhart.decomposition_for(ball)
        for z in zs:
            rows.append((z, zeta.zeta_st_meromorphic(hd, z), None))
    else:
        for z in zs:
            if z.real <= ball.dim:
                raise errors.ConvergenceDomain(f"Re z = {z.real} <= {ball.dim}; use --meromorphic")
        if args.stable:
            shells = zeta.stable_shells(ball, args.t)
        else:
            shells = zeta.systolic_shells(spectrum.enumerate_spectrum(g, basis, args.t), ball)
        for z in zs:
            v = shells.evaluate(z)
            rows.append((z, v.value, v.tail))
        if args.plot:
            import numpy as np

            ts = np.linspace(float(args.t) / 20, float(args.t), 40)
            z0 = zs[0]
            partial = []
            for t in ts:
                keep = shells.lengths <= t
                sub = zeta.Shells(shells.lengths[keep], shells.counts[keep], t, shells.dim, shells.volume, shells.cell_radius)
                partial.append(sub.partial_sum(z0).real)
            plots.line_chart(ts, partial, "t", f"partial sum at z = {z0}", args.plot, "truncated series")
    _emit(zeta.format_evaluations(rows, cfg.header()), args.out)
    return 0


def cmd_residue(args, cfg: RunConfig) -> int:
    g, basis = _graph(cfg)
    ball = stable.stable_ball(g, basis)
    b = ball.dim
    if args.truncated:
        f = zeta.stable_shells(ball, args.t).completed()
    else:
        hd = ehrhart.integerized_decomposition(ball)
        f = lambda z: zeta.zeta_st_meromorphic(hd, z)  # noqa: E731
    res = zeta.residue_numeric(f, b)
    expected = b * ball.volume
    lines = [f"# {h}" for h in cfg.header()]
    lines += ["quantity,value,error", f"residue,{res.value!r},{res.error!r}", f"b_times_volume,{float(expected)!r},0", f"b_times_volume_exact,{expected},0"]
    _emit("\n".join(lines) + "\n", args.out)
    if args.plot:
        eps = [2.0**-k for k in range(1, 11)]
        vals = [e * complex(f(b + e)).real for e in eps]
        plots.line_chart(eps, vals, "z - b", "(z - b) zeta(z)", args.plot, "residue extrapolation", float(expected))
    return 0


def cmd_perron(args, cfg: RunConfig) -> int:
    g, basis = _graph(cfg)
    ball = stable.stable_ball(g, basis)
    hd = ehrhart.integerized_decomposition(ball)
    c = args.c if args.c is not None else ball.dim + 1
    x = float(args.t)
    threshold = math.exp(x) if args.log_scale else x
    jumps = zeta.integer_jumps(ball.normal_denominator, threshold)
    count = zeta.perron_count(
        lambda z: zeta.zeta_st_meromorphic_array(hd, z), x, c, args.height, args.step, args.log_scale, jumps
    )
    exact = spectrum.counting_function(ball, Fraction(threshold).limit_denominator(10**9))
    lines = [f"# {h}" for h in cfg.header()]
    lines += ["x,perron,rounded,lattice_count", f"{threshold!r},{count!r},{round(count)},{exact}"]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_ehrhart(args, cfg: RunConfig) -> int:
    g, basis = _graph(cfg)
    ball = stable.stable_ball(g, basis)
    qp = ehrhart.ehrhart_fit(ball)
    text = ehrhart.format_table(qp, cfg.header())
    if ball.integer_valued:
        text += "\n" + ehrhart.format_hurwitz(ehrhart.hurwitz_decomposition(ehrhart.shell_counts(qp)))
    _emit(text, args.out)
    return 0


def cmd_ball(args, cfg: RunConfig) -> int:
    g, basis = _graph(cfg)
    ball = stable.stable_ball(g, basis)
    lines = [f"# {h}" for h in cfg.header()]
    lines.append(f"# volume={ball.volume}")
    lines.append(f"# systole={spectrum.systole(g, basis)}")
    if args.radius is not None:
        lines.append(f"# burago_band={spectrum.burago_band(g, basis, args.radius, ball)}")
    text = "\n".join(lines) + "\n" + polytope.format_ball(ball)
    _emit(text, args.out)
    return 0


def cmd_torus(args, cfg: RunConfig) -> int:
    lines = [f"# {h}" for h in cfg.header()]
    if args.witt_check:
        a, b = lattice.witt_pair()
        n = args.theta or 8
        ta, tb = lattice.theta_coefficients(a, n), lattice.theta_coefficients(b, n)
        ca, cb = lattice.e8e8_theta_by_coordinates(n), lattice.dn_plus_theta_by_coordinates(16, n)
        same = ta == tb == ca == cb
        hits = lattice.congruence_trials(a.integer_gram, b.integer_gram, args.trials)
        lines += [
            f"isospectral_up_to,{n},{str(same).lower()}",
            f"r2,{ta[1]},{ca[1]}",
            f"root_components_e8e8,{';'.join(map(str, lattice.root_components(a)))}",
            f"root_components_d16plus,{';'.join(map(str, lattice.root_components(b)))}",
            f"congruences_found,{hits},{args.trials}",
        ]
        _emit("\n".join(lines) + "\n", args.out)
        return 0
    cfg.input_text = _read(cfg.input)
    lat = lattice.parse_lattice(cfg.input_text)
    lines = [f"# {h}" for h in cfg.header()]
    if args.theta:
        _emit(lattice.format_theta(lattice.theta_coefficients(lat, args.theta), cfg.header()), args.out)
        return 0
    if args.z:
        rows = []
        for z in args.z:
            v = lattice.epstein_zeta_truncated(lat, z, float(args.t))
            rows.append((z, v.value, v.tail))
        _emit(zeta.format_evaluations(rows, cfg.header()), args.out)
        return 0
    lines += ["quantity,value", f"dimension,{lat.dim}", f"covolume,{lat.covolume!r}", f"residue,{lattice.torus_residue(lat)!r}"]
    if lat.dim == 2:
        lhs, rhs, holds = lattice.torus_isoperimetric_check(lat)
        lines += [f"isoperimetric_lhs,{lhs!r}", f"isoperimetric_rhs,{rhs!r}", f"isoperimetric_holds,{str(holds).lower()}"]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


# -- parser ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="szeta", description="Length spectra and zeta functions of graphs and flat tori.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, need_t=False, t_default=None):
        sp.add_argument("--input", help="graph or lattice file")
        sp.add_argument("--out", help="output path")
        sp.add_argument("--t", type=parse_fraction, required=need_t, default=t_default, help="length threshold")

    sp = sub.add_parser("spectrum", help="marked and ordered homology length spectrum")
    common(sp, need_t=True)
    sp.add_argument("--plot", help="SVG of the counting staircase")
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("zeta", help="evaluate the systolic or stable zeta function")
    common(sp, t_default=Fraction(100))
    sp.add_argument("--z", type=parse_complex, action="append", help="RE or RE,IM (repeatable)")
    sp.add_argument("--stable", action="store_true", help="sum over the stable norm instead of the spectrum")
    sp.add_argument("--meromorphic", action="store_true", help="Riemann/Hurwitz expansion (integer-valued norms)")
    sp.add_argument("--plot", help="SVG of partial sums against t")
    sp.set_defaults(func=cmd_zeta)

    sp = sub.add_parser("residue", help="residue of the stable zeta function at z = b")
    common(sp, t_default=Fraction(300))
    sp.add_argument("--truncated", action="store_true", help="use lattice counts up to --t instead of the expansion")
    sp.add_argument("--plot", help="SVG of (z - b) zeta(z) against z - b")
    sp.set_defaults(func=cmd_residue)

    sp = sub.add_parser("perron", help="recover the counting function from the stable zeta function")
    common(sp, need_t=True)
    sp.add_argument("--c", type=float, help="abscissa of the vertical line (default b + 1)")
    sp.add_argument("--height", type=float, default=200.0)
    sp.add_argument("--step", type=float, default=0.05)
    sp.add_argument("--log-scale", action="store_true", help="read --t as a log length")
    sp.set_defaults(func=cmd_perron)

    sp = sub.add_parser("ehrhart", help="Ehrhart quasi-polynomial and Hurwitz coefficients")
    common(sp)
    sp.set_defaults(func=cmd_ehrhart)

    sp = sub.add_parser("ball", help="exact stable unit ball")
    common(sp)
    sp.add_argument("--radius", type=parse_fraction, help="also report max l - ||.|| up to this norm")
    sp.set_defaults(func=cmd_ball)

    sp = sub.add_parser("torus", help="flat tori: theta series, Epstein zeta, the Witt pair")
    common(sp, t_default=Fraction(100))
    sp.add_argument("--z", type=parse_complex, action="append")
    sp.add_argument("--theta", type=int, help="theta coefficients up to this norm")
    sp.add_argument("--witt-check", action="store_true")
    sp.add_argument("--trials", type=int, default=10_000, help="random unimodular trials for --witt-check")
    sp.set_defaults(func=cmd_torus)
    return p


_EXIT = [
    (errors.ParseError, 2),
    (errors.DegenerateBall, 3),
    (errors.PoleError, 4),
    (errors.ConvergenceDomain, 5),
    (errors.SzetaError, 6),
]


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    params = {k: str(v) for k, v in vars(args).items() if k not in ("func", "command", "input", "out", "plot") and v not in (None, False)}
    if getattr(args, "z", None):
        params["z"] = ";".join(_z_text(z) for z in args.z)
    cfg = RunConfig(args.command, args.input, args.out, params)
    try:
        return args.func(args, cfg)
    except errors.SzetaError as exc:
        code = next(c for cls, c in _EXIT if isinstance(exc, cls))
        print(f"szeta {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
