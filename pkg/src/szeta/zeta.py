"""Special functions and zeta functions of norms on Z^b.

Hurwitz and Riemann zeta use Euler-Maclaurin summation (30 explicit terms,
12 Bernoulli corrections, more explicit terms for large |z|).  Left of
Re z = -1 the explicit terms cancel catastrophically in double precision, so
there Hurwitz's formula for rational parameters maps the value back to
Re z > 2.

A truncated Dirichlet series carries a rigorous tail bound.  If the counting
function satisfies ``A(s) <= V (s + r)^b`` for s > t, partial summation gives

    sum_{l > t} l^-sigma <= sigma V (1 + r/t)^b t^(b - sigma) / (sigma - b) - A(t) t^-sigma

with A(t) the exact number of terms kept.  For a polyhedral norm r is the
largest norm of a point of [-1/2, 1/2]^b (cells around lattice points of tB
lie in (t + r)B); for a Euclidean lattice it is half the sum of the basis
lengths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple, Sequence

import numpy as np
from scipy import special

from .errors import (
    ConvergenceDomain,
    DivergentExtrapolation,
    NearPole,
    NonPositiveQ,
    PoleAtNonPositiveInteger,
    PoleAtOne,
    SpectrumPoint,
    TruncationTooSmall,
)

EM_TERMS = 30
EM_ORDER = 12
# B_2k / (2k)! for k = 1..EM_ORDER
_BERN = special.bernoulli(2 * EM_ORDER)[2::2] / special.factorial(np.arange(2, 2 * EM_ORDER + 1, 2))
_REFLECT_BELOW = -1.0
_MAX_DENOMINATOR = 10_000


@dataclass(frozen=True)
class TailBoundedValue:
    value: complex
    tail: float

    def contains(self, exact: complex, slack: float = 1e-12) -> bool:
        """Is ``exact`` within the tail bound (plus float slack) of the value?"""
        return abs(self.value - exact) <= self.tail + slack * max(1.0, abs(exact))


def complex_gamma(z) -> complex:
    z = complex(z)
    if z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real):
        raise PoleAtNonPositiveInteger(f"Gamma has a pole at {z.real:g}")
    return complex(special.gamma(z))


def _em_terms_needed(s: np.ndarray) -> int:
    # the remainder behaves like prod |s + j| / (2 pi a)^(2M+1); a >= |s| + 2M keeps it tiny
    return max(EM_TERMS, int(np.max(np.abs(s), initial=0.0)) + 2 * EM_ORDER)


def _em_hurwitz(s: np.ndarray, q: float) -> np.ndarray:
    """Euler-Maclaurin for zeta(s, q), s an array with s != 1."""
    n = _em_terms_needed(s)
    logs = np.log(q + np.arange(n))
    direct = np.exp(-np.outer(s, logs)).sum(axis=1)
    a = q + n
    la = math.log(a)
    out = direct + np.exp((1 - s) * la) / (s - 1) + 0.5 * np.exp(-s * la)
    rising = s.copy()  # (s)_{2k-1}
    power = np.exp(-(s + 1) * la)  # a^(-s-2k+1)
    for k in range(EM_ORDER):
        out = out + _BERN[k] * rising * power
        rising = rising * (s + 2 * k + 1) * (s + 2 * k + 2)
        power = power / (a * a)
    return out


def _rational(q) -> Fraction | None:
    if isinstance(q, Fraction):
        return q
    f = Fraction(q).limit_denominator(_MAX_DENOMINATOR)
    return f if float(f) == float(q) else None


def _hurwitz_reflected(u: np.ndarray, q: Fraction) -> np.ndarray:
    """zeta(u, q) for Re u < -1 and rational q, via Hurwitz's formula at s = 1 - u."""
    whole = math.ceil(q) - 1
    q0 = q - whole  # in (0, 1]
    k, m = q0.numerator, q0.denominator
    s = 1 - u
    pref = 2 * special.gamma(s) * np.exp(-s * math.log(2 * math.pi * m))
    total = np.zeros_like(s)
    for j in range(1, m + 1):
        total = total + np.cos(np.pi * s / 2 - 2 * math.pi * j * k / m) * _em_hurwitz(s, j / m)
    out = pref * total
    for n in range(whole):
        out = out - np.exp(-u * math.log(float(q0) + n))
    return out


def hurwitz_zeta_array(z, q) -> np.ndarray:
    """Vectorised zeta(z; q) = sum_{n>=0} (q + n)^-z over an array of z."""
    s = np.atleast_1d(np.asarray(z, dtype=complex))
    if q <= 0:
        raise NonPositiveQ(f"q must be positive, got {q}")
    if np.any(s == 1):
        raise PoleAtOne("zeta(z; q) has a pole at z = 1")
    out = np.empty_like(s)
    left = s.real < _REFLECT_BELOW
    if np.any(~left):
        out[~left] = _em_hurwitz(s[~left], float(q))
    if np.any(left):
        qr = _rational(q)
        if qr is None:
            raise ConvergenceDomain("Re z < -1 needs a rational q with small denominator")
        out[left] = _hurwitz_reflected(s[left], qr)
    return out


def hurwitz_zeta(z, q) -> complex:
    return complex(hurwitz_zeta_array(z, q)[0])


def riemann_zeta(z) -> complex:
    return hurwitz_zeta(z, 1)


def riemann_zeta_array(z) -> np.ndarray:
    return hurwitz_zeta_array(z, 1)


# -- truncated Dirichlet series -------------------------------------------------

@dataclass(frozen=True)
class Shells:
    """Distinct term lengths (increasing) with multiplicities, cut at ``radius``.

    ``volume`` and ``cell_radius`` feed the tail bound ``A(s) <= V (s + r)^b``.
    """

    lengths: np.ndarray
    counts: np.ndarray
    radius: float
    dim: int
    volume: float
    cell_radius: float

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def partial_sum(self, z) -> complex:
        """sum of count * length^-z, shells by increasing length, compensated."""
        if len(self.lengths) == 0:
            return 0j
        z = complex(z)
        terms = self.counts * np.exp(-z * np.log(self.lengths))
        return complex(math.fsum(terms.real), math.fsum(terms.imag))

    def tail(self, z) -> float:
        sigma = complex(z).real
        b, t = self.dim, self.radius
        if sigma <= b:
            raise ConvergenceDomain(f"Re z = {sigma} <= {b}: the series diverges")
        if t <= 0:
            return math.inf
        bound = sigma * self.volume * (1 + self.cell_radius / t) ** b * t ** (b - sigma) / (sigma - b)
        return max(0.0, bound - self.total * t ** (-sigma))

    def evaluate(self, z) -> TailBoundedValue:
        tail = self.tail(z)
        return TailBoundedValue(self.partial_sum(z), tail)

    def counting(self, s) -> np.ndarray:
        """A(s) = number of terms of length <= s."""
        cum = np.concatenate([[0], np.cumsum(self.counts)])
        return cum[np.searchsorted(self.lengths, s, side="right")]

    def fit_growth(self, lo: float = 0.0) -> dict[int, float]:
        """Continuous least-squares fit of A(s) by s^b and s^(b-1) on [lo*t, t].

        Returns ``{power: coefficient}``.  A is a step function, so the
        moments int A(s) s^j ds are summed exactly interval by interval;
        sampling A on a grid aliases with the lattice period and biases V.
        The sawtooth part of A leaves a relative bias of order t^-2 in V;
        more powers or a shorter window make it worse.
        """
        t, b = self.radius, self.dim
        a0 = lo * t
        inside = self.lengths[(self.lengths > a0) & (self.lengths <= t)]
        edges = np.concatenate([[a0], inside, [t]])
        heights = self.counting(edges[:-1]).astype(float)
        # work in u = s / t to keep the normal equations well scaled
        u = edges / t
        powers = [j for j in (b, b - 1) if j >= 0]

        def moment(j):
            return float(np.sum(heights * (u[1:] ** (j + 1) - u[:-1] ** (j + 1)) / (j + 1)))

        def gram(i, j):
            return (1 - lo ** (i + j + 1)) / (i + j + 1)

        m = np.array([[gram(i, j) for j in powers] for i in powers])
        rhs = np.array([moment(j) for j in powers])
        coef = np.linalg.solve(m, rhs)
        return {j: float(c) / t**j for j, c in zip(powers, coef)}

    def completed(self) -> Callable[[complex], complex]:
        """Partial sum plus the tail of the fitted counting function.

        Its residue at z = b is b times the fitted growth constant, so it
        measures the volume from the counting data alone.
        """
        fit = self.fit_growth()
        t = self.radius
        jump = sum(c * t**j for j, c in fit.items()) - self.total

        def f(z):
            z = complex(z)
            tail = jump * t ** (-z)
            for j, c in fit.items():
                if j > 0:
                    tail += j * c * t ** (j - z) / (z - j)
            return self.partial_sum(z) + tail

        return f


def shells_from_scaled(scaled: np.ndarray, denominator: int, radius, dim: int, volume, cell_radius) -> Shells:
    vals, counts = np.unique(np.asarray(scaled, dtype=np.int64), return_counts=True)
    return Shells(vals / denominator, counts, float(radius), dim, float(volume), float(cell_radius))


def stable_shells(ball, t) -> Shells:
    from .stable import lattice_norms

    _, scaled = lattice_norms(ball, t)
    return shells_from_scaled(scaled, ball.normal_denominator, t, ball.dim, ball.volume, ball.cube_radius)


def systolic_shells(spectrum, ball) -> Shells:
    """Shells of a marked spectrum; l_theta >= ||theta|| gives the same counting bound."""
    from collections import Counter

    c = Counter(spectrum.entries.values())
    lengths = sorted(c)
    return Shells(
        np.array([float(x) for x in lengths]),
        np.array([c[x] for x in lengths], dtype=np.int64),
        float(spectrum.radius),
        ball.dim,
        float(ball.volume),
        float(ball.cube_radius),
    )


def zeta_st_truncated(ball, z, t) -> TailBoundedValue:
    """sum over nonzero classes with ||theta|| <= t of ||theta||^-z, with tail bound."""
    shells = stable_shells(ball, t)
    shells.tail(z)  # domain check before the work
    return shells.evaluate(z)


def zeta_sys_truncated(spectrum, ball, z) -> TailBoundedValue:
    """sum over the marked spectrum of l_theta^-z, with tail bound."""
    if complex(z).real <= ball.dim:
        raise ConvergenceDomain(f"Re z must exceed {ball.dim}")
    return systolic_shells(spectrum, ball).evaluate(z)


# -- meromorphic continuation ----------------------------------------------------

def zeta_st_meromorphic_array(hd, z) -> np.ndarray:
    """Riemann/Hurwitz expansion of the stable zeta function, vectorised over z."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    b, m = hd.b, hd.m
    for j in range(1, b + 1):
        if np.any(np.abs(z - j) <= 1e-9):
            raise NearPole(f"z is within 1e-9 of the pole at {j}")
    out = float(b * hd.volume) * riemann_zeta_array(z - b + 1)
    for l in range(b):
        row = hd.p[l]
        if not any(row):
            continue
        inner = np.zeros_like(z)
        for k in range(1, m + 1):
            if row[k - 1]:
                inner = inner + float(row[k - 1]) * hurwitz_zeta_array(z - l, Fraction(k, m))
        out = out + np.exp((l - z) * math.log(m)) * inner
    if hd.scale != 1:
        out = out * np.exp(z * math.log(hd.scale))
    return out


def zeta_st_meromorphic(hd, z) -> complex:
    return complex(zeta_st_meromorphic_array(hd, z)[0])


class ResidueEstimate(NamedTuple):
    value: float
    error: float


def residue_numeric(evaluator: Callable, pole: float, ks: Sequence[int] = range(3, 11)) -> ResidueEstimate:
    """Limit of (z - pole) f(z) by Richardson extrapolation along z = pole + 2^-k.

    Neville's scheme extrapolates the samples to 0 as a polynomial in the
    offset; the error estimate is the change made by the last sample.
    """
    eps = [2.0**-k for k in ks]
    vals = []
    for e in eps:
        v = evaluator(pole + e)
        v = getattr(v, "value", v)
        vals.append(e * complex(v).real)
    if not all(math.isfinite(v) for v in vals):
        raise DivergentExtrapolation("evaluator returned non-finite values")
    n = len(eps)
    table = list(vals)
    before_last = table[1] if n > 1 else table[0]
    for j in range(1, n):
        # table[i] now interpolates samples i..i+j at offset 0
        for i in range(n - j):
            table[i] = (eps[i] * table[i + 1] - eps[i + j] * table[i]) / (eps[i] - eps[i + j])
        if j == n - 2:
            before_last = table[1]
    best = table[0]
    err = abs(best - before_last)
    if not math.isfinite(best) or err > 0.1 * max(1.0, abs(best)):
        raise DivergentExtrapolation(f"extrapolation unstable: {best} +- {err}")
    return ResidueEstimate(best, err)


# -- Perron inversion ----------------------------------------------------------------

def _vectorised(f: Callable) -> Callable[[np.ndarray], np.ndarray]:
    def g(z: np.ndarray) -> np.ndarray:
        try:
            out = np.asarray(f(z), dtype=complex)
            if out.shape == z.shape:
                return out
        except (TypeError, ValueError):
            pass
        return np.array([complex(f(complex(w))) for w in z])

    return g


def perron_integral(f: Callable, x: float, c: float, height: float, step: float) -> float:
    """(1/2 pi i) int_{c-iT}^{c+iT} f(z) x^z dz / z by the trapezoid rule on [0, T].

    Real Dirichlet coefficients make the integrand conjugate-symmetric, so
    the integral is (1/pi) times the real part over the upper half.
    """
    n = max(2, int(math.ceil(height / step)))
    y = np.linspace(0.0, height, n + 1)
    z = c + 1j * y
    vals = (_vectorised(f)(z) * np.exp(z * math.log(x)) / z).real
    h = height / n
    return float(h * (math.fsum(vals) - 0.5 * (vals[0] + vals[-1])) / math.pi)


def perron_count(
    f: Callable,
    x: float,
    c: float,
    height: float = 200.0,
    step: float = 0.05,
    log_scale: bool = False,
    jumps: Sequence[float] | None = None,
    check: bool = True,
) -> float:
    """Approximate number of terms of length <= x from values of the series.

    With ``log_scale`` the threshold is e^x (the exponent read as a log length).
    ``jumps`` lists lengths where the staircase is discontinuous; x on one of
    them raises SpectrumPoint.  With ``check`` the integral is recomputed at
    three quarters of the height and TruncationTooSmall is raised when the
    two disagree on the nearest integer.
    """
    if log_scale:
        x = math.exp(x)
    if x <= 0:
        raise ValueError("x must be positive")
    if jumps is not None and any(abs(x - j) <= 1e-12 * max(1.0, j) for j in jumps):
        raise SpectrumPoint(f"x = {x} is a point of the length spectrum")
    full = perron_integral(f, x, c, height, step)
    if check:
        short = perron_integral(f, x, c, 0.75 * height, step)
        if round(full) != round(short):
            raise TruncationTooSmall(
                f"integral at height {height} gives {full:.3f}, at {0.75 * height} gives {short:.3f}"
            )
    return full


def integer_jumps(scale: int, upto: float) -> list[float]:
    """Candidate jump points n/scale of an integer-valued (after scaling) norm."""
    return [n / scale for n in range(1, int(upto * scale) + 2)]


# -- Mellin transform of the theta function ---------------------------------------

def mellin_theta_check(lat, z, rel_tol: float = 1e-12) -> complex:
    """(1/Gamma(z/2)) int_0^inf x^(z/2 - 1) (Theta(x) - 1) dx for a flat torus.

    Theta(x) = sum_v exp(-|v|^2 x).  Large x uses the direct sum; small x the
    Poisson-dual sum ``covol^-1 (pi/x)^(b/2) sum_w exp(-pi^2 |w|^2 / x)``.  Below
    the point where the dual terms vanish in double precision the integral of
    the leading term is done in closed form.
    """
    from scipy.integrate import quad

    from .lattice import norm_spectrum

    z = complex(z)
    b = lat.dim
    if z.real <= b:
        raise ConvergenceDomain(f"Re z must exceed {b}")
    cutoff = 40.0
    mu = norm_spectrum(lat, None, count=1)[0][0]
    dual = lat.dual()
    mu_dual = norm_spectrum(dual, None, count=1)[0][0]
    covol = lat.covolume
    x_split = math.pi / covol ** (2 / b)
    x_lo = math.pi**2 * mu_dual / cutoff
    x_hi = (cutoff + abs(z) * 2) / mu
    direct_n, direct_c = norm_spectrum(lat, cutoff / x_split)
    dual_n, dual_c = norm_spectrum(dual, cutoff * x_split / math.pi**2)

    def theta_minus_one(x: float) -> float:
        if x >= x_split:
            return float(np.dot(direct_c, np.exp(-direct_n * x)))
        lead = (math.pi / x) ** (b / 2) / covol
        return lead * (1.0 + float(np.dot(dual_c, np.exp(-math.pi**2 * dual_n / x)))) - 1.0

    def part(u: float, comp) -> float:
        x = math.exp(u)
        w = np.exp(z * u / 2) * theta_minus_one(x)
        return comp(w)

    total = 0j
    lo, hi = math.log(x_lo), math.log(x_hi)
    if lo < hi:
        pieces = np.linspace(lo, hi, 9)
        for a, bnd in zip(pieces[:-1], pieces[1:]):
            re, _ = quad(part, a, bnd, args=(lambda w: w.real,), epsabs=0, epsrel=rel_tol, limit=200)
            im, _ = quad(part, a, bnd, args=(lambda w: w.imag,), epsabs=0, epsrel=rel_tol, limit=200)
            total += complex(re, im)
    # below x_lo: Theta - 1 = covol^-1 (pi/x)^(b/2) - 1 up to negligible dual terms
    total += math.pi ** (b / 2) / covol * x_lo ** ((z - b) / 2) / ((z - b) / 2) - x_lo ** (z / 2) / (z / 2)
    return total / complex(special.gamma(z / 2))


# -- reports -----------------------------------------------------------------------

def format_evaluations(rows, header: Sequence[str] = ()) -> str:
    """CSV with columns re_z, im_z, re_val, im_val, tail (tail empty when exact)."""
    lines = [f"# {h}" for h in header]
    lines.append("re_z,im_z,re_val,im_val,tail")
    for z, val, tail in rows:
        z, val = complex(z), complex(val)
        t = "" if tail is None else repr(float(tail))
        lines.append(f"{z.real!r},{z.imag!r},{val.real!r},{val.imag!r},{t}")
    return "\n".join(lines) + "\n"
