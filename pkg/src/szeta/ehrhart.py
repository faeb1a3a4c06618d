"""Ehrhart quasi-polynomials of stable balls and the Hurwitz coefficient table.

With ``L(n) = |nB cap Z^b|`` the counting function of a rational ball, the
shell sizes ``A_n = L(n) - L(n-1)`` are ``bV n^(b-1) + p(n)`` with ``p`` an
m-quasi-polynomial.  For an integer-valued norm this gives

    zeta_B(z) = bV zeta(z - b + 1) + sum_l m^(l - z) sum_k p_lk zeta(z - l; k/m).

Coefficient tables are indexed ``q[l][k - 1]`` for residue class ``k = 1..m``
(``k = m`` is the class of multiples of m).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import InconsistentFit, MeanZeroViolation, NotIntegerValued
from .polytope import StableBall
from .stable import lattice_count

Table = tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class QuasiPolynomial:
    """L(n) = V n^b + sum_l q_l(n) n^l with m-periodic q_l."""

    b: int
    m: int
    leading: Fraction
    coeffs: Table
    integer_valued: bool = False

    def residue(self, n: int) -> int:
        """Residue class in 1..m."""
        return (n - 1) % self.m + 1

    def __call__(self, n: int) -> Fraction:
        k = self.residue(n)
        return self.leading * Fraction(n) ** self.b + sum(
            (self.coeffs[l][k - 1] * Fraction(n) ** l for l in range(self.b)), Fraction(0)
        )

    def polynomial(self, k: int) -> list[Fraction]:
        """Coefficients [c_0, ..., c_b] of the constituent for residue class k."""
        return [self.coeffs[l][k - 1] for l in range(self.b)] + [self.leading]


@dataclass(frozen=True)
class ShellCounts:
    """A_n = bV n^(b-1) + p(n) with m-periodic p_l."""

    b: int
    m: int
    volume: Fraction
    coeffs: Table
    integer_valued: bool = False

    def __call__(self, n: int) -> Fraction:
        k = (n - 1) % self.m + 1
        return self.b * self.volume * Fraction(n) ** (self.b - 1) + sum(
            (self.coeffs[l][k - 1] * Fraction(n) ** l for l in range(self.b)), Fraction(0)
        )


@dataclass(frozen=True)
class HurwitzDecomposition:
    """Coefficients of the Riemann/Hurwitz expansion of a stable zeta function.

    ``scale`` is D when the table describes the ball B/D of an originally
    non-integer-valued norm; the zeta function then picks up a factor D^z.
    """

    b: int
    m: int
    volume: Fraction
    p: Table
    scale: int = 1


def dilate_counts(ball: StableBall, ns) -> dict[int, int]:
    return {n: lattice_count(ball, n) for n in ns}


def ehrhart_fit(ball: StableBall, pin_volume: bool = True) -> QuasiPolynomial:
    """Fit the Ehrhart quasi-polynomial of a rational ball from exact counts.

    The period m is the lcm of the vertex denominators.  With ``pin_volume``
    the leading coefficient is the exact ball volume and each residue class
    needs b dilates (n = 1..m*b); otherwise it is fitted per class from b+1
    dilates (n = 1..m*(b+1)) and must agree across classes and with the
    volume.  Either way the result is checked against exact counts on the
    held-out dilates up to n = m*(b+2) and at n = 0.
    """
    b, m = ball.dim, ball.vertex_denominator
    per_class = b if pin_volume else b + 1
    fit_ns = range(1, m * per_class + 1)
    check_ns = range(m * per_class + 1, m * (b + 2) + 1)
    counts = dilate_counts(ball, list(fit_ns) + list(check_ns))

    polys = []
    for k in range(1, m + 1):
        ns = [n for n in fit_ns if (n - 1) % m + 1 == k]
        if pin_volume:
            rows = [[Fraction(n) ** l for l in range(b)] for n in ns]
            rhs = [counts[n] - ball.volume * Fraction(n) ** b for n in ns]
        else:
            rows = [[Fraction(n) ** l for l in range(b + 1)] for n in ns]
            rhs = [counts[n] for n in ns]
        sol = linalg.solve(rows, rhs)
        if sol is None:
            raise InconsistentFit(f"singular fit system for residue class {k}")
        polys.append(sol)

    if pin_volume:
        leading = ball.volume
    else:
        leads = {p[b] for p in polys}
        if len(leads) != 1:
            raise InconsistentFit(f"leading coefficient differs across residue classes: {sorted(leads)}")
        leading = leads.pop()
        if leading != ball.volume:
            raise InconsistentFit(f"fitted leading coefficient {leading} != volume {ball.volume}")

    coeffs = tuple(tuple(polys[k][l] for k in range(m)) for l in range(b))
    qp = QuasiPolynomial(b, m, leading, coeffs, ball.integer_valued)
    for n in check_ns:
        if qp(n) != counts[n]:
            raise InconsistentFit(f"held-out dilate n={n}: fit gives {qp(n)}, count is {counts[n]}")
    if qp(0) != 1:
        raise InconsistentFit(f"constituent of multiples of m gives L(0) = {qp(0)}, expected 1")
    return qp


def _shift_down(coeffs: list[Fraction]) -> list[Fraction]:
    """Coefficients of P(n - 1) in powers of n, given those of P(n)."""
    out = [Fraction(0)] * len(coeffs)
    for j, c in enumerate(coeffs):
        if c:
            for i in range(j + 1):
                out[i] += c * math.comb(j, i) * (-1) ** (j - i)
    return out


def shell_counts(qp: QuasiPolynomial) -> ShellCounts:
    """p(n) = L(n) - L(n - 1) - bV n^(b-1), expanded per residue class."""
    b, m = qp.b, qp.m
    cols = []
    for k in range(1, m + 1):
        prev = (k - 2) % m + 1
        cur = qp.polynomial(k)
        before = _shift_down(qp.polynomial(prev))
        diff = [x - y for x, y in zip(cur, before)]
        if diff[b] != 0:
            raise InconsistentFit("leading terms do not cancel")
        diff[b - 1] -= b * qp.leading
        cols.append(diff[:b])
    coeffs = tuple(tuple(cols[k][l] for k in range(m)) for l in range(b))
    if sum(coeffs[b - 1]) != 0:
        raise MeanZeroViolation(f"top periodic coefficient sums to {sum(coeffs[b - 1])}, not 0")
    return ShellCounts(b, m, qp.leading, coeffs, qp.integer_valued)


def hurwitz_decomposition(sc: ShellCounts) -> HurwitzDecomposition:
    """p_lk = value of p_l on residue class k.

    Only meaningful when the norm is integer-valued on the lattice (every
    facet normal integral), which holds for combinatorial graphs.
    """
    if not sc.integer_valued:
        raise NotIntegerValued("the norm is not integer-valued on the lattice; the Hurwitz expansion does not apply")
    return HurwitzDecomposition(sc.b, sc.m, sc.volume, sc.coeffs)


def integerized_decomposition(ball: StableBall) -> HurwitzDecomposition:
    """Decomposition of any rational ball, through its integer-valued rescaling B/D.

    ||x||_B = ||x||_{B/D} / D, so zeta_B(z) = D^z zeta_{B/D}(z).
    """
    from .polytope import gl_transform

    d = ball.normal_denominator
    inner = ball if d == 1 else gl_transform(ball, [[Fraction(int(i == j), d) for j in range(ball.dim)] for i in range(ball.dim)])
    hd = hurwitz_decomposition(shell_counts(ehrhart_fit(inner)))
    return HurwitzDecomposition(hd.b, hd.m, hd.volume, hd.p, d)


def decomposition_for(ball: StableBall) -> HurwitzDecomposition:
    return hurwitz_decomposition(shell_counts(ehrhart_fit(ball)))


def format_table(qp: QuasiPolynomial, header=()) -> str:
    """Text table ``l k coeff``; rows with l = b carry the leading coefficient."""
    lines = [f"# {h}" for h in header]
    lines.append(f"# b={qp.b} m={qp.m}")
    lines.append("l k coeff")
    for l in range(qp.b + 1):
        for k in range(1, qp.m + 1):
            c = qp.leading if l == qp.b else qp.coeffs[l][k - 1]
            lines.append(f"{l} {k} {c}")
    return "\n".join(lines) + "\n"


def format_hurwitz(hd: HurwitzDecomposition, header=()) -> str:
    lines = [f"# {h}" for h in header]
    lines.append(f"# b={hd.b} m={hd.m} volume={hd.volume} scale={hd.scale}")
    lines.append("l k p_lk")
    for l in range(hd.b):
        for k in range(1, hd.m + 1):
            lines.append(f"{l} {k} {hd.p[l][k - 1]}")
    return "\n".join(lines) + "\n"
