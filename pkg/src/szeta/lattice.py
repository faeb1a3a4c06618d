"""Flat tori R^b / Lambda: short vectors, theta series, Epstein zeta, the Witt pair.

Enumeration is Fincke-Pohst: with Q(x) = sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2
from the Cholesky factor of the Gram matrix, coordinates are fixed from the
last to the first and each range is cut by the remaining budget.  For integer
Gram matrices the norm at a leaf is recomputed exactly in integers, so the
theta coefficients are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numba
import numpy as np

from . import linalg
from .errors import DimensionNotTwo, NonIntegerGram, NotPositiveDefinite, ParseError
from .zeta import ConvergenceDomain, Shells, TailBoundedValue

_SLACK = 1e-9
# integer norms above this are collected and sorted instead of tallied densely
_HISTOGRAM_LIMIT = 1 << 22


@dataclass(frozen=True, eq=False)
class Lattice:
    """Lattice with generators as the columns of ``basis``; gram = basis^T basis."""

    dim: int
    basis: np.ndarray
    gram: np.ndarray
    covolume: float
    exact_gram: tuple[tuple[Fraction, ...], ...] | None = None

    @cached_property
    def integer_gram(self) -> np.ndarray | None:
        if self.exact_gram is None or any(x.denominator != 1 for r in self.exact_gram for x in r):
            return None
        return np.array([[int(x) for x in r] for r in self.exact_gram], dtype=np.int64)

    @property
    def is_integral(self) -> bool:
        return self.integer_gram is not None

    @property
    def is_even(self) -> bool:
        g = self.integer_gram
        return g is not None and bool(np.all(np.diag(g) % 2 == 0))

    @cached_property
    def cholesky(self) -> tuple[np.ndarray, np.ndarray]:
        """(mu, d) with Q(x) = sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2."""
        r = self.basis if _is_upper(self.basis) else np.linalg.cholesky(self.gram).T
        d = np.diag(r) ** 2
        mu = np.triu(r / np.diag(r)[:, None], 1)
        return np.ascontiguousarray(mu), np.ascontiguousarray(d)

    @property
    def cell_radius(self) -> float:
        """Half the sum of the generator lengths: every point of a cell is this close to its lattice point."""
        return 0.5 * float(np.sqrt(np.diag(self.gram)).sum())

    def scaled(self, lam: float) -> "Lattice":
        exact = None
        if self.exact_gram is not None and isinstance(lam, (int, Fraction)):
            l2 = Fraction(lam) ** 2
            exact = tuple(tuple(x * l2 for x in r) for r in self.exact_gram)
        return Lattice(self.dim, self.basis * lam, self.gram * lam**2, self.covolume * abs(lam) ** self.dim, exact)

    def normalized(self) -> "Lattice":
        """Rescaled to covolume 1."""
        return self.scaled(self.covolume ** (-1.0 / self.dim))

    def dual(self) -> "Lattice":
        return lattice_from_gram(np.linalg.inv(self.gram))


def _is_upper(m: np.ndarray) -> bool:
    return bool(np.all(np.tril(m, -1) == 0) and np.all(np.diag(m) > 0))


def lattice_from_gram(gram) -> Lattice:
    """Lattice with the given symmetric positive-definite Gram matrix."""
    exact = None
    try:
        exact = tuple(tuple(Fraction(x) for x in row) for row in gram)
    except (TypeError, ValueError):
        pass
    if exact is not None and any(isinstance(x, float) for row in gram for x in row):
        # floats are kept exactly only when they are integers
        exact = exact if all(x.denominator == 1 for r in exact for x in r) else None
    g = np.array([[float(x) for x in row] for row in gram])
    b = g.shape[0]
    if g.shape != (b, b) or not np.allclose(g, g.T, rtol=0, atol=1e-12 * max(1.0, np.abs(g).max())):
        raise NotPositiveDefinite("Gram matrix is not square and symmetric")
    try:
        basis = np.linalg.cholesky(g).T
    except np.linalg.LinAlgError:
        raise NotPositiveDefinite("Gram matrix is not positive definite") from None
    if exact is not None:
        det = linalg.det(exact)
        if det <= 0:
            raise NotPositiveDefinite("Gram matrix is not positive definite")
        covol = math.sqrt(det)
    else:
        covol = float(np.prod(np.diag(basis)))
    return Lattice(b, basis, g, covol, exact)


def lattice_from_basis(basis) -> Lattice:
    """Lattice generated by the columns of ``basis``."""
    bm = np.array(basis, dtype=float)
    if bm.ndim != 2 or bm.shape[0] != bm.shape[1]:
        raise NotPositiveDefinite("basis must be square")
    g = bm.T @ bm
    exact = None
    if np.all(bm == np.round(bm)):
        bi = bm.astype(np.int64)
        exact = tuple(tuple(Fraction(int(x)) for x in r) for r in bi.T @ bi)
    covol = abs(float(np.linalg.det(bm)))
    if covol == 0:
        raise NotPositiveDefinite("basis is singular")
    return Lattice(bm.shape[0], bm, g, covol, exact)


def integer_lattice(dim: int) -> Lattice:
    return lattice_from_gram(np.eye(dim, dtype=np.int64).tolist())


def hexagonal_lattice() -> Lattice:
    return lattice_from_gram([[2, 1], [1, 2]])


# -- enumeration kernels -------------------------------------------------------------

@numba.njit(cache=True)
def _walk(mu, d, bound, gram_int, use_int, limit, collect, cap, out_x, out_n, counts):
    """Depth-first enumeration of x with Q(x) <= bound.

    With ``use_int`` norms are exact integers cut at ``limit`` and those
    below ``len(counts)`` are tallied; with ``collect`` stores up to ``cap``
    vectors and their norms.  Returns the
    number of vectors found (origin included).
    """
    b = d.shape[0]
    x = np.zeros(b, np.int64)
    hi = np.zeros(b, np.int64)
    part = np.zeros(b + 1)
    budget = bound * (1.0 + _SLACK) + _SLACK
    found = 0
    k = b - 1
    rad = math.sqrt(budget / d[k])
    x[k] = int(math.ceil(-rad))
    hi[k] = int(math.floor(rad))
    while True:
        if x[k] > hi[k]:
            k += 1
            if k == b:
                break
            x[k] += 1
            continue
        c = 0.0
        for j in range(k + 1, b):
            c += mu[k, j] * x[j]
        y = x[k] + c
        p = part[k + 1] + d[k] * y * y
        if k == 0:
            if use_int:
                s = 0
                for i in range(b):
                    t = 0
                    for j in range(b):
                        t += gram_int[i, j] * x[j]
                    s += t * x[i]
                if s <= limit:
                    if s < counts.shape[0]:
                        counts[s] += 1
                    if collect:
                        if found < cap:
                            out_x[found, :] = x
                            out_n[found] = s
                        found += 1
            elif p <= budget:
                if collect:
                    if found < cap:
                        out_x[found, :] = x
                        out_n[found] = p
                found += 1
            x[0] += 1
            continue
        part[k] = p
        k -= 1
        c = 0.0
        for j in range(k + 1, b):
            c += mu[k, j] * x[j]
        rem = budget - part[k + 1]
        if rem < 0.0:
            rem = 0.0
        rad = math.sqrt(rem / d[k])
        x[k] = int(math.ceil(-c - rad - _SLACK))
        hi[k] = int(math.floor(-c + rad + _SLACK))
    return found


def _run(lat: Lattice, bound: float, collect: bool, exact_limit: int | None, histogram: bool = True):
    mu, d = lat.cholesky
    gi = lat.integer_gram
    use_int = gi is not None and exact_limit is not None
    if gi is None:
        gi = np.zeros((lat.dim, lat.dim), np.int64)
    limit = exact_limit if use_int else 0
    counts = np.zeros((limit if histogram else 0) + 1, np.int64)
    cap = 1024 if collect else 0
    while True:
        out_x = np.zeros((cap, lat.dim), np.int64)
        out_n = np.zeros(cap)
        counts[:] = 0
        n = _walk(mu, d, float(bound), gi, use_int, limit, collect, cap, out_x, out_n, counts)
        if not collect or n <= cap:
            return out_x[:n], out_n[:n], counts
        cap = n


def enumerate_vectors(lat: Lattice, t: float) -> list[tuple[tuple[int, ...], float]]:
    """Nonzero lattice vectors of length <= t as (coefficients, squared length).

    Squared lengths are exact integers for integer Gram matrices.
    """
    if t <= 0:
        return []
    t2 = float(t) ** 2
    exact_limit = math.floor(t2 * (1 + 1e-12)) if lat.is_integral else None
    xs, ns, _ = _run(lat, t2, True, exact_limit, histogram=False)
    out = []
    for x, n in zip(xs.tolist(), ns.tolist()):
        if any(x):
            out.append((tuple(x), int(n) if lat.is_integral else float(n)))
    out.sort(key=lambda e: (e[1], e[0]))
    return out


def theta_coefficients(lat: Lattice, n_max: int) -> list[int]:
    """[r(1), ..., r(n_max)] with r(n) = #{v : <v, v> = n}; integer Gram only."""
    if not lat.is_integral:
        raise NonIntegerGram("theta coefficients need an integer Gram matrix")
    _, _, counts = _run(lat, float(n_max), False, int(n_max))
    return [int(c) for c in counts[1:]]


def norm_spectrum(lat: Lattice, bound: float | None, count: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Distinct nonzero squared lengths <= bound with multiplicities.

    With ``bound=None`` the bound grows until ``count`` distinct values are found.
    """
    if bound is None:
        bound = float(np.min(np.diag(lat.gram)))
        while True:
            n, c = norm_spectrum(lat, bound)
            if len(n) >= (count or 1):
                return n[:count], c[:count]
            bound *= 2
    if lat.is_integral and bound > _HISTOGRAM_LIMIT:
        _, ns, _ = _run(lat, bound, True, int(math.floor(bound)), histogram=False)
        n, c = np.unique(ns[ns > 0].astype(np.int64), return_counts=True)
        return n.astype(float), c.astype(np.int64)
    if lat.is_integral:
        r = theta_coefficients(lat, int(math.floor(bound)))
        n = np.array([i + 1 for i, v in enumerate(r) if v], dtype=float)
        c = np.array([v for v in r if v], dtype=np.int64)
        return n, c
    _, ns, _ = _run(lat, bound, True, None)
    ns = ns[ns > 1e-12 * max(1.0, bound)]
    # merge float norms that agree to rounding
    ns = np.sort(ns)
    if len(ns) == 0:
        return ns, np.zeros(0, np.int64)
    breaks = np.flatnonzero(np.diff(ns) > 1e-9 * np.maximum(1.0, ns[1:])) + 1
    groups = np.split(ns, breaks)
    return np.array([g[0] for g in groups]), np.array([len(g) for g in groups], dtype=np.int64)


# -- the Witt pair ---------------------------------------------------------------------

def dn_plus_basis(n: int) -> np.ndarray:
    """Rows 2e1, e2 - e1, ..., e_{n-1} - e_{n-2} and (1/2, ..., 1/2) generate D_n^+."""
    b = np.zeros((n, n))
    b[0, 0] = 2
    for i in range(1, n - 1):
        b[i, i - 1] = -1
        b[i, i] = 1
    b[n - 1, :] = 0.5
    return b


def dn_plus_gram(n: int) -> list[list[int]]:
    """Integer Gram matrix of D_n^+ (n divisible by 8 makes it even unimodular)."""
    if n % 8:
        raise ValueError("D_n^+ is an even lattice only for n divisible by 8")
    b = dn_plus_basis(n)
    return np.rint(b @ b.T).astype(np.int64).tolist()


def e8_gram() -> list[list[int]]:
    return dn_plus_gram(8)


def block_diagonal(*grams) -> list[list[int]]:
    size = sum(len(g) for g in grams)
    out = [[0] * size for _ in range(size)]
    at = 0
    for g in grams:
        for i, row in enumerate(g):
            out[at + i][at:at + len(g)] = list(row)
        at += len(g)
    return out


def witt_pair() -> tuple[Lattice, Lattice]:
    """(E8 + E8, D16^+): even unimodular, isospectral, not isometric."""
    return lattice_from_gram(block_diagonal(e8_gram(), e8_gram())), lattice_from_gram(dn_plus_gram(16))


def dn_plus_theta_by_coordinates(n: int, n_max: int) -> list[int]:
    """Theta coefficients of D_n^+ counted in coordinates, independent of any Gram matrix.

    D_n^+ = {x in Z^n : sum x even} union {x in (Z + 1/2)^n : sum x = n/2 mod 2}.
    A dynamic programme over coordinates tracks 4|x|^2 and the sum parity.
    """
    top = 4 * n_max
    # integer coordinates: a^2 and a mod 2
    whole = np.zeros((top + 1, 2), np.int64)
    whole[0, 0] = 1
    # half-integer coordinates x = (2a + 1)/2: (2a+1)^2 and (2a+1) mod 4
    half = np.zeros((top + 1, 4), np.int64)
    half[0, 0] = 1
    amax = math.isqrt(n_max) + 1
    for _ in range(n):
        nw = np.zeros_like(whole)
        for a in range(-amax, amax + 1):
            w = 4 * a * a
            if w <= top:
                nw[w:, :] += np.roll(whole[: top + 1 - w, :], a % 2, axis=1)
        whole = nw
        nh = np.zeros_like(half)
        for a in range(-amax - 1, amax + 1):
            odd = 2 * a + 1
            w = odd * odd
            if w <= top:
                nh[w:, :] += np.roll(half[: top + 1 - w, :], odd % 4, axis=1)
        half = nh
    # sum of half-integer coordinates = (sum of odd numbers)/2 must be = n/2 mod 2
    want = (n % 4) if n % 2 == 0 else None
    r = whole[:, 0].copy()
    if want is not None:
        r += half[:, want]
    out = []
    for k in range(1, n_max + 1):
        out.append(int(r[4 * k]))
    return out


def e8e8_theta_by_coordinates(n_max: int) -> list[int]:
    """Theta of E8 + E8 as the square of the coordinate-model theta series of E8."""
    e8 = [1] + dn_plus_theta_by_coordinates(8, n_max)
    return [sum(e8[i] * e8[k - i] for i in range(k + 1)) for k in range(1, n_max + 1)]


def root_components(lat: Lattice) -> list[int]:
    """Sizes of the connected components of the norm-2 vectors (joined when not orthogonal)."""
    roots = [np.array(x) for x, n in enumerate_vectors(lat, math.sqrt(2)) if n == 2]
    if not roots:
        return []
    g = lat.integer_gram
    r = np.array(roots)
    adj = (r @ g @ r.T) != 0
    seen = np.zeros(len(roots), bool)
    sizes = []
    for s in range(len(roots)):
        if seen[s]:
            continue
        stack = [s]
        seen[s] = True
        size = 0
        while stack:
            i = stack.pop()
            size += 1
            for j in np.flatnonzero(adj[i] & ~seen):
                seen[j] = True
                stack.append(j)
        sizes.append(size)
    return sorted(sizes)


def random_unimodular(dim: int, rng: np.random.Generator, count: int = 1, steps: int = 40) -> np.ndarray:
    """``count`` random integer matrices of determinant +-1, built from column operations."""
    u = np.broadcast_to(np.eye(dim, dtype=np.int64), (count, dim, dim)).copy()
    rows = np.arange(count)
    for _ in range(steps):
        i = rng.integers(0, dim, count)
        j = (i + rng.integers(1, dim, count)) % dim
        sign = rng.choice(np.array([-1, 1]), count)
        u[rows, :, i] += sign[:, None] * u[rows, :, j]
    perm = np.argsort(rng.random((count, dim)), axis=1)
    u = np.take_along_axis(u, perm[:, None, :], axis=2)
    return u * rng.choice(np.array([-1, 1]), (count, 1, dim))


def congruence_trials(g1, g2, trials: int = 10_000, seed: int = 0, batch: int = 1000) -> int:
    """Number of random unimodular U with U^T g1 U = g2 (a search, not a proof)."""
    g1 = np.asarray(g1, np.int64)
    g2 = np.asarray(g2, np.int64)
    rng = np.random.default_rng(seed)
    hits = 0
    done = 0
    while done < trials:
        n = min(batch, trials - done)
        u = random_unimodular(len(g1), rng, n)
        images = np.einsum("kji,jl,klm->kim", u, g1, u)
        hits += int(np.all(images == g2, axis=(1, 2)).sum())
        done += n
    return hits


# -- zeta functions -------------------------------------------------------------------

def unit_ball_volume(b: int) -> float:
    return math.pi ** (b / 2) / math.gamma(b / 2 + 1)


def epstein_shells(lat: Lattice, t: float) -> Shells:
    n, c = norm_spectrum(lat, float(t) ** 2 * (1 + 1e-12))
    return Shells(np.sqrt(n), c, float(t), lat.dim, unit_ball_volume(lat.dim) / lat.covolume, lat.cell_radius)


def epstein_zeta_truncated(lat: Lattice, z, t: float) -> TailBoundedValue:
    """sum over 0 < |v| <= t of |v|^-z with the tail bound of the counting estimate."""
    if complex(z).real <= lat.dim:
        raise ConvergenceDomain(f"Re z must exceed {lat.dim}")
    return epstein_shells(lat, t).evaluate(z)


def torus_residue(lat: Lattice) -> float:
    """Residue at z = b of the Epstein zeta function: b * omega_b / covolume."""
    return lat.dim * unit_ball_volume(lat.dim) / lat.covolume


def torus_isoperimetric_check(lat: Lattice) -> tuple[float, float, bool]:
    """Compare 2 * v_2 * |deg| = 6 with residue * area for the normalised 2-torus.

    v_2 = 3 is the least area of a unit ball of a norm on R^2 relative to the
    lattice (attained by affine regular hexagons); the degree of the
    identity map is 1.
    """
    if lat.dim != 2:
        raise DimensionNotTwo(f"lattice has dimension {lat.dim}")
    norm = lat.normalized()
    lhs = 2 * 3 * 1
    rhs = torus_residue(norm) * norm.covolume
    return float(lhs), rhs, lhs <= rhs


# -- files -------------------------------------------------------------------------------

def parse_lattice(text: str) -> Lattice:
    """``lattice <b>`` header then b rows of b rational or decimal Gram entries."""
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or rows[0][0] != "lattice" or len(rows[0]) != 2:
        raise ParseError("expected header 'lattice <b>'")
    try:
        b = int(rows[0][1])
        gram = [[Fraction(x) for x in r] for r in rows[1:]]
    except (ValueError, ZeroDivisionError):
        raise ParseError("non-numeric lattice entry") from None
    if b < 1 or len(gram) != b or any(len(r) != b for r in gram):
        raise ParseError(f"expected {b} rows of {b} entries")
    if any(gram[i][j] != gram[j][i] for i in range(b) for j in range(b)):
        raise NotPositiveDefinite("Gram matrix is not symmetric")
    return lattice_from_gram(gram)


def format_lattice(lat: Lattice) -> str:
    if lat.exact_gram is not None:
        rows = [" ".join(str(x) for x in r) for r in lat.exact_gram]
    else:
        rows = [" ".join(repr(float(x)) for x in r) for r in lat.gram]
    return f"lattice {lat.dim}\n" + "\n".join(rows) + "\n"


def format_theta(coeffs: Sequence[int], header: Sequence[str] = ()) -> str:
    lines = [f"# {h}" for h in header] + ["n,r_n"]
    lines += [f"{n},{r}" for n, r in enumerate(coeffs, 1)]
    return "\n".join(lines) + "\n"
