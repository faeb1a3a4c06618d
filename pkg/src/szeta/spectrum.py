"""Homology length spectrum of a weighted graph.

Shortest closed walks in a class are shortest paths in the Z^b covering
graph, whose states are ``(vertex, accumulated class)``.  All lengths are
handled as integers after multiplying the weights by the lcm of their
denominators, so every comparison is exact.
"""

from __future__ import annotations

import csv
import heapq
import io
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from .errors import DegenerateBall, ParseError, ZeroClass
from .graph import HomologyBasis, WeightedGraph, lcm_of_denominators
from .linalg import generates_full_lattice
from .stable import StableBall, lattice_count, lattice_norms, stable_ball, stable_norm_lp


@dataclass(frozen=True)
class MarkedSpectrum:
    """Exact lengths l_theta of every nonzero class with l_theta <= radius."""

    entries: Mapping[tuple[int, ...], Fraction]
    radius: Fraction

    def __len__(self) -> int:
        return len(self.entries)

    def sorted_items(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Shells by increasing length, lexicographic inside a shell."""
        return sorted(self.entries.items(), key=lambda kv: (kv[1], kv[0]))

    def restrict(self, t) -> "MarkedSpectrum":
        t = Fraction(t)
        return MarkedSpectrum({c: l for c, l in self.entries.items() if l <= t}, t)


@dataclass(frozen=True)
class OrderedSpectrum:
    levels: tuple[tuple[Fraction, int], ...]

    def __iter__(self):
        return iter(self.levels)

    def __len__(self) -> int:
        return len(self.levels)


class _Cover:
    """Integer-weighted adjacency of the Z^b cover of a graph."""

    def __init__(self, basis: HomologyBasis):
        g = basis.graph
        self.basis = basis
        self.scale = lcm_of_denominators(g.weights)
        self.w = [int(w * self.scale) for w in g.weights]
        idx = basis.cotree_index
        self.adj: list[list[tuple[int, int, int, int]]] = [[] for _ in range(g.vertex_count)]
        for e, (u, v, _) in enumerate(g.edges):
            j = idx.get(e, -1)
            if u == v:
                self.adj[u].append((u, self.w[e], j, 1))
                self.adj[u].append((u, self.w[e], j, -1))
            else:
                lo, hi = min(u, v), max(u, v)
                self.adj[lo].append((hi, self.w[e], j, 1))
                self.adj[hi].append((lo, self.w[e], j, -1))

    @cached_property
    def bases(self) -> list[int]:
        """Vertices met by every closed walk of nonzero class: one end of each cotree edge."""
        g = self.basis.graph
        return sorted({min(g.edges[e][:2]) for e in self.basis.cotree_edges})

    def distances_to(self, target: int) -> list[int]:
        """Plain graph distances (scaled) from every vertex to ``target``."""
        n = len(self.adj)
        dist = [None] * n
        heap = [(0, target)]
        while heap:
            d, x = heapq.heappop(heap)
            if dist[x] is not None:
                continue
            dist[x] = d
            for y, w, _, _ in self.adj[x]:
                if dist[y] is None:
                    heapq.heappush(heap, (d + w, y))
        return dist

    def search(self, base: int, cutoff: int, target: tuple[int, ...] | None = None) -> dict:
        """Dijkstra over (vertex, class) from (base, 0).

        Returns the distances of states ``(base, c)`` with distance <= cutoff.
        States from which base cannot be reached again within the cutoff are
        pruned.  With ``target`` the search stops as soon as it is settled.
        """
        b = self.basis.betti
        back = self.distances_to(base)
        zero = (0,) * b
        settled: dict[tuple[int, tuple[int, ...]], int] = {}
        closed: dict[tuple[int, ...], int] = {}
        heap = [(0, base, zero)]
        while heap:
            d, x, c = heapq.heappop(heap)
            if (x, c) in settled:
                continue
            settled[(x, c)] = d
            if x == base:
                closed[c] = d
                if target is not None and c == target:
                    break
            for y, w, j, s in self.adj[x]:
                nd = d + w
                if nd + back[y] > cutoff:
                    continue
                if j >= 0:
                    nc = list(c)
                    nc[j] += s
                    nc = tuple(nc)
                else:
                    nc = c
                if (y, nc) not in settled:
                    heapq.heappush(heap, (nd, y, nc))
        closed.pop(zero, None)
        return closed


def shortest_in_class(g: WeightedGraph, basis: HomologyBasis, theta: Sequence[int]) -> Fraction:
    """Exact length of the shortest closed walk with class ``theta``.

    Every such walk crosses cotree edge j (theta_j != 0) and so passes its
    lower endpoint, which serves as base.  The search budget is the length of
    an explicit walk in the class (fundamental cycles joined through the
    base), so pruning by it never loses the optimum.
    """
    theta = tuple(int(x) for x in theta)
    if len(theta) != basis.betti or not any(theta):
        raise ZeroClass(f"class {theta} is zero or has the wrong length")
    cover = _Cover(basis)
    j = next(i for i, x in enumerate(theta) if x)
    base = min(g.edges[basis.cotree_edges[j]][:2])
    # an explicit walk in the class bounds the search
    budget = g.walk_length(basis.class_walk(theta, base)) * cover.scale
    found = cover.search(base, int(budget), target=theta)
    return Fraction(found[theta], cover.scale)


def enumerate_spectrum(g: WeightedGraph, basis: HomologyBasis, t) -> MarkedSpectrum:
    """All nonzero classes with l_theta <= t and their exact lengths."""
    t = Fraction(t)
    if basis.betti == 0:
        raise DegenerateBall("graph is a tree (first Betti number 0)")
    cover = _Cover(basis)
    cutoff = int(t * cover.scale) if t > 0 else -1
    best: dict[tuple[int, ...], int] = {}
    if cutoff >= 0:
        for base in cover.bases:
            for c, d in cover.search(base, cutoff).items():
                if c not in best or d < best[c]:
                    best[c] = d
    return MarkedSpectrum({c: Fraction(d, cover.scale) for c, d in best.items()}, t)


def ordered_spectrum(ms: MarkedSpectrum) -> OrderedSpectrum:
    counts: dict[Fraction, int] = defaultdict(int)
    for length in ms.entries.values():
        counts[length] += 1
    return OrderedSpectrum(tuple(sorted(counts.items())))


def counting_function(ball: StableBall, t) -> int:
    """Number of nonzero lattice points of stable norm <= t."""
    t = Fraction(t)
    if t < 0:
        return 0
    return lattice_count(ball, t) - 1


def tree_weight_bound(g: WeightedGraph) -> Fraction:
    """2 * weight of a minimum spanning tree: an upper bound for l_theta - ||theta||.

    Doubling tree edges joins the cycles of an integral circulation into one
    closed walk.
    """
    parent = list(range(g.vertex_count))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    total = Fraction(0)
    for e in sorted(range(g.n_edges), key=lambda i: (g.edges[i][2], i)):
        u, v, w = g.edges[e]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            total += w
    return 2 * total


def spectrum_with_norms(g: WeightedGraph, basis: HomologyBasis, R, ball: StableBall | None = None):
    """Pairs (l_theta, ||theta||) for every class of stable norm <= R."""
    R = Fraction(R)
    ball = ball or stable_ball(g, basis)
    pts, scaled = lattice_norms(ball, R)
    if len(pts) == 0:
        return {}
    ms = enumerate_spectrum(g, basis, R + tree_weight_bound(g))
    d = ball.normal_denominator
    out = {}
    for p, s in zip(pts.tolist(), scaled.tolist()):
        c = tuple(p)
        out[c] = (ms.entries[c], Fraction(s, d))
    return out


def burago_band(g: WeightedGraph, basis: HomologyBasis, R, ball: StableBall | None = None) -> Fraction:
    """max of l_theta - ||theta|| over nonzero classes with ||theta|| <= R (0 if none)."""
    pairs = spectrum_with_norms(g, basis, R, ball)
    return max((l - n for l, n in pairs.values()), default=Fraction(0))


def stable_limit_probe(g: WeightedGraph, basis: HomologyBasis, theta: Sequence[int], N: int) -> list[Fraction]:
    """[l_{n theta} / n for n = 1..N]."""
    theta = tuple(int(x) for x in theta)
    if not any(theta):
        raise ZeroClass("zero class")
    return [shortest_in_class(g, basis, tuple(n * x for x in theta)) / n for n in range(1, N + 1)]


def systole(g: WeightedGraph, basis: HomologyBasis) -> Fraction:
    if basis.betti == 0:
        raise DegenerateBall("graph is a tree (first Betti number 0)")
    ms = enumerate_spectrum(g, basis, min(basis.fundamental_lengths()))
    return min(ms.entries.values())


def min_basis_radius(g: WeightedGraph, basis: HomologyBasis) -> Fraction:
    """Least t such that the classes with l_theta <= t generate Z^b."""
    if basis.betti == 0:
        raise DegenerateBall("graph is a tree (first Betti number 0)")
    # the fundamental cycles give a basis, so their longest length is enough
    ms = enumerate_spectrum(g, basis, max(basis.fundamental_lengths()))
    gens: list[tuple[int, ...]] = []
    by_length = defaultdict(list)
    for c, l in ms.entries.items():
        by_length[l].append(c)
    for l in sorted(by_length):
        gens.extend(by_length[l])
        if generates_full_lattice(gens, basis.betti):
            return l
    raise AssertionError("fundamental cycles failed to generate the lattice")


# -- CSV ---------------------------------------------------------------------

def spectrum_rows(ms: MarkedSpectrum, g: WeightedGraph, basis: HomologyBasis):
    for c, l in ms.sorted_items():
        yield ";".join(str(x) for x in c), str(l), str(stable_norm_lp(g, basis, c))


def write_spectrum_csv(ms: MarkedSpectrum, g: WeightedGraph, basis: HomologyBasis, header: Sequence[str] = ()) -> str:
    buf = io.StringIO()
    for line in header:
        buf.write(f"# {line}\n")
    buf.write(f"# radius={ms.radius}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["class", "length", "stable_norm"])
    w.writerows(spectrum_rows(ms, g, basis))
    return buf.getvalue()


def parse_spectrum_csv(text: str) -> MarkedSpectrum:
    radius = None
    rows = []
    for line in text.splitlines():
        if line.startswith("#"):
            if line[1:].strip().startswith("radius="):
                radius = Fraction(line[1:].strip()[len("radius="):])
            continue
        if line.strip():
            rows.append(line)
    reader = csv.reader(rows)
    head = next(reader, None)
    if head != ["class", "length", "stable_norm"]:
        raise ParseError(f"unexpected spectrum header {head!r}")
    entries = {}
    for row in reader:
        try:
            cls = tuple(int(x) for x in row[0].split(";"))
            entries[cls] = Fraction(row[1])
        except (ValueError, IndexError):
            raise ParseError(f"bad spectrum row {row!r}") from None
    if radius is None:
        radius = max(entries.values(), default=Fraction(0))
    return MarkedSpectrum(entries, radius)


def write_ordered_csv(os_: OrderedSpectrum, header: Sequence[str] = ()) -> str:
    buf = io.StringIO()
    for line in header:
        buf.write(f"# {line}\n")
    for l, a in os_:
        buf.write(f"{l},{a}\n")
    return buf.getvalue()
