"""Weighted graphs and integral first-homology coordinates.

A closed walk is a sequence of steps ``(edge_index, sign)``.  Every edge has a
canonical direction, from the lower to the higher endpoint id; ``sign=+1``
traverses it that way and ``sign=-1`` against it.  A loop is a single step
whose sign only records the traversal sense.

Homology classes are integer vectors indexed by the cotree edges of a
deterministic spanning tree (minimum edge index first, weights ignored), so the
coordinates of a class never change when the weights do.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    BadVertexId,
    DisconnectedGraph,
    MismatchedEdgeSets,
    NonPositiveWeight,
    NotAWalk,
    NotClosed,
    ParseError,
)

Step = tuple[int, int]
Walk = Sequence[Step]


def as_fraction(x) -> Fraction:
    """Exact rational from int, Fraction, decimal/fraction string or float.

    Floats go through their shortest repr, so ``0.1`` becomes ``1/10``.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite value {x!r}")
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def lcm_of_denominators(values: Iterable[Fraction]) -> int:
    d = 1
    for v in values:
        d = math.lcm(d, Fraction(v).denominator)
    return d


@dataclass(frozen=True)
class WeightedGraph:
    vertex_count: int
    edges: tuple[tuple[int, int, Fraction], ...]

    def __post_init__(self):
        if self.vertex_count < 1:
            raise BadVertexId("a graph needs at least one vertex")
        for i, (u, v, w) in enumerate(self.edges):
            for x in (u, v):
                if not (0 <= x < self.vertex_count):
                    raise BadVertexId(f"edge {i}: vertex {x} not in [0, {self.vertex_count})")
            if w <= 0:
                raise NonPositiveWeight(f"edge {i}: weight {w} is not positive")
        parent = list(range(self.vertex_count))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for u, v, _ in self.edges:
            parent[find(u)] = find(v)
        roots = {find(a) for a in range(self.vertex_count)}
        if len(roots) > 1:
            raise DisconnectedGraph(f"graph has {len(roots)} connected components")

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def weights(self) -> tuple[Fraction, ...]:
        return tuple(w for _, _, w in self.edges)

    @property
    def betti(self) -> int:
        return self.n_edges - self.vertex_count + 1

    @property
    def total_weight(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    @property
    def is_combinatorial(self) -> bool:
        return all(w == 1 for w in self.weights)

    def tail(self, step: Step) -> int:
        u, v, _ = self.edges[step[0]]
        lo, hi = (u, v) if u <= v else (v, u)
        return lo if step[1] > 0 else hi

    def head(self, step: Step) -> int:
        u, v, _ = self.edges[step[0]]
        lo, hi = (u, v) if u <= v else (v, u)
        return hi if step[1] > 0 else lo

    def walk_length(self, walk: Walk) -> Fraction:
        return sum((self.edges[e][2] for e, _ in walk), Fraction(0))

    def with_weights(self, weights: Sequence) -> "WeightedGraph":
        if len(weights) != self.n_edges:
            raise MismatchedEdgeSets(f"expected {self.n_edges} weights, got {len(weights)}")
        return WeightedGraph(
            self.vertex_count,
            tuple((u, v, as_fraction(w)) for (u, v, _), w in zip(self.edges, weights)),
        )

    def scaled(self, factor) -> "WeightedGraph":
        factor = as_fraction(factor)
        return self.with_weights([w * factor for w in self.weights])


def build_graph(edge_list: Iterable, vertex_count: int | None = None) -> WeightedGraph:
    """Validated graph from ``(u, v, w)`` triples; edge order is preserved.

    ``vertex_count`` defaults to one more than the largest endpoint id.
    """
    edges = []
    for item in edge_list:
        try:
            u, v, w = item
        except (TypeError, ValueError):
            raise ParseError(f"expected (u, v, w), got {item!r}") from None
        if int(u) != u or int(v) != v:
            raise BadVertexId(f"vertex ids must be integers: {item!r}")
        edges.append((int(u), int(v), as_fraction(w)))
    if not edges:
        raise ParseError("edge list is empty")
    if vertex_count is None:
        lo = min(min(u, v) for u, v, _ in edges)
        if lo < 0:
            raise BadVertexId(f"negative vertex id {lo}")
        vertex_count = 1 + max(max(u, v) for u, v, _ in edges)
    return WeightedGraph(int(vertex_count), tuple(edges))


@dataclass(frozen=True)
class HomologyBasis:
    """Spanning tree plus ordered cotree edges of a graph.

    ``cotree_edges[j]`` is the edge dual to coordinate ``j`` of a class.
    """

    graph: WeightedGraph = field(repr=False)
    spanning_tree: frozenset[int]
    cotree_edges: tuple[int, ...]

    @property
    def betti(self) -> int:
        return len(self.cotree_edges)

    @cached_property
    def cotree_index(self) -> dict[int, int]:
        return {e: j for j, e in enumerate(self.cotree_edges)}

    @cached_property
    def _rooted(self):
        # BFS from vertex 0 over tree edges: parent vertex, parent edge, depth
        g = self.graph
        adj: list[list[tuple[int, int]]] = [[] for _ in range(g.vertex_count)]
        for e in sorted(self.spanning_tree):
            u, v, _ = g.edges[e]
            adj[u].append((v, e))
            adj[v].append((u, e))
        parent = [-1] * g.vertex_count
        pedge = [-1] * g.vertex_count
        depth = [0] * g.vertex_count
        seen = [False] * g.vertex_count
        seen[0] = True
        queue = [0]
        for a in queue:
            for b, e in adj[a]:
                if not seen[b]:
                    seen[b] = True
                    parent[b], pedge[b], depth[b] = a, e, depth[a] + 1
                    queue.append(b)
        return parent, pedge, depth

    def tree_path(self, a: int, b: int) -> list[Step]:
        """Steps of the unique tree path from vertex ``a`` to vertex ``b``."""
        parent, pedge, depth = self._rooted
        up, down = [], []
        while a != b:
            if depth[a] >= depth[b]:
                up.append(self._step(pedge[a], a))
                a = parent[a]
            else:
                down.append(self._step(pedge[b], parent[b]))
                b = parent[b]
        return up + down[::-1]

    def _step(self, e: int, start: int) -> Step:
        u, v, _ = self.graph.edges[e]
        return (e, 1 if start == min(u, v) else -1)

    def tree_distance(self, a: int, b: int) -> Fraction:
        return self.graph.walk_length(self.tree_path(a, b))

    def fundamental_cycle(self, j: int) -> list[Step]:
        """Closed walk realising the j-th unit class: cotree edge j, then back through the tree."""
        e = self.cotree_edges[j]
        step = (e, 1)
        return [step] + self.tree_path(self.graph.head(step), self.graph.tail(step))

    def fundamental_lengths(self) -> tuple[Fraction, ...]:
        return tuple(self.graph.walk_length(self.fundamental_cycle(j)) for j in range(self.betti))

    def class_walk(self, coords: Sequence[int], base: int = 0) -> list[Step]:
        """A closed walk based at ``base`` whose class is ``coords``."""
        walk: list[Step] = []
        for j, c in enumerate(coords):
            if c == 0:
                continue
            cyc = self.fundamental_cycle(j)
            start = self.graph.tail(cyc[0])
            loop = self.tree_path(base, start) + cyc + self.tree_path(start, base)
            if c < 0:
                loop = [(e, -s) for e, s in reversed(loop)]
            walk.extend(loop * abs(c))
        return walk


def homology_basis(g: WeightedGraph) -> HomologyBasis:
    """Minimum-edge-index spanning tree (Kruskal in index order) and its cotree."""
    parent = list(range(g.vertex_count))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    tree, cotree = [], []
    for i, (u, v, _) in enumerate(g.edges):
        ru, rv = find(u), find(v)
        if ru == rv:
            cotree.append(i)
        else:
            parent[ru] = rv
            tree.append(i)
    return HomologyBasis(g, frozenset(tree), tuple(cotree))


def check_walk(g: WeightedGraph, walk: Walk) -> None:
    if len(walk) == 0:
        raise NotAWalk("empty walk")
    for i, (e, s) in enumerate(walk):
        if not (0 <= e < g.n_edges) or s not in (1, -1):
            raise NotAWalk(f"step {i}: bad step {(e, s)!r}")
        if i and g.head(walk[i - 1]) != g.tail((e, s)):
            raise NotAWalk(f"step {i}: edge {e} does not start where step {i - 1} ended")
    if g.head(walk[-1]) != g.tail(walk[0]):
        raise NotClosed("walk does not return to its start")


def cycle_class(basis: HomologyBasis, walk: Walk) -> tuple[int, ...]:
    """Signed crossings of each cotree edge along a closed walk."""
    check_walk(basis.graph, walk)
    coords = [0] * basis.betti
    idx = basis.cotree_index
    for e, s in walk:
        j = idx.get(e)
        if j is not None:
            coords[j] += s
    return tuple(coords)


def _weights_of(x) -> tuple[Fraction, ...]:
    if isinstance(x, WeightedGraph):
        return x.weights
    return tuple(as_fraction(w) for w in x)


def weight_distance(w1, w2) -> float:
    """max over edges of |ln(w1(e)/w2(e))|.

    Arguments are graphs on the same edge set or plain weight sequences.
    """
    if isinstance(w1, WeightedGraph) and isinstance(w2, WeightedGraph):
        if [e[:2] for e in w1.edges] != [e[:2] for e in w2.edges]:
            raise MismatchedEdgeSets("graphs do not share an edge set")
    a, b = _weights_of(w1), _weights_of(w2)
    if len(a) != len(b):
        raise MismatchedEdgeSets(f"{len(a)} weights vs {len(b)}")
    if any(w <= 0 for w in a + b):
        raise NonPositiveWeight("weights must be positive")
    return max((abs(math.log(x / y)) for x, y in zip(a, b)), default=0.0)


# -- text format -----------------------------------------------------------

def parse_graph(text: str) -> WeightedGraph:
    """Parse the ``graph <n>`` / ``u v w`` line format."""
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2 or parts[0] != "graph":
                raise ParseError(f"line {lineno}: expected 'graph <vertex_count>'")
            try:
                header = int(parts[1])
            except ValueError:
                raise ParseError(f"line {lineno}: bad vertex count {parts[1]!r}") from None
            continue
        if len(parts) != 3:
            raise ParseError(f"line {lineno}: expected 'u v w'")
        try:
            u, v = int(parts[0]), int(parts[1])
            w = Fraction(parts[2])
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"line {lineno}: cannot parse {line!r}") from None
        edges.append((u, v, w))
    if header is None:
        raise ParseError("missing 'graph <vertex_count>' header")
    if not edges:
        raise ParseError("graph has no edges")
    return build_graph(edges, vertex_count=header)


def format_graph(g: WeightedGraph) -> str:
    lines = [f"graph {g.vertex_count}"]
    lines += [f"{u} {v} {w}" for u, v, w in g.edges]
    return "\n".join(lines) + "\n"


def load_graph(path) -> WeightedGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())
