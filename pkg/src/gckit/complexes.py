"""Operadic insertion, the graph-complex bracket and differential, cocycles.

Graphs are combined into :class:`GraphSum` objects -- finite rational linear
combinations whose keys are canonical representatives.  The vertex-expansion
differential is the bracket with the single edge; its kernel in a fixed
(vertices, edges) bidegree is computed exactly over the rationals.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import gcd, lcm
from typing import Iterable, Iterator, Union

from .graphs import (
    GraphError,
    ParseError,
    UnorientedGraph,
    canonicalize,
    is_connected,
    new_graph,
    significant_lines,
)

__all__ = [
    "GraphSum",
    "EDGE_GRAPH",
    "insert",
    "bracket",
    "differential",
    "is_cocycle",
    "cocycle_kernel",
    "parse_graph_sum",
    "format_graph_sum",
]

Rational = Union[int, Fraction]


class GraphSum:
    """A finite rational linear combination of unoriented graphs.

    Terms are stored against canonical representatives; adding a graph first
    canonicalizes it, so zero graphs vanish and sign conventions are applied
    automatically.
    """

    __slots__ = ("_terms",)

    def __init__(
        self, terms: Iterable[tuple[UnorientedGraph, Rational]] = ()
    ) -> None:
        self._terms: dict[UnorientedGraph, Fraction] = {}
        for g, c in terms:
            self.add_graph(g, c)

    def add_graph(self, g: UnorientedGraph, coeff: Rational) -> None:
        """Accumulate ``coeff`` times ``g`` (canonicalized) into this sum."""
        coeff = Fraction(coeff)
        if coeff == 0:
            return
        sc = canonicalize(g)
        if sc.is_zero:
            return
        key = sc.canonical
        new = self._terms.get(key, Fraction(0)) + sc.sign * coeff
        if new == 0:
            self._terms.pop(key, None)
        else:
            self._terms[key] = new

    def items(self) -> list[tuple[UnorientedGraph, Fraction]]:
        """Terms sorted by canonical key, each a ``(graph, coefficient)`` pair."""
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    def coefficient(self, g: UnorientedGraph) -> Fraction:
        """Coefficient of ``g`` in this sum (after canonicalizing ``g``)."""
        sc = canonicalize(g)
        if sc.is_zero:
            return Fraction(0)
        return sc.sign * self._terms.get(sc.canonical, Fraction(0))

    def copy(self) -> "GraphSum":
        out = GraphSum()
        out._terms = dict(self._terms)
        return out

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[UnorientedGraph, Fraction]]:
        return iter(self.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GraphSum):
            return NotImplemented
        return self._terms == other._terms

    def __add__(self, other: "GraphSum") -> "GraphSum":
        out = self.copy()
        for g, c in other._terms.items():
            out.add_graph(g, c)
        return out

    def __sub__(self, other: "GraphSum") -> "GraphSum":
        return self + (-other)

    def __neg__(self) -> "GraphSum":
        return self * -1

    def __mul__(self, scalar: Rational) -> "GraphSum":
        scalar = Fraction(scalar)
        out = GraphSum()
        if scalar:
            out._terms = {g: c * scalar for g, c in self._terms.items()}
        return out

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"GraphSum({len(self._terms)} terms)"


EDGE_GRAPH = new_graph(2, [(1, 2)])


def _as_sum(x: Union[UnorientedGraph, GraphSum]) -> GraphSum:
    if isinstance(x, GraphSum):
        return x
    return GraphSum([(x, 1)])


def insert(g1: UnorientedGraph, g2: UnorientedGraph) -> GraphSum:
    """Sum over all ways of grafting ``g1`` into a vertex of ``g2``.

    For each vertex ``v`` of ``g2``, ``v`` is replaced by a copy of ``g1``
    (on labels ``1..n1``; the remaining vertices of ``g2`` keep their order
    on labels ``n1+1..``) and every edge end that was attached to ``v`` is
    reattached to a vertex of ``g1``, in all ``n1**deg(v)`` ways.  The edge
    order of each resulting graph is the edges of ``g1`` followed by the
    edges of ``g2``, reattached edges keeping their positions.
    """
    n1, n2 = g1.vertex_count, g2.vertex_count
    result = GraphSum()
    for v in range(1, n2 + 1):
        others = [w for w in range(1, n2 + 1) if w != v]
        label2 = {w: n1 + i + 1 for i, w in enumerate(others)}
        degree = sum(1 for a, b in g2.edges if v in (a, b))
        for attach in product(range(1, n1 + 1), repeat=degree):
            slot = 0
            tail: list[tuple[int, int]] = []
            for a, b in g2.edges:
                if a == v:
                    e = (attach[slot], label2[b])
                    slot += 1
                elif b == v:
                    e = (label2[a], attach[slot])
                    slot += 1
                else:
                    e = (label2[a], label2[b])
                tail.append((e[0], e[1]) if e[0] < e[1] else (e[1], e[0]))
            edges = list(g1.edges) + tail
            if len(set(edges)) != len(edges):
                continue
            result.add_graph(UnorientedGraph(n1 + n2 - 1, tuple(edges)), 1)
    return result


def bracket(
    x: Union[UnorientedGraph, GraphSum], y: Union[UnorientedGraph, GraphSum]
) -> GraphSum:
    """Graded commutator of insertions, extended bilinearly.

    On individual graphs this is ``insert(x, y) - (-1)**(e_x * e_y)
    insert(y, x)`` where ``e`` counts edges.
    """
    total = GraphSum()
    for g1, c1 in _as_sum(x).items():
        for g2, c2 in _as_sum(y).items():
            c = c1 * c2
            sign = -1 if (g1.edge_count * g2.edge_count) % 2 else 1
            for h, ch in insert(g1, g2).items():
                total.add_graph(h, c * ch)
            for h, ch in insert(g2, g1).items():
                total.add_graph(h, -sign * c * ch)
    return total


def differential(x: Union[UnorientedGraph, GraphSum]) -> GraphSum:
    """Vertex-expansion differential: the bracket with the single edge."""
    return bracket(EDGE_GRAPH, x)


def is_cocycle(x: Union[UnorientedGraph, GraphSum]) -> bool:
    """True when the differential of ``x`` vanishes identically."""
    return not differential(x)


def _nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of the right nullspace of a rational matrix (Gauss-Jordan)."""
    matrix = [row[:] for row in rows]
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        pivot = next(
            (i for i in range(rank, len(matrix)) if matrix[i][col] != 0), None
        )
        if pivot is None:
            continue
        matrix[rank], matrix[pivot] = matrix[pivot], matrix[rank]
        inv = matrix[rank][col]
        matrix[rank] = [x / inv for x in matrix[rank]]
        for i in range(len(matrix)):
            if i != rank and matrix[i][col] != 0:
                f = matrix[i][col]
                matrix[i] = [a - f * b for a, b in zip(matrix[i], matrix[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(matrix):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for ri, pc in enumerate(pivots):
            vec[pc] = -matrix[ri][fc]
        basis.append(vec)
    return basis


def _primitive(vec: list[Fraction]) -> list[Fraction]:
    """Scale a nonzero rational vector to coprime integers, first entry positive."""
    den = 1
    for x in vec:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    first = next(x for x in ints if x)
    if first < 0:
        ints = [-x for x in ints]
    return [Fraction(x) for x in ints]


def cocycle_kernel(vertex_count: int, edge_count: int) -> list[GraphSum]:
    """All cocycles built from connected graphs of the given bidegree.

    Enumerates every connected nonzero graph on ``vertex_count`` vertices
    with ``edge_count`` edges (one canonical representative each), assembles
    the differential as an exact rational matrix, and returns a basis of its
    kernel.  Each basis vector has coprime integer coefficients with the
    first nonzero coefficient positive.
    """
    pairs = list(combinations(range(1, vertex_count + 1), 2))
    if edge_count > len(pairs) or edge_count < 0:
        return []
    basis: list[UnorientedGraph] = []
    seen: set[UnorientedGraph] = set()
    for combo in combinations(pairs, edge_count):
        g = UnorientedGraph(vertex_count, combo)
        if not is_connected(g):
            continue
        sc = canonicalize(g)
        if sc.is_zero or sc.canonical in seen:
            continue
        seen.add(sc.canonical)
        basis.append(sc.canonical)
    basis.sort(key=lambda g: g.sort_key())

    target_index: dict[UnorientedGraph, int] = {}
    columns: list[dict[int, Fraction]] = []
    for g in basis:
        col: dict[int, Fraction] = {}
        for h, c in differential(g).items():
            col[target_index.setdefault(h, len(target_index))] = c
        columns.append(col)
    rows = [[Fraction(0)] * len(basis) for _ in range(len(target_index))]
    for j, col in enumerate(columns):
        for i, c in col.items():
            rows[i][j] = c

    kernel = []
    for vec in _nullspace(rows, len(basis)):
        combo_sum = GraphSum()
        for g, c in zip(basis, _primitive(vec)):
            combo_sum.add_graph(g, c)
        kernel.append(combo_sum)
    return kernel


def parse_graph_sum(text: str) -> GraphSum:
    """Parse a linear combination, one term per line::

        <rational> * g <vertices> <edges> : u1 v1, u2 v2, ...

    Blank lines and ``#`` comments are ignored; empty input is the zero sum.
    """
    total = GraphSum()
    for lineno, line in significant_lines(text):
        coeff_text, star, rest = line.partition("*")
        if not star:
            raise ParseError("expected '<coefficient> * g ...'", lineno)
        try:
            coeff = Fraction(coeff_text.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad coefficient {coeff_text.strip()!r}", lineno) from None
        head, colon, edge_part = rest.partition(":")
        fields = head.split()
        if len(fields) != 3 or fields[0] != "g" or not colon:
            raise ParseError("expected 'g <vertices> <edges> : ...'", lineno)
        try:
            n, m = int(fields[1]), int(fields[2])
        except ValueError:
            raise ParseError("vertex/edge counts must be integers", lineno) from None
        edges = []
        for chunk in edge_part.split(","):
            chunk = chunk.strip()
            if not chunk:
                continue
            uv = chunk.split()
            if len(uv) != 2:
                raise ParseError(f"bad edge {chunk!r}", lineno)
            try:
                edges.append((int(uv[0]), int(uv[1])))
            except ValueError:
                raise ParseError(f"bad edge {chunk!r}", lineno) from None
        if len(edges) != m:
            raise ParseError(f"expected {m} edges, found {len(edges)}", lineno)
        try:
            total.add_graph(new_graph(n, edges), coeff)
        except GraphError as exc:
            raise ParseError(str(exc), lineno) from exc
    return total


def format_graph_sum(s: GraphSum) -> str:
    """Render a sum in the format accepted by :func:`parse_graph_sum`.

    The zero sum renders as the empty string.
    """
    lines = []
    for g, c in s.items():
        edge_text = ", ".join(f"{u} {v}" for u, v in g.edges)
        lines.append(f"{c} * g {g.vertex_count} {g.edge_count} : {edge_text}")
    return "\n".join(lines)
