"""Wedge-ordered unoriented graphs with sign tracking.

An :class:`UnorientedGraph` is a finite simple graph whose edge list carries
a significant order: permuting the edges multiplies the graph by the parity
of the permutation.  :func:`canonicalize` picks the lexicographically
smallest sorted-edge-list encoding over all vertex relabelings, reports the
parity sign connecting the input presentation to that encoding, and flags
*zero graphs* -- graphs equal to minus themselves because some automorphism
permutes their edges oddly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Edge",
    "GraphError",
    "ParseError",
    "UnorientedGraph",
    "SignedCanonicalGraph",
    "new_graph",
    "inversion_count",
    "edge_permutation_sign",
    "canonicalize",
    "automorphisms",
    "is_connected",
    "parse_graph",
    "format_graph",
    "significant_lines",
]

Edge = tuple[int, int]


class GraphError(ValueError):
    """A graph violates the simple-graph contract."""


class ParseError(ValueError):
    """A text encoding is malformed."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class UnorientedGraph:
    """A simple graph on vertices ``1..vertex_count`` with an ordered edge list.

    Each edge is stored with its endpoints sorted; the position of an edge in
    ``edges`` is the meaningful datum.
    """

    vertex_count: int
    edges: tuple[Edge, ...]

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degrees(self) -> tuple[int, ...]:
        degs = [0] * (self.vertex_count + 1)
        for u, v in self.edges:
            degs[u] += 1
            degs[v] += 1
        return tuple(degs[1:])

    def sort_key(self) -> tuple:
        return (self.vertex_count, self.edges)

    def __repr__(self) -> str:
        pairs = ", ".join(f"{u}-{v}" for u, v in self.edges)
        return f"UnorientedGraph({self.vertex_count}; {pairs})"


@dataclass(frozen=True)
class SignedCanonicalGraph:
    """Canonical representative, the sign linking a presentation to it, and
    whether the graph is a zero graph (in which case the sign is moot)."""

    canonical: UnorientedGraph
    sign: int
    is_zero: bool


def new_graph(vertex_count: int, edges: Iterable[Sequence[int]]) -> UnorientedGraph:
    """Build a graph, validating the simple-graph invariants.

    Raises :class:`GraphError` for out-of-range labels, loop edges, and
    repeated unordered pairs (``parallel edge``).
    """
    if vertex_count < 1:
        raise GraphError(f"vertex count must be positive, got {vertex_count}")
    seen: set[Edge] = set()
    normalized: list[Edge] = []
    for pair in edges:
        u, v = pair
        if not (1 <= u <= vertex_count and 1 <= v <= vertex_count):
            raise GraphError(f"edge ({u}, {v}) out of range 1..{vertex_count}")
        if u == v:
            raise GraphError(f"loop edge at vertex {u}")
        e = (u, v) if u < v else (v, u)
        if e in seen:
            raise GraphError(f"parallel edge ({e[0]}, {e[1]})")
        seen.add(e)
        normalized.append(e)
    return UnorientedGraph(vertex_count, tuple(normalized))


def inversion_count(seq: Sequence) -> int:
    """Number of out-of-order pairs in ``seq``.

    This is the number of adjacent transpositions needed to sort the
    sequence; its parity is the permutation parity.
    """
    count = 0
    n = len(seq)
    for i in range(n):
        si = seq[i]
        for j in range(i + 1, n):
            if si > seq[j]:
                count += 1
    return count


def edge_permutation_sign(perm: Sequence) -> int:
    """Parity sign of a permutation given as a sequence of distinct keys."""
    values = list(perm)
    if len(set(values)) != len(values):
        raise GraphError("not a permutation: repeated entries")
    return -1 if inversion_count(values) % 2 else 1


def _relative_sign(src: Sequence, dst: Sequence) -> int:
    """Parity sign of the rearrangement taking ``src`` to ``dst``."""
    index = {item: i for i, item in enumerate(dst)}
    return edge_permutation_sign([index[item] for item in src])


@lru_cache(maxsize=None)
def _canonical_core(
    vertex_count: int, ref_edges: tuple[Edge, ...]
) -> tuple[tuple[Edge, ...], int, bool]:
    """Canonicalize the sorted presentation ``ref_edges``.

    Returns ``(canonical_edges, sign, is_zero)`` where ``sign`` is the edge
    permutation parity from the reference presentation to the canonical one.

    In a lexicographically minimal sorted edge list the vertex labeled 1 must
    have maximal degree and its neighbours must receive labels
    ``2..deg+1`` (otherwise some prefix entry could be lowered), so only
    relabelings of that form are enumerated.
    """
    n = vertex_count
    if not ref_edges:
        return ref_edges, 1, False
    adj: list[set[int]] = [set() for _ in range(n + 1)]
    for u, v in ref_edges:
        adj[u].add(v)
        adj[v].add(u)
    degs = [len(adj[v]) for v in range(n + 1)]
    dmax = max(degs[1:])

    best_enc: list[Edge] | None = None
    best_signs: set[int] = set()
    for center in range(1, n + 1):
        if degs[center] != dmax:
            continue
        nbrs = sorted(adj[center])
        rest = [v for v in range(1, n + 1) if v != center and v not in adj[center]]
        base = 2 + len(nbrs)
        for nperm in permutations(nbrs):
            for rperm in permutations(rest):
                label = [0] * (n + 1)
                label[center] = 1
                for i, v in enumerate(nperm):
                    label[v] = 2 + i
                for i, v in enumerate(rperm):
                    label[v] = base + i
                relabeled = []
                for u, v in ref_edges:
                    a, b = label[u], label[v]
                    relabeled.append((a, b) if a < b else (b, a))
                enc = sorted(relabeled)
                if best_enc is None or enc < best_enc:
                    best_enc = enc
                    best_signs = {_relative_sign(relabeled, enc)}
                elif enc == best_enc:
                    best_signs.add(_relative_sign(relabeled, enc))
    assert best_enc is not None
    is_zero = len(best_signs) == 2
    sign = 1 if is_zero else best_signs.pop()
    return tuple(best_enc), sign, is_zero


def canonicalize(g: UnorientedGraph) -> SignedCanonicalGraph:
    """Canonical relabeling of ``g`` with the edge-permutation parity sign.

    The canonical representative is the lexicographically smallest sorted
    edge list over all vertex relabelings.  ``is_zero`` is set when some
    relabeling fixes the canonical edge set with odd parity.
    """
    ref = tuple(sorted(g.edges))
    enc, core_sign, is_zero = _canonical_core(g.vertex_count, ref)
    sign = 1 if is_zero else core_sign * _relative_sign(g.edges, ref)
    return SignedCanonicalGraph(UnorientedGraph(g.vertex_count, enc), sign, is_zero)


def automorphisms(g: UnorientedGraph) -> list[tuple[tuple[int, ...], int]]:
    """All vertex permutations preserving the edge set, with induced edge parity.

    Each element is ``(images, sign)`` where ``images[i]`` is the image of
    vertex ``i+1`` and ``sign`` is the parity of the permutation the map
    induces on the edge list.
    """
    n = g.vertex_count
    adj: list[set[int]] = [set() for _ in range(n + 1)]
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    degs = [len(adj[v]) for v in range(n + 1)]
    edge_index = {e: i for i, e in enumerate(g.edges)}

    result: list[tuple[tuple[int, ...], int]] = []
    image = [0] * (n + 1)
    used = [False] * (n + 1)

    def extend(v: int) -> None:
        if v > n:
            perm = []
            for a, b in g.edges:
                ia, ib = image[a], image[b]
                perm.append(edge_index[(ia, ib) if ia < ib else (ib, ia)])
            result.append((tuple(image[1:]), edge_permutation_sign(perm)))
            return
        for w in range(1, n + 1):
            if used[w] or degs[w] != degs[v]:
                continue
            if any((u in adj[v]) != (image[u] in adj[w]) for u in range(1, v)):
                continue
            used[w] = True
            image[v] = w
            extend(v + 1)
            used[w] = False
        image[v] = 0

    extend(1)
    return result


def is_connected(g: UnorientedGraph) -> bool:
    """True when every vertex is reachable from vertex 1."""
    if g.vertex_count == 1:
        return True
    adj: list[list[int]] = [[] for _ in range(g.vertex_count + 1)]
    for u, v in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {1}
    stack = [1]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.vertex_count


def significant_lines(text: str) -> Iterator[tuple[int, str]]:
    """Yield ``(line_number, content)`` skipping blanks and ``#`` comments."""
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_graph(text: str) -> UnorientedGraph:
    """Parse the one-graph text format::

        g <vertices> <edges>
        u v            # one line per edge, order significant
    """
    lines = list(significant_lines(text))
    if not lines:
        raise ParseError("empty graph text")
    lineno, head = lines[0]
    parts = head.split()
    if len(parts) != 3 or parts[0] != "g":
        raise ParseError("expected header 'g <vertices> <edges>'", lineno)
    try:
        n, m = int(parts[1]), int(parts[2])
    except ValueError:
        raise ParseError("vertex/edge counts must be integers", lineno) from None
    if len(lines) - 1 != m:
        raise ParseError(f"expected {m} edge lines, found {len(lines) - 1}", lineno)
    edges = []
    for lineno, line in lines[1:]:
        fields = line.split()
        if len(fields) != 2:
            raise ParseError("expected an edge line 'u v'", lineno)
        try:
            edges.append((int(fields[0]), int(fields[1])))
        except ValueError:
            raise ParseError("edge endpoints must be integers", lineno) from None
    try:
        return new_graph(n, edges)
    except GraphError as exc:
        raise ParseError(str(exc), lines[0][0]) from exc


def format_graph(g: UnorientedGraph) -> str:
    """Render a graph in the format accepted by :func:`parse_graph`."""
    lines = [f"g {g.vertex_count} {g.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines)
