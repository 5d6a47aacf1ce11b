"""Polynomial multivector fields on R^d and evaluation of graph flows.

A multivector field is a polynomial in even coordinates ``x1..xd`` and
anticommuting fibre coordinates ``xi1..xid``.  Terms are stored normal
ordered (strictly increasing xi indices) with exact rational coefficients;
reordering odd factors introduces the usual sign per swap.

The module provides the Schouten bracket, the algebraic orientation
evaluator (a product of edge operators acting on multivectors placed at
graph vertices), the direct evaluator of oriented-graph sums against a
bivector, and the identity checks tying the graph differential to the
Schouten bracket.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from itertools import permutations
from typing import Callable, Iterator, Mapping, Sequence

from .complexes import GraphSum, bracket, differential
from .graphs import ParseError, UnorientedGraph, inversion_count, significant_lines
from .orient import Orgraph, OrgraphSum

__all__ = [
    "MultivectorError",
    "Multivector",
    "multivector_product",
    "xi_derivative",
    "x_derivative",
    "schouten",
    "is_bivector",
    "jacobiator",
    "or_evaluate_algebraic",
    "evaluate_orgraph",
    "verify_corollary",
    "flow_commutator_check",
    "parse_multivector",
    "parse_poisson",
    "format_multivector",
    "format_poisson",
]


class MultivectorError(ValueError):
    """Raised for arity, dimension, or grading violations."""


XExp = tuple[int, ...]
XiSet = tuple[int, ...]
TermKey = tuple[XExp, XiSet]


def _normal_order(xis: Sequence[int]) -> tuple[XiSet, int] | None:
    """Sort odd indices, returning (sorted tuple, sign); None if repeated."""
    if len(set(xis)) != len(xis):
        return None
    sign = -1 if inversion_count(xis) % 2 else 1
    return tuple(sorted(xis)), sign


class Multivector:
    """A polynomial multivector field on R^d with exact coefficients."""

    __slots__ = ("dimension", "_terms")

    def __init__(
        self,
        dimension: int,
        terms: Mapping[TermKey, Fraction] | None = None,
    ) -> None:
        if dimension < 1:
            raise MultivectorError("dimension must be positive")
        self.dimension = dimension
        self._terms: dict[TermKey, Fraction] = {}
        if terms:
            for (xexp, xis), coeff in terms.items():
                self.add_term(xexp, xis, coeff)

    def add_term(
        self, xexp: Sequence[int], xis: Sequence[int], coeff: Fraction
    ) -> None:
        """Accumulate one term, normal-ordering the odd factors."""
        if len(xexp) != self.dimension:
            raise MultivectorError("exponent vector length mismatch")
        if any(e < 0 for e in xexp):
            raise MultivectorError("negative exponent")
        if any(not 0 <= i < self.dimension for i in xis):
            raise MultivectorError("odd index out of range")
        ordered = _normal_order(xis)
        if ordered is None or not coeff:
            return
        key = (tuple(xexp), ordered[0])
        value = self._terms.get(key, Fraction(0)) + coeff * ordered[1]
        if value:
            self._terms[key] = value
        else:
            self._terms.pop(key, None)

    def items(self) -> list[tuple[TermKey, Fraction]]:
        return sorted(self._terms.items())

    def coefficient(self, xexp: Sequence[int], xis: Sequence[int]) -> Fraction:
        ordered = _normal_order(xis)
        if ordered is None:
            return Fraction(0)
        return self._terms.get((tuple(xexp), ordered[0]), Fraction(0)) * ordered[1]

    def xi_degrees(self) -> set[int]:
        return {len(xis) for _, xis in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.xi_degrees()) <= 1

    def components(self) -> Iterator[tuple[int, "Multivector"]]:
        """Yield (xi-degree, homogeneous part) pairs, ascending."""
        parts: dict[int, Multivector] = {}
        for (xexp, xis), coeff in self._terms.items():
            parts.setdefault(len(xis), Multivector(self.dimension)).add_term(
                xexp, xis, coeff
            )
        yield from sorted(parts.items())

    def copy(self) -> "Multivector":
        out = Multivector(self.dimension)
        out._terms = dict(self._terms)
        return out

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.dimension == other.dimension and self._terms == other._terms

    def __hash__(self) -> int:  # pragma: no cover - mutable container
        raise TypeError("unhashable type: 'Multivector'")

    def __add__(self, other: "Multivector") -> "Multivector":
        if self.dimension != other.dimension:
            raise MultivectorError("dimension mismatch")
        out = self.copy()
        for (xexp, xis), coeff in other._terms.items():
            out.add_term(xexp, xis, coeff)
        return out

    def __sub__(self, other: "Multivector") -> "Multivector":
        return self + (-other)

    def __neg__(self) -> "Multivector":
        return self * Fraction(-1)

    def __mul__(self, scalar: Fraction | int) -> "Multivector":
        factor = Fraction(scalar)
        out = Multivector(self.dimension)
        if factor:
            for key, coeff in self._terms.items():
                out._terms[key] = coeff * factor
        return out

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"Multivector(dim={self.dimension}, {format_multivector(self)!r})"


def multivector_product(f: Multivector, g: Multivector) -> Multivector:
    """Supercommutative product; odd factor collisions vanish."""
    if f.dimension != g.dimension:
        raise MultivectorError("dimension mismatch")
    out = Multivector(f.dimension)
    for (xa, ia), ca in f._terms.items():
        for (xb, ib), cb in g._terms.items():
            if set(ia) & set(ib):
                continue
            xexp = tuple(a + b for a, b in zip(xa, xb))
            out.add_term(xexp, ia + ib, ca * cb)
    return out


def xi_derivative(f: Multivector, index: int) -> Multivector:
    """Left derivative along one odd coordinate."""
    out = Multivector(f.dimension)
    for (xexp, xis), coeff in f._terms.items():
        if index not in xis:
            continue
        pos = xis.index(index)
        rest = xis[:pos] + xis[pos + 1:]
        out.add_term(xexp, rest, coeff if pos % 2 == 0 else -coeff)
    return out


def x_derivative(f: Multivector, index: int) -> Multivector:
    """Derivative along one even coordinate."""
    out = Multivector(f.dimension)
    for (xexp, xis), coeff in f._terms.items():
        if not xexp[index]:
            continue
        lowered = xexp[:index] + (xexp[index] - 1,) + xexp[index + 1:]
        out.add_term(lowered, xis, coeff * xexp[index])
    return out


def schouten(f: Multivector, g: Multivector) -> Multivector:
    """The Schouten bracket [[f, g]], extended bilinearly over components.

    On homogeneous f of odd degree |f| it is
    ``(-1)^(|f|-1) d/dxi(f)·d/dx(g) - d/dx(f)·d/dxi(g)`` summed over
    coordinates, shifted-graded antisymmetric in its arguments.
    """
    if f.dimension != g.dimension:
        raise MultivectorError("dimension mismatch")
    out = Multivector(f.dimension)
    for degree, part in f.components():
        lead = Fraction(-1 if (degree - 1) % 2 else 1)
        for alpha in range(f.dimension):
            out += lead * multivector_product(
                xi_derivative(part, alpha), x_derivative(g, alpha)
            )
            out -= multivector_product(
                x_derivative(part, alpha), xi_derivative(g, alpha)
            )
    return out


def is_bivector(p: Multivector) -> bool:
    return p.xi_degrees() <= {2}


def jacobiator(p: Multivector) -> Multivector:
    """[[p, p]]; vanishes exactly when the bivector is Poisson."""
    if not is_bivector(p):
        raise MultivectorError("bivector required")
    return schouten(p, p)


# ---------------------------------------------------------------------------
# Algebraic evaluation: edge operators acting on placed multivectors.
#
# The computation happens in a product algebra with one copy of the
# coordinates per graph vertex: even generator (copy, alpha) at flat index
# copy*d + alpha, and likewise for the odd generators.  Applying all edge
# operators and restricting to the diagonal returns an ordinary multivector.

BigTerm = tuple[XExp, XiSet]


def _big_scale(terms: dict[BigTerm, Fraction], factor: Fraction) -> None:
    for key in terms:
        terms[key] *= factor


def _big_add(
    terms: dict[BigTerm, Fraction], key: BigTerm, coeff: Fraction
) -> None:
    value = terms.get(key, Fraction(0)) + coeff
    if value:
        terms[key] = value
    else:
        terms.pop(key, None)


def _big_product(
    left: dict[BigTerm, Fraction], right: dict[BigTerm, Fraction]
) -> dict[BigTerm, Fraction]:
    out: dict[BigTerm, Fraction] = {}
    for (xa, ia), ca in left.items():
        for (xb, ib), cb in right.items():
            if set(ia) & set(ib):
                continue
            merged = _normal_order(ia + ib)
            if merged is None:
                continue
            xis, sign = merged
            xexp = tuple(a + b for a, b in zip(xa, xb))
            _big_add(out, (xexp, xis), ca * cb * sign)
    return out


def _big_xi_derivative(
    terms: dict[BigTerm, Fraction], index: int
) -> dict[BigTerm, Fraction]:
    out: dict[BigTerm, Fraction] = {}
    for (xexp, xis), coeff in terms.items():
        if index not in xis:
            continue
        pos = xis.index(index)
        rest = xis[:pos] + xis[pos + 1:]
        _big_add(out, (xexp, rest), coeff if pos % 2 == 0 else -coeff)
    return out


def _big_x_derivative(
    terms: dict[BigTerm, Fraction], index: int
) -> dict[BigTerm, Fraction]:
    out: dict[BigTerm, Fraction] = {}
    for (xexp, xis), coeff in terms.items():
        if not xexp[index]:
            continue
        lowered = xexp[:index] + (xexp[index] - 1,) + xexp[index + 1:]
        _big_add(out, (lowered, xis), coeff * xexp[index])
    return out


def _placed(mv: Multivector, copy: int, copies: int) -> dict[BigTerm, Fraction]:
    d = mv.dimension
    width = copies * d
    out: dict[BigTerm, Fraction] = {}
    for (xexp, xis), coeff in mv._terms.items():
        big_x = [0] * width
        big_x[copy * d: (copy + 1) * d] = xexp
        big_xis = tuple(copy * d + i for i in xis)
        out[(tuple(big_x), big_xis)] = coeff
    return out


def _edge_operator(
    terms: dict[BigTerm, Fraction], u: int, v: int, d: int
) -> dict[BigTerm, Fraction]:
    """Apply one edge operator coupling vertex copies u and v (0-based)."""
    out: dict[BigTerm, Fraction] = {}
    for alpha in range(d):
        for tail, head in ((u, v), (v, u)):
            part = _big_x_derivative(
                _big_xi_derivative(terms, tail * d + alpha), head * d + alpha
            )
            for key, coeff in part.items():
                _big_add(out, key, coeff)
    return out


def _diagonal(
    terms: dict[BigTerm, Fraction], copies: int, d: int
) -> Multivector:
    out = Multivector(d)
    for (big_x, big_xis), coeff in terms.items():
        xexp = tuple(
            sum(big_x[copy * d + alpha] for copy in range(copies))
            for alpha in range(d)
        )
        out.add_term(xexp, tuple(i % d for i in big_xis), coeff)
    return out


def _is_odd_argument(mv: Multivector) -> bool:
    return any(degree % 2 for degree in mv.xi_degrees())


def or_evaluate_algebraic(
    graph: UnorientedGraph, args: Sequence[Multivector]
) -> Multivector:
    """Evaluate the orientation of a graph on multivectors, one per vertex.

    The ordered product of edge operators (first edge acting first) is
    applied to the placed arguments, averaged over all vertex placements.
    At most one argument may have odd components; identical even arguments
    collapse the placement average to a single term.
    """
    n = graph.vertex_count
    if len(args) != n:
        raise MultivectorError("argument count must equal the vertex count")
    d = args[0].dimension
    if any(a.dimension != d for a in args):
        raise MultivectorError("dimension mismatch")
    if sum(_is_odd_argument(a) for a in args) > 1:
        raise MultivectorError("well-definedness precondition violated")

    distinct: list[Multivector] = []
    classes: list[int] = []
    for a in args:
        for idx, seen in enumerate(distinct):
            if a == seen:
                classes.append(idx)
                break
        else:
            distinct.append(a)
            classes.append(len(distinct) - 1)

    if len(distinct) == 1 and not _is_odd_argument(distinct[0]):
        return _evaluate_ordered(graph, args, d)

    # Summing over permutations of argument placements equals summing over
    # the inverse permutations, so enumerate vertex assignments directly and
    # cache by the class of the argument sitting at each vertex.
    cache: dict[tuple[int, ...], Multivector] = {}
    total = Multivector(d)
    for assignment in permutations(range(n)):
        signature = tuple(classes[k] for k in assignment)
        if signature not in cache:
            reordered = [args[k] for k in assignment]
            cache[signature] = _evaluate_ordered(graph, reordered, d)
        total += cache[signature]
    return total * Fraction(1, math.factorial(n))


def _evaluate_ordered(
    graph: UnorientedGraph, placed_args: Sequence[Multivector], d: int
) -> Multivector:
    """Edge-operator product with placed_args[i] sitting at vertex i+1."""
    n = graph.vertex_count
    terms: dict[BigTerm, Fraction] = {((0,) * (n * d), ()): Fraction(1)}
    for vertex, mv in enumerate(placed_args):
        terms = _big_product(terms, _placed(mv, vertex, n))
        if not terms:
            return Multivector(d)
    for u, v in graph.edges:
        terms = _edge_operator(terms, u - 1, v - 1, d)
        if not terms:
            return Multivector(d)
    return _diagonal(terms, n, d)


# ---------------------------------------------------------------------------
# Direct evaluation of oriented-graph sums against a bivector.


def _bivector_components(p: Multivector) -> dict[tuple[int, int], dict[XExp, Fraction]]:
    """Antisymmetric component polynomials of a bivector, by index pair."""
    components: dict[tuple[int, int], dict[XExp, Fraction]] = {}
    for (xexp, xis), coeff in p._terms.items():
        if len(xis) != 2:
            raise MultivectorError("bivector required")
        i, j = xis
        components.setdefault((i, j), {})[xexp] = coeff
        components.setdefault((j, i), {})[xexp] = -coeff
    return components


def _poly_derivative(poly: dict[XExp, Fraction], index: int) -> dict[XExp, Fraction]:
    out: dict[XExp, Fraction] = {}
    for xexp, coeff in poly.items():
        if xexp[index]:
            lowered = xexp[:index] + (xexp[index] - 1,) + xexp[index + 1:]
            out[lowered] = out.get(lowered, Fraction(0)) + coeff * xexp[index]
    return out


def _poly_product(
    left: dict[XExp, Fraction], right: dict[XExp, Fraction]
) -> dict[XExp, Fraction]:
    out: dict[XExp, Fraction] = {}
    for xa, ca in left.items():
        for xb, cb in right.items():
            key = tuple(a + b for a, b in zip(xa, xb))
            value = out.get(key, Fraction(0)) + ca * cb
            if value:
                out[key] = value
            else:
                out.pop(key, None)
    return out


def _evaluate_single_orgraph(
    g: Orgraph, p: Multivector, components
) -> Multivector:
    d = p.dimension
    s = g.sink_count
    n = g.internal_count
    pairs = list(components)
    out = Multivector(d)

    def recurse(vertex: int, chosen: list[tuple[int, int]]) -> None:
        if vertex == n:
            finish(chosen)
            return
        for pair in pairs:
            chosen.append(pair)
            recurse(vertex + 1, chosen)
            chosen.pop()

    def finish(chosen: list[tuple[int, int]]) -> None:
        # index carried by each arrow: position 2*i (left) and 2*i+1 (right)
        sink_indices = [0] * s
        in_indices: list[list[int]] = [[] for _ in range(n)]
        for i in range(n):
            left, right = g.targets[i]
            for slot, target in ((0, left), (1, right)):
                alpha = chosen[i][slot]
                if target < s:
                    sink_indices[target] = alpha
                else:
                    in_indices[target - s].append(alpha)
        value: dict[XExp, Fraction] = {(0,) * d: Fraction(1)}
        for i in range(n):
            factor = components[chosen[i]]
            for alpha in in_indices[i]:
                factor = _poly_derivative(factor, alpha)
                if not factor:
                    return
            value = _poly_product(value, factor)
            if not value:
                return
        for xexp, coeff in value.items():
            out.add_term(xexp, tuple(sink_indices), coeff)

    recurse(0, [])
    return out * Fraction(1, math.factorial(s))


def evaluate_orgraph(source: OrgraphSum | Orgraph, p: Multivector) -> Multivector:
    """Evaluate an oriented-graph sum on copies of a bivector.

    Each internal vertex holds a copy of the bivector; every arrow carries a
    coordinate index, arrows into a vertex differentiate its copy, and the
    arrows into the ordered sinks supply the odd factors of the result.
    """
    if not is_bivector(p):
        raise MultivectorError("bivector required")
    components = _bivector_components(p)
    if isinstance(source, Orgraph):
        source = OrgraphSum([(source, Fraction(1))])
    total = Multivector(p.dimension)
    for g, coeff in source.items():
        total += coeff * _evaluate_single_orgraph(g, p, components)
    return total


# ---------------------------------------------------------------------------
# Identity checks.


def _as_graph_sum(gamma: GraphSum | UnorientedGraph) -> GraphSum:
    if isinstance(gamma, UnorientedGraph):
        gs = GraphSum()
        gs.add_graph(gamma, Fraction(1))
        return gs
    return gamma


def _flow(
    gamma: GraphSum,
    args_for: Callable[[UnorientedGraph], Sequence[Multivector]],
) -> Multivector | None:
    total: Multivector | None = None
    for graph, coeff in gamma.items():
        value = coeff * or_evaluate_algebraic(graph, args_for(graph))
        total = value if total is None else total + value
    return total


def _uniform_vertex_count(gamma: GraphSum) -> int:
    counts = {graph.vertex_count for graph, _ in gamma.items()}
    if len(counts) != 1:
        raise MultivectorError("graph sum must be vertex-homogeneous")
    return counts.pop()


def verify_corollary(gamma: GraphSum | UnorientedGraph, p: Multivector) -> bool:
    """Check the differential-to-bracket identity on a vertex-homogeneous sum.

    Orienting the bracket of the single edge with the sum and evaluating on
    copies of the bivector must equal twice the Schouten bracket of the
    bivector with the evaluated flow, minus the flow re-evaluated with the
    bivector's self-bracket substituted once into each argument slot.
    """
    gamma = _as_graph_sum(gamma)
    if not gamma:
        raise MultivectorError("empty graph sum")
    n = _uniform_vertex_count(gamma)
    d = p.dimension

    dgamma = differential(gamma)
    lhs = _flow(dgamma, lambda graph: [p] * graph.vertex_count)
    if lhs is None:
        lhs = Multivector(d)

    flow = _flow(gamma, lambda graph: [p] * n)
    assert flow is not None
    jac = schouten(p, p)
    rhs = 2 * schouten(p, flow)
    if jac:
        substituted = _flow(gamma, lambda graph: [jac] + [p] * (n - 1))
        assert substituted is not None
        rhs -= n * substituted
    return lhs == rhs


def flow_commutator_check(
    gamma1: GraphSum | UnorientedGraph,
    gamma2: GraphSum | UnorientedGraph,
    p: Multivector,
) -> bool:
    """Check that the graph bracket matches the commutator of the two flows.

    The commutator is the antisymmetrized linearisation: each flow is
    substituted once into every argument slot of the other.
    """
    gamma1 = _as_graph_sum(gamma1)
    gamma2 = _as_graph_sum(gamma2)
    if not gamma1 or not gamma2:
        raise MultivectorError("empty graph sum")
    n1 = _uniform_vertex_count(gamma1)
    n2 = _uniform_vertex_count(gamma2)
    d = p.dimension

    q1 = _flow(gamma1, lambda graph: [p] * n1)
    q2 = _flow(gamma2, lambda graph: [p] * n2)
    assert q1 is not None and q2 is not None

    def linearised(gamma: GraphSum, n: int, direction: Multivector) -> Multivector:
        if not direction:
            return Multivector(d)
        value = _flow(gamma, lambda graph: [direction] + [p] * (n - 1))
        assert value is not None
        return n * value

    lhs = linearised(gamma2, n2, q1) - linearised(gamma1, n1, q2)

    rhs = Multivector(d)
    combined = bracket(gamma1, gamma2)
    for graph, coeff in combined.items():
        rhs += coeff * or_evaluate_algebraic(
            graph, [p] * graph.vertex_count
        )
    return lhs == rhs


# ---------------------------------------------------------------------------
# Text format: expressions in x1..xd, xi1..xid with rational coefficients.


_TOKEN = re.compile(
    r"\s*(?:(?P<number>\d+(?:/\d+)?)|(?P<xi>xi\d+)|(?P<x>x\d+)"
    r"|(?P<op>[-+*^()]))"
)


def _tokenize(text: str, lineno: int | None) -> list[tuple[str, str, int]]:
    tokens: list[tuple[str, str, int]] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            column = len(text) - len(stripped) + 1
            raise ParseError(
                f"unexpected character {stripped[0]!r} at column {column}",
                lineno,
            )
        kind = match.lastgroup
        assert kind is not None
        tokens.append((kind, match.group(kind), match.start(kind) + 1))
        pos = match.end()
    return tokens


class _ExpressionParser:
    """Recursive-descent parser producing a Multivector."""

    def __init__(self, tokens: list[tuple[str, str, int]], dimension: int,
                 lineno: int | None) -> None:
        self.tokens = tokens
        self.pos = 0
        self.dimension = dimension
        self.lineno = lineno

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> tuple[str, str, int]:
        token = self.peek()
        if token is None:
            raise ParseError("unexpected end of expression", self.lineno)
        self.pos += 1
        return token

    def fail(self, message: str, column: int) -> ParseError:
        return ParseError(f"{message} at column {column}", self.lineno)

    def parse(self) -> Multivector:
        value = self.expression()
        token = self.peek()
        if token is not None:
            raise self.fail(f"unexpected {token[1]!r}", token[2])
        return value

    def expression(self) -> Multivector:
        token = self.peek()
        negate = False
        if token is not None and token[0] == "op" and token[1] in "+-":
            self.take()
            negate = token[1] == "-"
        value = self.term()
        if negate:
            value = -value
        while True:
            token = self.peek()
            if token is None or token[0] != "op" or token[1] not in "+-":
                break
            self.take()
            right = self.term()
            value = value - right if token[1] == "-" else value + right
        return value

    def term(self) -> Multivector:
        value = self.power()
        while True:
            token = self.peek()
            if token is None or token[0] != "op" or token[1] != "*":
                break
            self.take()
            value = multivector_product(value, self.power())
        return value

    def power(self) -> Multivector:
        base = self.atom()
        token = self.peek()
        if token is None or token[0] != "op" or token[1] != "^":
            return base
        self.take()
        exponent_token = self.take()
        if exponent_token[0] != "number" or "/" in exponent_token[1]:
            raise self.fail("integer exponent expected", exponent_token[2])
        exponent = int(exponent_token[1])
        value = _constant(self.dimension, Fraction(1))
        for _ in range(exponent):
            value = multivector_product(value, base)
        return value

    def atom(self) -> Multivector:
        token = self.take()
        kind, text, column = token
        if kind == "number":
            return _constant(self.dimension, Fraction(text))
        if kind == "x":
            index = int(text[1:])
            if not 1 <= index <= self.dimension:
                raise self.fail(f"x index {index} out of range", column)
            xexp = tuple(1 if k == index - 1 else 0 for k in range(self.dimension))
            out = Multivector(self.dimension)
            out.add_term(xexp, (), Fraction(1))
            return out
        if kind == "xi":
            index = int(text[2:])
            if not 1 <= index <= self.dimension:
                raise self.fail(f"xi index {index} out of range", column)
            out = Multivector(self.dimension)
            out.add_term((0,) * self.dimension, (index - 1,), Fraction(1))
            return out
        if kind == "op" and text == "(":
            value = self.expression()
            closing = self.take()
            if closing[0] != "op" or closing[1] != ")":
                raise self.fail("missing closing parenthesis", closing[2])
            return value
        if kind == "op" and text == "-":
            return -self.atom()
        raise self.fail(f"unexpected {text!r}", column)


def _constant(dimension: int, value: Fraction) -> Multivector:
    out = Multivector(dimension)
    out.add_term((0,) * dimension, (), value)
    return out


def parse_multivector(
    text: str, dimension: int, lineno: int | None = None
) -> Multivector:
    """Parse one expression into a multivector on R^dimension."""
    tokens = _tokenize(text, lineno)
    if not tokens:
        raise ParseError("empty expression", lineno)
    return _ExpressionParser(tokens, dimension, lineno).parse()


def parse_poisson(text: str) -> Multivector:
    """Parse a multivector file: a `dim <d>` header, then summed expressions."""
    lines = list(significant_lines(text))
    if not lines:
        raise ParseError("empty input", None)
    lineno, header = lines[0]
    fields = header.split()
    if len(fields) != 2 or fields[0] != "dim" or not fields[1].isdigit():
        raise ParseError("expected header 'dim <d>'", lineno)
    dimension = int(fields[1])
    if dimension < 1:
        raise ParseError("dimension must be positive", lineno)
    total = Multivector(dimension)
    for lineno, line in lines[1:]:
        total += parse_multivector(line, dimension, lineno)
    return total


def _format_term(xexp: XExp, xis: XiSet, coeff: Fraction) -> str:
    factors: list[str] = []
    for index, exponent in enumerate(xexp):
        if exponent == 1:
            factors.append(f"x{index + 1}")
        elif exponent > 1:
            factors.append(f"x{index + 1}^{exponent}")
    factors.extend(f"xi{index + 1}" for index in xis)
    if not factors:
        return str(coeff)
    body = "*".join(factors)
    if coeff == 1:
        return body
    if coeff == -1:
        return f"-{body}"
    return f"{coeff}*{body}"


def format_multivector(mv: Multivector) -> str:
    """Render as a single expression; parses back to an equal value."""
    parts: list[str] = []
    for (xexp, xis), coeff in mv.items():
        term = _format_term(xexp, xis, coeff)
        if not parts:
            parts.append(term)
        elif term.startswith("-"):
            parts.append(f"- {term[1:]}")
        else:
            parts.append(f"+ {term}")
    return " ".join(parts) if parts else "0"


def format_poisson(mv: Multivector) -> str:
    """Render in the multivector file format, one term per line."""
    lines = [f"dim {mv.dimension}"]
    for (xexp, xis), coeff in mv.items():
        lines.append(_format_term(xexp, xis, coeff))
    return "\n".join(lines) + "\n"
