"""Concrete hull-operator instances, all with exact arithmetic.

Vector matroids over a prime field or the rationals (span membership by
elimination, Fractions throughout, no floating point), graphic matroids
(connectivity via union-find), the division hull on a finite abelian group,
and the two hulls on a window of the integers: the subgroup hull, which is
not a matroid, and the division hull, which is.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .core import GroundSet, HullOracle, InputError, MatroidInstance
from .groups import FiniteAbelianGroup, _prime_factors, is_prime, subgroup_closure


@dataclass(frozen=True)
class VectorMatroidSpec:
    """Vectors over F_p (field="fp") or exact rationals (field="q").

    For F_p either list the vectors or set ``dim`` to take the full space.
    """

    field: str
    p: int = 0
    vectors: tuple = ()
    dim: int = 0


@dataclass(frozen=True)
class GraphSpec:
    """Edge ground set of a graph; edges=None means the complete graph."""

    vertices: int
    edges: tuple = None


@dataclass(frozen=True)
class IntegerHullSpec:
    """Integers in [-window, window]; variant "subgroup" or "linear"."""

    window: int
    variant: str = "subgroup"


class _DisjointSet:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[ry] = rx
        return True


def _reduce_against(pivots, row):
    row = list(row)
    for col, prow, in pivots:
        coeff = row[col]
        if coeff:
            row = [a - coeff * b for a, b in zip(row, prow)]
    return row


def _in_span(rows, target, inverse):
    """Span membership by elimination; ``inverse`` inverts a pivot coefficient."""
    pivots = []
    for row in rows:
        row = _reduce_against(pivots, row)
        for col, v in enumerate(row):
            if v:
                inv = inverse(v)
                pivots.append((col, [inv * a for a in row]))
                break
    return not any(_reduce_against(pivots, target))


def build_vector_matroid(spec: VectorMatroidSpec) -> MatroidInstance:
    """Span-membership oracle over F_p or Q; the zero vector is the only loop."""
    if spec.field == "fp":
        p = spec.p
        if not is_prime(p):
            raise InputError(f"field size must be prime, got {p}")
        if spec.dim:
            vectors = [tuple(v) for v in itertools.product(range(p), repeat=spec.dim)]
        else:
            vectors = [tuple(int(c) % p for c in v) for v in spec.vectors]

        # every intermediate row is renormalized mod p so coefficients stay small
        def member(x, F, vecs=tuple(vectors), p=p):
            pivots = []
            for i in sorted(F):
                row = [v % p for v in _reduce_against(pivots, vecs[i])]
                for col, v in enumerate(row):
                    if v:
                        inv = pow(v, -1, p)
                        pivots.append((col, [(inv * a) % p for a in row]))
                        break
            rem = _reduce_against(pivots, list(vecs[x]))
            return not any(v % p for v in rem)

        kind = f"vector_fp(p={p})"
    elif spec.field == "q":
        vectors = [tuple(Fraction(c) for c in v) for v in spec.vectors]

        def member(x, F, vecs=tuple(vectors)):
            return _in_span([list(vecs[i]) for i in sorted(F)], list(vecs[x]), lambda v: 1 / v)

        kind = "vector_q"
    else:
        raise InputError(f"unknown vector field {spec.field!r}; use 'fp' or 'q'")

    dims = {len(v) for v in vectors}
    if len(dims) > 1:
        raise InputError(f"vectors have mixed dimensions {sorted(dims)}")
    labels = ["(" + ",".join(str(c) for c in v) + ")" for v in vectors]
    oracle = HullOracle(kind, member)
    return MatroidInstance.build(GroundSet(tuple(labels)), oracle, True, tuple(vectors))


def build_graphic_matroid(spec: GraphSpec) -> MatroidInstance:
    """Connectivity oracle on edge subsets; independent sets are the forests."""
    n = spec.vertices
    if n < 1:
        raise InputError(f"vertex count must be >= 1, got {n}")
    if spec.edges is None:
        edges = list(itertools.combinations(range(n), 2))
    else:
        edges = []
        seen = set()
        for e in spec.edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u},{v}) has endpoints outside 0..{n - 1}")
            if u == v:
                raise InputError(f"self-loop at vertex {u} not allowed")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InputError(f"duplicate edge ({u},{v})")
            seen.add(key)
            edges.append(key)

    def member(x, F, edges=tuple(edges), n=n):
        dsu = _DisjointSet(n)
        for i in F:
            dsu.union(*edges[i])
        u, v = edges[x]
        return dsu.find(u) == dsu.find(v)

    labels = [f"e{u}-{v}" for u, v in edges]
    oracle = HullOracle("graphic", member)
    return MatroidInstance.build(GroundSet(tuple(labels)), oracle, True, tuple(edges))


def _division_hull_is_matroid(G: FiniteAbelianGroup) -> bool:
    # The division hull is idempotent exactly on elementary abelian groups
    # and cyclic groups of prime-power order (where any nonzero hull is the
    # whole group).  Elsewhere it fails: in Z_6, 1 lands in the hull of {2}
    # via 2*1 = 2, and re-hulling through 1 reaches 3.  Exchange still holds.
    if not G.orders:
        return True
    if len(G.orders) == 1:
        return len(_prime_factors(G.orders[0])) == 1
    p = G.orders[0]
    return is_prime(p) and all(n == p for n in G.orders)


def build_abelian_linear_matroid(G: FiniteAbelianGroup) -> MatroidInstance:
    """Division-hull oracle on all of G: x is in [F] iff x = 0 or some
    multiple n*x with n up to the exponent lands in <F> minus zero.

    Instances are matroid-flagged only when the hull is genuinely
    idempotent (see ``_division_hull_is_matroid``); on other groups the
    operator still satisfies extensivity, monotonicity and exchange, and
    independence still coincides with linear independence, but iterated
    closures can grow.
    """
    elems = G.elements
    multiples = []
    for e in elems:
        m = e
        row = []
        for _ in range(G.exponent):
            row.append(m)
            m = G.add(m, e)
        multiples.append(tuple(row))
    hull_memo: dict = {}

    def member(x, F):
        if elems[x] == G.zero:
            return True
        core = hull_memo.get(F)
        if core is None:
            core = subgroup_closure(G, [elems[i] for i in F]) - {G.zero}
            hull_memo[F] = core
        return any(m in core for m in multiples[x])

    labels = [G.label(e) for e in elems]
    oracle = HullOracle("abelian", member)
    return MatroidInstance.build(
        GroundSet(tuple(labels)), oracle, _division_hull_is_matroid(G), elems
    )


def build_integer_hull(spec: IntegerHullSpec) -> MatroidInstance:
    """A window of the integers under the subgroup hull or the division hull.

    The window only bounds the materialized ground set, ordered by magnitude
    (0, 1, -1, 2, -2, ...); the gcd logic behind the oracle is global.  The
    subgroup variant is flagged non-matroid (exchange fails), the division
    variant is a matroid of rank one.
    """
    N = spec.window
    if N < 3:
        raise InputError(f"window must be >= 3, got {N}")
    if spec.variant not in ("subgroup", "linear"):
        raise InputError(f"unknown integer hull variant {spec.variant!r}")
    values = [0]
    for i in range(1, N + 1):
        values.extend((i, -i))
    values = tuple(values)

    if spec.variant == "subgroup":

        def member(x, F, values=values):
            g = 0
            for i in F:
                g = gcd(g, values[i])
            v = values[x]
            return v % g == 0 if g else v == 0

        kind, flagged = "integer_subgroup", False
    else:

        def member(x, F, values=values):
            return values[x] == 0 or any(values[i] for i in F)

        kind, flagged = "integer_linear", True

    labels = [str(v) for v in values]
    oracle = HullOracle(kind, member)
    return MatroidInstance.build(GroundSet(tuple(labels)), oracle, flagged, values)


def matroid_from_spec(mapping) -> MatroidInstance:
    """Build an instance from a parsed description (see the CLI spec files)."""
    if not isinstance(mapping, dict):
        raise InputError(f"matroid spec must be a mapping, got {type(mapping).__name__}")
    kind = mapping.get("kind")
    if kind == "vector_fp":
        p = _field(mapping, "p", int)
        if "dim" in mapping:
            return build_vector_matroid(VectorMatroidSpec("fp", p=p, dim=_field(mapping, "dim", int)))
        vectors = tuple(tuple(int(c) for c in v) for v in _field(mapping, "vectors", list))
        return build_vector_matroid(VectorMatroidSpec("fp", p=p, vectors=vectors))
    if kind == "vector_q":
        raw = _field(mapping, "vectors", list)
        vectors = tuple(tuple(parse_rational(c) for c in v) for v in raw)
        return build_vector_matroid(VectorMatroidSpec("q", vectors=vectors))
    if kind == "graphic":
        if "complete" in mapping:
            return build_graphic_matroid(GraphSpec(_field(mapping, "complete", int)))
        n = _field(mapping, "vertices", int)
        edges = tuple(tuple(e) for e in _field(mapping, "edges", list))
        return build_graphic_matroid(GraphSpec(n, edges))
    if kind == "abelian":
        return build_abelian_linear_matroid(FiniteAbelianGroup(tuple(_field(mapping, "orders", list))))
    if kind in ("integer_subgroup", "integer_linear"):
        return build_integer_hull(
            IntegerHullSpec(_field(mapping, "window", int), kind.split("_")[1])
        )
    raise InputError(
        f"unknown matroid kind {kind!r}; expected one of vector_fp, vector_q, "
        "graphic, abelian, integer_subgroup, integer_linear"
    )


def _field(mapping, name, caster):
    if name not in mapping:
        raise InputError(f"matroid spec kind {mapping.get('kind')!r} is missing field {name!r}")
    try:
        return caster(mapping[name])
    except (TypeError, ValueError) as exc:
        raise InputError(f"field {name!r}: {exc}") from None


def parse_rational(text) -> Fraction:
    """Exact rational from an int or a "p/q" string."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational {text!r}: {exc}") from None
