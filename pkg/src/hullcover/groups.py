"""Finite abelian groups presented as direct sums of cyclic groups.

Elements are residue tuples added componentwise.  The module provides the
two hulls that matter here, the generated subgroup <B> and the division
hull [B] (everything with a nonzero multiple inside <B>), plus n-torsion,
primary decomposition and linear-independence testing, all by exact integer
arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import gcd, lcm, prod

from .core import InputError, InternalInconsistencyError


def _prime_factors(n: int) -> dict:
    factors = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Z_{n_1} + ... + Z_{n_k} with componentwise addition modulo n_i.

    Orders must each be at least 2; an empty list gives the trivial group.
    Present groups in invariant-factor or primary form yourself, this class
    does no normalization.
    """

    orders: tuple

    def __post_init__(self):
        orders = tuple(int(n) for n in self.orders)
        if any(n < 2 for n in orders):
            raise InputError(f"cyclic orders must all be >= 2, got {orders}")
        object.__setattr__(self, "orders", orders)

    @cached_property
    def order(self) -> int:
        return prod(self.orders)

    @cached_property
    def exponent(self) -> int:
        return lcm(*self.orders) if self.orders else 1

    @cached_property
    def elements(self) -> tuple:
        return tuple(itertools.product(*(range(n) for n in self.orders)))

    @cached_property
    def _element_index(self) -> dict:
        return {e: i for i, e in enumerate(self.elements)}

    @property
    def zero(self) -> tuple:
        return (0,) * len(self.orders)

    def element(self, x) -> tuple:
        """Coerce and validate a residue tuple (a bare int works for rank 1)."""
        if isinstance(x, int):
            x = (x,)
        x = tuple(int(v) for v in x)
        if len(x) != len(self.orders):
            raise InputError(f"element {x} has rank {len(x)}, group has rank {len(self.orders)}")
        for v, n in zip(x, self.orders):
            if not 0 <= v < n:
                raise InputError(f"residue {v} out of range 0..{n - 1} in element {x}")
        return x

    def index(self, x) -> int:
        return self._element_index[self.element(x)]

    def label(self, x) -> str:
        x = self.element(x)
        if len(x) == 1:
            return str(x[0])
        return "(" + ",".join(map(str, x)) + ")"

    def add(self, x, y) -> tuple:
        return tuple((a + b) % n for a, b, n in zip(x, y, self.orders))

    def neg(self, x) -> tuple:
        return tuple((-a) % n for a, n in zip(x, self.orders))

    def scalar(self, k: int, x) -> tuple:
        return tuple((k * a) % n for a, n in zip(x, self.orders))

    def element_order(self, x) -> int:
        x = self.element(x)
        return lcm(*(n // gcd(n, a) for a, n in zip(x, self.orders))) if x else 1


def subgroup_closure(G: FiniteAbelianGroup, B) -> frozenset:
    """The subgroup <B>: breadth-first closure of {0} under +-generators."""
    gens = [G.element(b) for b in B]
    seen = {G.zero}
    frontier = [G.zero]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                for cand in (G.add(e, g), G.add(e, G.neg(g))):
                    if cand not in seen:
                        seen.add(cand)
                        nxt.append(cand)
        frontier = nxt
    return frozenset(seen)


def linear_hull(G: FiniteAbelianGroup, B) -> frozenset:
    """[B]: zero plus every x some multiple n*x of which lands in <B> minus zero.

    Multiples n*x repeat with period order(x), so scanning n up to the group
    exponent decides the existential exactly.
    """
    core = subgroup_closure(G, B) - {G.zero}
    hull = {G.zero}
    if not core:
        return frozenset(hull)
    for x in G.elements:
        if x == G.zero:
            continue
        m = x
        for _ in range(G.exponent):
            if m in core:
                hull.add(x)
                break
            m = G.add(m, x)
    return frozenset(hull)


def n_torsion(G: FiniteAbelianGroup, n: int) -> frozenset:
    """The subgroup of elements killed by n."""
    if n < 1:
        raise InputError(f"torsion index must be >= 1, got {n}")
    per_coord = [range(0, m, m // gcd(m, n)) for m in G.orders]
    return frozenset(itertools.product(*per_coord))


@dataclass(frozen=True)
class TorsionReport:
    """Primary components of a finite group, with the direct-sum verification."""

    group: FiniteAbelianGroup
    components: dict
    direct_sum_verified: bool

    @property
    def component_sizes(self) -> dict:
        return {p: len(c) for p, c in self.components.items()}


def primary_decomposition(G: FiniteAbelianGroup) -> TorsionReport:
    """Split G into its p-power-order parts and verify the splitting is direct.

    The p-part is the p^e torsion subgroup for the largest p^e dividing the
    exponent.  Verification enumerates all sums of one element per part and
    checks they hit every group element exactly once.
    """
    components = {}
    for p, e in sorted(_prime_factors(G.order).items()):
        ppart = _prime_factors(G.exponent).get(p, 0)
        comp = sorted(n_torsion(G, p**ppart))
        components[p] = tuple(comp)
    sizes = prod(len(c) for c in components.values())
    verified = sizes == G.order
    if verified:
        seen = set()
        for combo in itertools.product(*components.values()):
            total = G.zero
            for part in combo:
                total = G.add(total, part)
            seen.add(total)
        verified = len(seen) == G.order
    for p, comp in components.items():
        for q, other in components.items():
            if p < q and set(comp) & set(other) != {G.zero}:
                verified = False
    return TorsionReport(G, components, verified)


def is_linearly_independent(G: FiniteAbelianGroup, A, direct_limit=6) -> bool:
    """True iff the only way to combine distinct elements of A to zero is termwise zero.

    Coefficients for a are searched over 0..order(a)-1, which is complete
    because k*a only depends on k modulo order(a).  Sets containing zero are
    dependent by convention.  Above ``direct_limit`` elements the exhaustive
    tuple scan is replaced by the hull route: a is redundant iff it lies in
    the division hull of the others.
    """
    elems = sorted({G.element(a) for a in A})
    if G.zero in elems:
        return False
    if len(elems) <= direct_limit:
        multiples = []
        for a in elems:
            row = []
            m = G.zero
            for _ in range(G.element_order(a)):
                row.append(m)
                m = G.add(m, a)
            multiples.append(row)
        for combo in itertools.product(*multiples):
            if all(term == G.zero for term in combo):
                continue
            total = G.zero
            for term in combo:
                total = G.add(total, term)
            if total == G.zero:
                return False
        return True
    for a in elems:
        if a in linear_hull(G, set(elems) - {a}):
            return False
    return True


@dataclass(frozen=True)
class CosetPairCertificate:
    """Witness that the pair {a+x, a+y} is linearly dependent.

    Multiplying either member by p^n gives the same nonzero element p^n * a,
    so p^n*(a+x) - p^n*(a+y) = 0 with both terms nonzero.
    """

    group: FiniteAbelianGroup
    p: int
    n: int
    a: tuple
    x: tuple
    y: tuple
    pair: tuple
    multiplier: int
    common_image: tuple


def dependent_coset_pair(G: FiniteAbelianGroup, p: int, n: int, a, x, y) -> CosetPairCertificate:
    """Certify {a+x, a+y} dependent for x, y in the p^n torsion and a outside it."""
    if not is_prime(p):
        raise InputError(f"p must be prime, got {p}")
    if n < 1:
        raise InputError(f"n must be >= 1, got {n}")
    a, x, y = G.element(a), G.element(x), G.element(y)
    q = p**n
    if x == y:
        raise InputError("x and y must be distinct")
    if G.scalar(q, x) != G.zero:
        raise InputError(f"x = {x} is not killed by p^n = {q}")
    if G.scalar(q, y) != G.zero:
        raise InputError(f"y = {y} is not killed by p^n = {q}")
    if G.scalar(q, a) == G.zero:
        raise InputError(f"a = {a} must lie outside the p^n torsion (p^n = {q})")
    u, v = G.add(a, x), G.add(a, y)
    qa = G.scalar(q, a)
    if not (G.scalar(q, u) == qa == G.scalar(q, v)) or qa == G.zero:
        raise InternalInconsistencyError("coset pair arithmetic failed to close")
    return CosetPairCertificate(G, p, n, a, x, y, (u, v), q, qa)


def invariant_factor_groups(max_order: int) -> list:
    """All groups of order <= max_order in invariant-factor form n_1 | n_2 | ...

    Includes the trivial group (empty factor list) for order 1.
    """

    def chains(m, cap):
        if m == 1:
            yield ()
            return
        for d in range(2, m + 1):
            if m % d == 0 and (cap is None or cap % d == 0):
                for rest in chains(m // d, d):
                    yield rest + (d,)

    groups = []
    for m in range(1, max_order + 1):
        for seq in sorted(chains(m, None)):
            groups.append(FiniteAbelianGroup(seq))
    return groups
