"""Hull operators on finite ground sets.

A hull operator sends every subset F of a ground set to a superset <F>,
monotonically: A is contained in <A>, and <A> in <B>, whenever A is a subset
of B.  It is accessed here through a membership oracle ``member(x, F)``
deciding ``x in <F>``, so operators whose hulls are infinite as sets (the
integers under subgroup generation, say) stay usable: closures are only ever
materialized over the finite ground set.

Elements are identified by their index in the ground set's fixed order,
which is also the canonical tie-breaking order for bases, circuits, layers
and witnesses.  Every sweep reports the first violation in canonical
(size, then lexicographic) order, so results are deterministic and a sweep
split across workers merges by taking the lowest-ranked witness.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Iterable, Optional


HOLDS = "holds-on-budget"
VIOLATED = "violated"


class InputError(ValueError):
    """Malformed input: unknown identifiers, bad specs, bad parameters."""

    def __init__(self, message, circuit=None):
        super().__init__(message)
        self.circuit = circuit


class PremiseError(ValueError):
    """A finite feasibility premise is not met; carries the derived thresholds."""

    def __init__(self, message, thresholds=None):
        super().__init__(message)
        self.thresholds = dict(thresholds or {})


class BudgetError(RuntimeError):
    """An exhaustive sweep would exceed its evaluation cap."""

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class InternalInconsistencyError(RuntimeError):
    """A certificate failed on an instance flagged as a matroid: the oracle is buggy."""


@dataclass(frozen=True)
class GroundSet:
    """Finite ground set with a fixed order; elements are the indices 0..n-1."""

    labels: tuple

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def elements(self) -> range:
        return range(len(self.labels))


@dataclass(frozen=True)
class HullOracle:
    """Membership oracle for a hull operator.

    ``member(x, F)`` must be deterministic, extensive (true whenever x is in
    F) and monotone in F.  ``kind`` names which concrete instance this is.
    """

    kind: str
    member: Callable[[int, frozenset], bool]


@dataclass(eq=False)
class MatroidInstance:
    """A ground set together with a hull oracle and its cached loop set.

    ``loops`` is the closure of the empty set.  ``is_matroid`` records
    whether the oracle is flagged (declared or verified) to satisfy
    idempotence and the exchange property; certificate failures on flagged
    instances are treated as oracle bugs.  ``objects`` optionally carries the
    semantic payload behind each index (vectors, edges, group elements).

    Instances are immutable after construction apart from an internal
    closure cache; all operations on them are pure.
    """

    ground: GroundSet
    oracle: HullOracle
    loops: frozenset
    is_matroid: bool = True
    objects: tuple = ()
    _closures: dict = field(default_factory=dict, repr=False)

    @classmethod
    def build(cls, ground, oracle, is_matroid=True, objects=()):
        member = oracle.member
        loops = frozenset(x for x in ground.elements if member(x, frozenset()))
        return cls(ground, oracle, loops, is_matroid, tuple(objects))

    @property
    def size(self) -> int:
        return self.ground.size

    def label(self, x: int) -> str:
        return self.ground.labels[x]

    def labels_of(self, xs: Iterable[int]) -> tuple:
        return tuple(self.ground.labels[x] for x in xs)

    def index_of(self, obj) -> int:
        """Index of the first ground element carrying this semantic object."""
        try:
            return self.objects.index(obj)
        except ValueError:
            raise InputError(f"no ground element for object {obj!r}") from None


def _as_subset(M: MatroidInstance, F) -> frozenset:
    F = frozenset(F)
    n = M.ground.size
    for x in F:
        if not isinstance(x, int) or not 0 <= x < n:
            raise InputError(f"element identifier {x!r} out of range 0..{n - 1}")
    return F


def closure(M: MatroidInstance, F) -> frozenset:
    """Materialize <F> over the ground set: all x with member(x, F)."""
    F = _as_subset(M, F)
    cached = M._closures.get(F)
    if cached is None:
        member = M.oracle.member
        cached = frozenset(x for x in M.ground.elements if member(x, F))
        M._closures[F] = cached
    return cached


def is_independent(M: MatroidInstance, A) -> bool:
    """True iff no element of A lies in the hull of the others."""
    A = _as_subset(M, A)
    member = M.oracle.member
    return all(not member(a, A - {a}) for a in sorted(A))


def find_circuit_within(M: MatroidInstance, A) -> Optional[tuple]:
    """A minimal dependent subset of A, or None when A is independent.

    Subsets are scanned in canonical size-then-lexicographic order; the
    first dependent one has minimum cardinality, so all its proper subsets
    are independent and it is a circuit.  On matroid-flagged instances every
    element of the returned circuit is checked to lie in the hull of the
    rest.
    """
    A = _as_subset(M, A)
    elems = sorted(A)
    member = M.oracle.member
    for size in range(1, len(elems) + 1):
        for combo in itertools.combinations(elems, size):
            C = frozenset(combo)
            if any(member(a, C - {a}) for a in combo):
                if M.is_matroid:
                    stray = [x for x in combo if not member(x, C - {x})]
                    if stray:
                        raise InternalInconsistencyError(
                            f"circuit {combo} on matroid-flagged instance "
                            f"{M.oracle.kind!r} has elements {stray} outside "
                            "the hull of the rest"
                        )
                return combo
    return None


def greedy_basis(M: MatroidInstance, order=None) -> tuple:
    """Scan elements in order, keeping x iff it is outside the hull of the kept ones.

    The default order is the canonical ground-set order.  The result is a
    maximal independent set whose closure covers the ground set on
    matroid-flagged instances.
    """
    n = M.ground.size
    if order is None:
        scan = range(n)
    else:
        scan = tuple(order)
        if sorted(scan) != list(range(n)):
            raise InputError("order must be a permutation of the ground set")
    member = M.oracle.member
    kept: list = []
    kept_set: frozenset = frozenset()
    for x in scan:
        if not member(x, kept_set):
            kept.append(x)
            kept_set = kept_set | {x}
    return tuple(kept)


# ---------------------------------------------------------------------------
# axiom sweeps


@dataclass(frozen=True)
class Budget:
    """Sweep budget: exhaustive up to a subset size, or seeded sampling.

    Exhaustive sweeps refuse to start when the estimated number of oracle
    evaluations exceeds ``max_evaluations``; use a sampled budget with an
    explicit seed for larger instances.
    """

    mode: str
    max_subset_size: int = 3
    seed: Optional[int] = None
    count: Optional[int] = None
    max_evaluations: int = 2_000_000

    @classmethod
    def exhaustive(cls, max_subset_size=3, max_evaluations=2_000_000):
        return cls("exhaustive", max_subset_size, None, None, max_evaluations)

    @classmethod
    def sampled(cls, seed, count, max_subset_size=3):
        return cls("sampled", max_subset_size, int(seed), int(count))

    @classmethod
    def parse(cls, text, seed=None):
        """Parse "exhaustive[:K]" or "sampled:COUNT[:K]" (seed given separately)."""
        parts = str(text).split(":")
        if parts[0] == "exhaustive":
            k = int(parts[1]) if len(parts) > 1 else 3
            return cls.exhaustive(k)
        if parts[0] == "sampled":
            if len(parts) < 2:
                raise InputError("sampled budget needs a count: sampled:COUNT[:K]")
            count = int(parts[1])
            k = int(parts[2]) if len(parts) > 2 else 3
            return cls.sampled(0 if seed is None else seed, count, k)
        raise InputError(f"unknown budget {text!r}; use exhaustive[:K] or sampled:COUNT[:K]")

    def describe(self) -> str:
        if self.mode == "exhaustive":
            return f"exhaustive(max_subset_size={self.max_subset_size})"
        return (
            f"sampled(seed={self.seed}, count={self.count}, "
            f"max_subset_size={self.max_subset_size})"
        )


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of one axiom sweep.

    When ``verdict`` is "violated" the witness is a mapping with enough
    indices to re-evaluate the violation against the oracle (see
    ``reverify_witness``).
    """

    axiom: str
    verdict: str
    witness: Optional[dict]
    budget: str

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS


def _subsets_up_to(n, k):
    universe = range(n)
    for size in range(min(k, n) + 1):
        for combo in itertools.combinations(universe, size):
            yield frozenset(combo)


def _subset_count(n, k) -> int:
    return sum(comb(n, s) for s in range(min(k, n) + 1))


def _refuse_if_over(budget: Budget, estimate: int, axiom: str, n: int):
    if estimate > budget.max_evaluations:
        raise BudgetError(
            f"exhaustive {axiom} sweep over {n} elements with |A| <= "
            f"{budget.max_subset_size} needs about {estimate} oracle evaluations "
            f"(cap {budget.max_evaluations}); use a sampled budget with a seed",
            estimate=estimate,
        )


def _sampled_sets(M, budget):
    rng = random.Random(budget.seed)
    n = M.ground.size
    k = min(budget.max_subset_size, n)
    for _ in range(budget.count):
        size = rng.randint(0, k)
        yield rng, frozenset(rng.sample(range(n), size))


def check_hull_axioms(M: MatroidInstance, budget: Budget) -> AxiomReport:
    """Check extensivity and monotonicity of the oracle on the budget."""
    member = M.oracle.member
    described = budget.describe()

    def extensive_violation(A):
        for a in sorted(A):
            if not member(a, A):
                return {"property": "extensive", "A": sorted(A), "x": a}
        return None

    def monotone_violation(F, G):
        clF, clG = closure(M, F), closure(M, G)
        if not clF <= clG:
            return {
                "property": "monotone",
                "A": sorted(F),
                "B": sorted(G),
                "x": min(clF - clG),
            }
        return None

    if budget.mode == "exhaustive":
        n = M.ground.size
        k = budget.max_subset_size
        estimate = _subset_count(n, k) * (n + 2 ** min(k, n))
        _refuse_if_over(budget, estimate, "hull-operator", n)
        for A in _subsets_up_to(n, k):
            wit = extensive_violation(A)
            if wit:
                return AxiomReport("hull-operator", VIOLATED, wit, described)
        for G in _subsets_up_to(n, k):
            sortedG = sorted(G)
            for size in range(len(sortedG)):
                for combo in itertools.combinations(sortedG, size):
                    wit = monotone_violation(frozenset(combo), G)
                    if wit:
                        return AxiomReport("hull-operator", VIOLATED, wit, described)
        return AxiomReport("hull-operator", HOLDS, None, described)

    for rng, G in _sampled_sets(M, budget):
        wit = extensive_violation(G)
        if wit:
            return AxiomReport("hull-operator", VIOLATED, wit, described)
        F = frozenset(e for e in G if rng.random() < 0.5)
        wit = monotone_violation(F, G)
        if wit:
            return AxiomReport("hull-operator", VIOLATED, wit, described)
    return AxiomReport("hull-operator", HOLDS, None, described)


def check_idempotent(M: MatroidInstance, budget: Budget) -> AxiomReport:
    """Check closure(closure(A)) == closure(A) on the budget."""
    described = budget.describe()

    def violation(A):
        S = closure(M, A)
        T = closure(M, S)
        if S != T:
            return {"A": sorted(A), "x": min(S ^ T)}
        return None

    if budget.mode == "exhaustive":
        n = M.ground.size
        k = budget.max_subset_size
        _refuse_if_over(budget, _subset_count(n, k) * 2 * max(n, 1), "idempotence", n)
        for A in _subsets_up_to(n, k):
            wit = violation(A)
            if wit:
                return AxiomReport("idempotent", VIOLATED, wit, described)
        return AxiomReport("idempotent", HOLDS, None, described)

    for _, A in _sampled_sets(M, budget):
        wit = violation(A)
        if wit:
            return AxiomReport("idempotent", VIOLATED, wit, described)
    return AxiomReport("idempotent", HOLDS, None, described)


def _exchange_witness(A, x, y, forward):
    # orient so the reported x lies in <A u {y}> while y stays outside <A u {x}>
    if not forward:
        x, y = y, x
    return {"A": sorted(A), "x": x, "y": y}


def check_exchange(M: MatroidInstance, budget: Budget) -> AxiomReport:
    """Check the exchange biconditional for x, y outside closure(A).

    Pairs with x or y already inside closure(A) are skipped, never counted
    as violations.  A violation witness is oriented so that x is the element
    inside the hull of A and y, matching how counterexamples read.
    """
    member = M.oracle.member
    described = budget.describe()

    def evaluate(A, x, y):
        forward = member(x, A | {y})
        backward = member(y, A | {x})
        if forward != backward:
            return _exchange_witness(A, x, y, forward)
        return None

    if budget.mode == "exhaustive":
        n = M.ground.size
        k = budget.max_subset_size
        _refuse_if_over(budget, _subset_count(n, k) * max(n, 1) ** 2, "exchange", n)
        for A in _subsets_up_to(n, k):
            clA = closure(M, A)
            outside = [z for z in M.ground.elements if z not in clA]
            for i, x in enumerate(outside):
                for y in outside[i + 1 :]:
                    wit = evaluate(A, x, y)
                    if wit:
                        return AxiomReport("exchange", VIOLATED, wit, described)
        return AxiomReport("exchange", HOLDS, None, described)

    for rng, A in _sampled_sets(M, budget):
        clA = closure(M, A)
        outside = sorted(set(M.ground.elements) - clA)
        if len(outside) < 2:
            continue
        x, y = rng.sample(outside, 2)
        wit = evaluate(A, x, y)
        if wit:
            return AxiomReport("exchange", VIOLATED, wit, described)
    return AxiomReport("exchange", HOLDS, None, described)


def reverify_witness(M: MatroidInstance, report: AxiomReport) -> bool:
    """Re-evaluate a violation witness against the oracle."""
    if report.verdict != VIOLATED:
        raise InputError("report holds on budget; there is no witness to re-verify")
    w = report.witness
    member = M.oracle.member
    if report.axiom == "exchange":
        A = frozenset(w["A"])
        return member(w["x"], A | {w["y"]}) and not member(w["y"], A | {w["x"]})
    if report.axiom == "idempotent":
        A = frozenset(w["A"])
        return closure(M, closure(M, A)) != closure(M, A)
    if report.axiom == "hull-operator":
        if w["property"] == "extensive":
            return not member(w["x"], frozenset(w["A"]))
        F, G = frozenset(w["A"]), frozenset(w["B"])
        return F <= G and w["x"] in closure(M, F) and w["x"] not in closure(M, G)
    raise InputError(f"unknown axiom {report.axiom!r}")
