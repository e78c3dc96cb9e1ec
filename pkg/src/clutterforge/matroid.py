"""Circuit-presented matroids on small ground sets.

A matroid here is its ground size n (elements 0..n-1) and the family of
circuits, validated against the circuit axioms on construction. The matroid
of a subspace S <= GF(q)^n has as circuits the inclusion-minimal supports of
the nonzero points of S; that construction lives in `matroid_of` and keeps a
non-compared reference to the source space so dual-route checks can find it.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Optional

from .errors import BadIndex, BudgetExceeded, OverlapError, TooLarge

if TYPE_CHECKING:  # pragma: no cover
    from .vspace import Subspace

MAX_GROUND = 16
DEFAULT_MINOR_BUDGET = 2_000_000


def _minimal_sets(sets: list[frozenset[int]]) -> tuple[frozenset[int], ...]:
    """Inclusion-minimal members of a family, deduplicated, canonically ordered."""
    uniq = sorted(set(sets), key=lambda s: (len(s), sorted(s)))
    out: list[frozenset[int]] = []
    for s in uniq:
        if not any(t <= s for t in out):
            out.append(s)
    return tuple(out)


@dataclass(frozen=True)
class CircuitMatroid:
    """A matroid given by its circuit family over ground elements 0..size-1."""

    size: int
    circuits: tuple[frozenset[int], ...]
    source: Any = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        raw = [frozenset(c) for c in self.circuits]
        circs = tuple(sorted(set(raw), key=lambda s: (len(s), sorted(s))))
        if len(circs) != len(raw):
            raise ValueError("duplicate circuits")
        object.__setattr__(self, "circuits", circs)
        for c in circs:
            if not c:
                raise ValueError("the empty set cannot be a circuit")
            if any(e < 0 or e >= self.size for e in c):
                raise BadIndex(f"circuit {sorted(c)} leaves ground range 0..{self.size - 1}")
        for a, b in itertools.combinations(circs, 2):
            if a <= b or b <= a:
                raise ValueError(f"circuits {sorted(a)} and {sorted(b)} are nested")
        if self.size <= MAX_GROUND:
            # circuit elimination axiom (checked exhaustively on small grounds)
            for a, b in itertools.combinations(circs, 2):
                for e in a & b:
                    union = (a | b) - {e}
                    if not any(c <= union for c in circs):
                        raise ValueError(
                            f"circuit elimination fails for {sorted(a)}, {sorted(b)} at {e}"
                        )

    # -- basic oracle --------------------------------------------------------

    def is_independent(self, subset: frozenset[int]) -> bool:
        return not any(c <= subset for c in self.circuits)

    def rank(self, subset: Optional[frozenset[int]] = None) -> int:
        """Rank of a subset (default: whole ground) via greedy growth."""
        universe = sorted(range(self.size) if subset is None else subset)
        indep: set[int] = set()
        for e in universe:
            indep.add(e)
            if any(c <= indep for c in self.circuits):
                indep.discard(e)
        return len(indep)

    def elements_in_circuits(self) -> frozenset[int]:
        out: set[int] = set()
        for c in self.circuits:
            out |= c
        return frozenset(out)


def matroid_of(space: "Subspace") -> CircuitMatroid:
    """Matroid whose circuits are the minimal supports of the space's nonzero points.

    Validates the rank identity rank = n - dim and keeps the space as
    non-compared provenance.
    """
    supports = [
        frozenset(i for i, v in enumerate(x) if v) for x in space.points() if any(x)
    ]
    m = CircuitMatroid(space.n, _minimal_sets(supports), source=space)
    if m.rank() != space.n - space.dim:
        raise AssertionError(
            f"rank {m.rank()} disagrees with n - dim = {space.n - space.dim}"
        )
    return m


# ---------------------------------------------------------------------------
# minors
# ---------------------------------------------------------------------------

def _delete_circuits(circuits: tuple[frozenset[int], ...], removed: frozenset[int]) -> tuple[frozenset[int], ...]:
    return tuple(c for c in circuits if not (c & removed))


def _contract_circuits(circuits: tuple[frozenset[int], ...], contracted: frozenset[int]) -> tuple[frozenset[int], ...]:
    shrunk = [c - contracted for c in circuits if c - contracted]
    return _minimal_sets(shrunk)


def matroid_minor(m: CircuitMatroid, delete: frozenset[int] = frozenset(), contract: frozenset[int] = frozenset()) -> CircuitMatroid:
    """Delete `delete`, contract `contract`, relabel the kept ground in order.

    Circuits of the deletion are the circuits avoiding the deleted set;
    circuits of the contraction are the minimal nonempty sets among
    {C - contract}. The result is re-validated against the circuit axioms.
    """
    delete = frozenset(delete)
    contract = frozenset(contract)
    if delete & contract:
        raise OverlapError(f"delete and contract overlap on {sorted(delete & contract)}")
    for e in delete | contract:
        if e < 0 or e >= m.size:
            raise BadIndex(f"element {e} outside ground 0..{m.size - 1}")
    circs = _contract_circuits(_delete_circuits(m.circuits, delete), contract)
    kept = [e for e in range(m.size) if e not in delete and e not in contract]
    relabel = {e: i for i, e in enumerate(kept)}
    new_circs = tuple(frozenset(relabel[e] for e in c) for c in circs)
    return CircuitMatroid(len(kept), new_circs)


# ---------------------------------------------------------------------------
# connectivity structure
# ---------------------------------------------------------------------------

def components(m: CircuitMatroid) -> tuple[tuple[int, ...], ...]:
    """Partition of the ground into connected components.

    Elements in no circuit are their own (coloop) components; other elements
    are joined whenever they share a circuit.
    """
    parent = list(range(m.size))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in m.circuits:
        it = iter(sorted(c))
        first = find(next(it))
        for e in it:
            parent[find(e)] = first
    groups: dict[int, list[int]] = {}
    for e in range(m.size):
        groups.setdefault(find(e), []).append(e)
    return tuple(tuple(sorted(g)) for g in sorted(groups.values(), key=lambda g: g[0]))


def series_classes(m: CircuitMatroid) -> tuple[tuple[int, ...], ...]:
    """Classes of elements, within components, that every circuit treats alike.

    Two elements of a common component are in series when every circuit
    contains both or neither. Coloop components are singleton classes.
    """
    comp_of: dict[int, int] = {}
    for ci, comp in enumerate(components(m)):
        for e in comp:
            comp_of[e] = ci
    sig: dict[tuple[int, frozenset[int]], list[int]] = {}
    for e in range(m.size):
        member_of = frozenset(i for i, c in enumerate(m.circuits) if e in c)
        sig.setdefault((comp_of[e], member_of), []).append(e)
    return tuple(tuple(sorted(g)) for g in sorted(sig.values(), key=lambda g: g[0]))


@dataclass(frozen=True)
class StructureReport:
    """Per-component classification of a matroid.

    kinds[i] is one of "coloop", "circuit", "subdivision", "unclassified";
    t_values[i] carries t for subdivision components and None otherwise.
    """

    components: tuple[tuple[int, ...], ...]
    kinds: tuple[str, ...]
    t_values: tuple[Optional[int], ...]

    @property
    def all_disjoint_circuits(self) -> bool:
        return all(k in ("coloop", "circuit") for k in self.kinds)

    @property
    def all_structured(self) -> bool:
        return all(k != "unclassified" for k in self.kinds)


def classify(m: CircuitMatroid) -> StructureReport:
    """Classify every component as coloop, single circuit, or subdivision.

    A component is a subdivision component when contracting all but one
    element of each of its series classes leaves t >= 3 elements with every
    2-subset a circuit.
    """
    comps = components(m)
    kinds: list[str] = []
    ts: list[Optional[int]] = []
    for comp in comps:
        comp_set = frozenset(comp)
        local = [c for c in m.circuits if c <= comp_set]
        if not local:
            kinds.append("coloop")
            ts.append(None)
            continue
        if len(local) == 1 and local[0] == comp_set:
            kinds.append("circuit")
            ts.append(None)
            continue
        classes = [cl for cl in series_classes(m) if set(cl) <= comp_set]
        contract = frozenset(e for cl in classes for e in cl[1:])
        reps = sorted(set(comp) - contract)
        reduced = _contract_circuits(tuple(local), contract)
        t = len(reps)
        want = {frozenset(p) for p in itertools.combinations(reps, 2)}
        if t >= 3 and set(reduced) == want:
            kinds.append("subdivision")
            ts.append(t)
        else:
            kinds.append("unclassified")
            ts.append(None)
    return StructureReport(comps, tuple(kinds), tuple(ts))


# ---------------------------------------------------------------------------
# fixed small targets and minor search
# ---------------------------------------------------------------------------

def _graph_circuits(n_vertices: int, edges: list[tuple[int, int]]) -> tuple[frozenset[int], ...]:
    """Circuits of the cycle matroid of a small multigraph (edge subsets)."""
    m = len(edges)
    circuits: list[frozenset[int]] = []
    for r in range(1, m + 1):
        for idxs in itertools.combinations(range(m), r):
            chosen = frozenset(idxs)
            if any(c < chosen for c in circuits):
                continue
            deg: dict[int, int] = {}
            for i in idxs:
                u, v = edges[i]
                deg[u] = deg.get(u, 0) + 1
                deg[v] = deg.get(v, 0) + 1
            if any(d != 2 for d in deg.values()):
                continue
            # connected even subgraph with all degrees 2: a single cycle
            verts = sorted(deg)
            adj: dict[int, list[int]] = {v: [] for v in verts}
            for i in idxs:
                u, v = edges[i]
                adj[u].append(v)
                adj[v].append(u)
            seen = {verts[0]}
            stack = [verts[0]]
            while stack:
                u = stack.pop()
                for v in adj[u]:
                    if v not in seen:
                        seen.add(v)
                        stack.append(v)
            if len(seen) == len(verts):
                circuits.append(chosen)
    return _minimal_sets(circuits)


def _build_targets() -> dict[str, CircuitMatroid]:
    # A3: two vertices joined by three parallel edges
    a3 = CircuitMatroid(3, _graph_circuits(2, [(0, 1), (0, 1), (0, 1)]))
    # U24: rank-2 uniform matroid on 4 elements, circuits all 3-subsets
    u24 = CircuitMatroid(4, tuple(frozenset(c) for c in itertools.combinations(range(4), 3)))
    # MK4e: cycle matroid of K4 with one edge contracted: vertices a,b,c with
    # edge 0 = ac, edges 1,3 = ab, edges 2,4 = bc
    mk4e = CircuitMatroid(5, _graph_circuits(3, [(0, 2), (0, 1), (1, 2), (0, 1), (1, 2)]))
    # MK4: cycle matroid of the complete graph on 4 vertices
    k4_edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    mk4 = CircuitMatroid(6, _graph_circuits(4, k4_edges))
    return {"A3": a3, "U24": u24, "MK4e": mk4e, "MK4": mk4}


TARGETS: dict[str, CircuitMatroid] = _build_targets()


def _target(name: str) -> CircuitMatroid:
    for key, value in TARGETS.items():
        if key.upper() == str(name).upper():
            return value
    raise KeyError(f"unknown minor target {name!r}; choose from {sorted(TARGETS)}")


def circuits_isomorphic(m1: CircuitMatroid, m2: CircuitMatroid) -> Optional[dict[int, int]]:
    """Bijection of grounds carrying circuits onto circuits, or None.

    Brute force over permutations; intended for grounds of size <= 7.
    """
    if m1.size != m2.size or len(m1.circuits) != len(m2.circuits):
        return None
    if sorted(len(c) for c in m1.circuits) != sorted(len(c) for c in m2.circuits):
        return None
    target = set(m2.circuits)
    for perm in itertools.permutations(range(m2.size)):
        if {frozenset(perm[e] for e in c) for c in m1.circuits} == target:
            return {i: perm[i] for i in range(m1.size)}
    return None


def has_minor(
    m: CircuitMatroid, target: str, budget: Optional[int] = None
) -> Optional[tuple[frozenset[int], frozenset[int]]]:
    """Exhaustive search for a named minor (A3, U24, MK4e, MK4).

    Returns a (delete, contract) witness pair or None. A3 absence is decided
    by the shortcut that an A3 minor exists exactly when two distinct
    circuits intersect, so only the present case is searched. Raises
    TooLarge beyond ground size 16 and BudgetExceeded when the candidate
    count overruns the budget.
    """
    t = _target(target)
    k = t.size
    n = m.size
    if n > MAX_GROUND:
        raise TooLarge(f"minor search ground size {n} exceeds {MAX_GROUND}")
    if k > n:
        return None
    if t is TARGETS["A3"] and intersecting_circuits(m) is None:
        return None
    free = n - k
    total = math.comb(n, free) * 2 ** free
    if total > (budget if budget is not None else DEFAULT_MINOR_BUDGET):
        raise BudgetExceeded(
            f"minor search needs {total} candidates, budget is {budget or DEFAULT_MINOR_BUDGET}"
        )
    for rest in itertools.combinations(range(n), free):
        for pick in range(2 ** free):
            delete = frozenset(rest[i] for i in range(free) if pick >> i & 1)
            contract = frozenset(rest) - delete
            minor = matroid_minor(m, delete, contract)
            if circuits_isomorphic(minor, t) is not None:
                return delete, contract
    return None


def intersecting_circuits(
    m: CircuitMatroid,
) -> Optional[tuple[frozenset[int], frozenset[int]]]:
    """First pair of distinct circuits with nonempty intersection, or None."""
    for a, b in itertools.combinations(m.circuits, 2):
        if a & b:
            return a, b
    return None
