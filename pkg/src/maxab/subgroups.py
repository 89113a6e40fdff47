"""Exhaustive subgroup enumeration and the containment lattice.

Enumeration is layered closure-extension: starting from the trivial
subgroup, every known subgroup is extended by every outside element, the
closure deduplicated by bit mask, until no new subgroup appears.  This is
exhaustive because each subgroup arises by extending any of its maximal
proper subgroups by one element.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    BadParameter,
    EnumerationCapExceeded,
    NotNested,
    NotPrimePower,
    TrivialGroup,
)
from .groups import (
    GroupTable,
    SubgroupSet,
    bools_from_mask,
    check_subgroup,
    mask_from_bools,
    prime_power,
    prime_power_or_none,
    trivial_subgroup,
)

DEFAULT_ENUM_CAP = 256

# Elementary abelian groups are rejected up front when the Gaussian-binomial
# subgroup count predicts more nodes than this; (Z/2)**7 with ~29k subgroups
# is the largest accepted input.
PREDICTED_SUBGROUP_LIMIT = 30000


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of an n-dimensional space over F_q."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def _predicted_elemab_subgroups(p: int, k: int) -> int:
    return sum(gaussian_binomial(k, j, p) for j in range(k + 1))


def subgroup_closure(g: GroupTable, seed) -> SubgroupSet:
    """Smallest subgroup containing the seed elements."""
    bools = np.zeros(g.order, dtype=bool)
    bools[0] = True
    for i in seed:
        if not 0 <= i < g.order:
            raise NotNested(f"seed index {i} outside [0, {g.order})")
        bools[i] = True
    _close_in_place(g.product, bools, np.flatnonzero(bools))
    return SubgroupSet(g.order, mask_from_bools(bools))


def _close_in_place(table: np.ndarray, bools: np.ndarray, fresh: np.ndarray) -> None:
    """Extend a product-closed bool mask by the fresh indices, in place.

    Multiplies new elements against everything each round; a finite set
    closed under products is automatically closed under inverses.
    """
    members = np.flatnonzero(bools)
    while fresh.size:
        prods = np.concatenate([
            table[np.ix_(fresh, members)].ravel(),
            table[np.ix_(members, fresh)].ravel(),
        ])
        cand = np.unique(prods)
        fresh = cand[~bools[cand]]
        if fresh.size:
            bools[fresh] = True
            members = np.flatnonzero(bools)


def all_subgroups(g: GroupTable, *, enum_cap: int = DEFAULT_ENUM_CAP) -> list[SubgroupSet]:
    """Every subgroup of g, canonically ordered (size, then member list)."""
    n = g.order
    if n > enum_cap:
        raise EnumerationCapExceeded(
            f"order {n} exceeds the enumeration cap {enum_cap}")
    pp = prime_power_or_none(n)
    if pp is not None and n > 1:
        p, k = pp
        if bool((g.element_orders[1:] == p).all()) and g.is_abelian:
            predicted = _predicted_elemab_subgroups(p, k)
            if predicted > PREDICTED_SUBGROUP_LIMIT:
                raise EnumerationCapExceeded(
                    f"elementary abelian ({p},{k}) predicts {predicted} subgroups")

    table = g.product
    trivial = 1
    known = {trivial}
    frontier = [trivial]
    while frontier:
        next_frontier = []
        for mask in frontier:
            base = bools_from_mask(mask, n)
            outside = np.flatnonzero(~base)
            for x in outside:
                bools = base.copy()
                bools[x] = True
                _close_in_place(table, bools, np.array([x]))
                new_mask = mask_from_bools(bools)
                if new_mask not in known:
                    known.add(new_mask)
                    next_frontier.append(new_mask)
        frontier = next_frontier

    subs = [SubgroupSet(n, m) for m in known]
    subs.sort(key=lambda s: (s.size, s.members()))
    return subs


# ---------------------------------------------------------------------------
# the lattice

class SubgroupLattice:
    """All subgroups of a group ordered by containment.

    ``subgroups`` is canonically ordered by (size, member list), so index 0
    is the trivial subgroup and the last index is the full group.  ``leq`` is
    the boolean containment matrix; covers, the transitive reduction, is
    computed on first use.
    """

    def __init__(self, group: GroupTable, subgroups: list[SubgroupSet]):
        self.group = group
        self.subgroups = subgroups
        m = len(subgroups)
        self.size = m
        words = (group.order + 63) // 64
        packed = np.zeros((m, words), dtype=np.uint64)
        for i, s in enumerate(subgroups):
            raw = s.mask.to_bytes(words * 8, "little")
            packed[i] = np.frombuffer(raw, dtype=np.uint64)
        # leq[i, j] iff the bits of subgroup i are a subset of subgroup j's
        self.leq = np.ones((m, m), dtype=bool)
        for w in range(words):
            col = packed[:, w]
            self.leq &= (col[:, None] & col[None, :]) == col[:, None]
        self.leq.setflags(write=False)

        self.bottom_index = 0
        self.top_index = m - 1
        sizes = np.array([s.size for s in subgroups])
        if sizes[self.bottom_index] != 1 or sizes[self.top_index] != group.order:
            raise NotNested("lattice is missing its trivial or full subgroup")

        commuting = group.commuting
        abelian = np.empty(m, dtype=bool)
        for i, s in enumerate(subgroups):
            mem = s.member_array()
            abelian[i] = bool(commuting[np.ix_(mem, mem)].all())
        abelian.setflags(write=False)
        self.abelian = abelian

        strict = self.leq & ~np.eye(m, dtype=bool)
        contained_in_abelian = strict[:, abelian].any(axis=1)
        maximal_abelian = abelian & ~contained_in_abelian
        maximal_abelian.setflags(write=False)
        self.maximal_abelian = maximal_abelian

        self._index = {s.mask: i for i, s in enumerate(subgroups)}

    def index_of(self, s: SubgroupSet) -> int:
        try:
            return self._index[s.mask]
        except KeyError:
            raise NotNested("the element set is not a subgroup of this lattice") from None

    @cached_property
    def covers(self) -> list[tuple[int, int]]:
        """Edges (lower, upper) of the transitive reduction of leq."""
        strict = self.leq & ~np.eye(self.size, dtype=bool)
        f = strict.astype(np.float32)
        shortcut = (f @ f) > 0.5
        reduced = strict & ~shortcut
        return [(int(i), int(j)) for i, j in np.argwhere(reduced)]

    @cached_property
    def upward_masks(self) -> list[int]:
        """Per node, a bit mask over lattice indices of all supersets."""
        return [mask_from_bools(self.leq[i]) for i in range(self.size)]

    @cached_property
    def downward_masks(self) -> list[int]:
        """Per node, a bit mask over lattice indices of all subsets."""
        return [mask_from_bools(self.leq[:, j]) for j in range(self.size)]

    @property
    def nested_pair_count(self) -> int:
        return int(self.leq.sum())


def build_lattice(g: GroupTable, *, enum_cap: int = DEFAULT_ENUM_CAP) -> SubgroupLattice:
    """Enumerate all subgroups and assemble the containment lattice."""
    return SubgroupLattice(g, all_subgroups(g, enum_cap=enum_cap))


def maximal_abelian_subgroups(g: GroupTable, *,
                              enum_cap: int = DEFAULT_ENUM_CAP) -> list[SubgroupSet]:
    """Abelian subgroups not strictly contained in a larger abelian one."""
    lat = build_lattice(g, enum_cap=enum_cap)
    return [lat.subgroups[i] for i in np.flatnonzero(lat.maximal_abelian)]


# ---------------------------------------------------------------------------
# nested-pair classification

def _require_nested(g: GroupTable, s: SubgroupSet, t: SubgroupSet) -> None:
    check_subgroup(g, s)
    check_subgroup(g, t)
    if not s.issubset(t):
        raise NotNested(f"subgroup of size {s.size} is not contained in the "
                        f"one of size {t.size}")


def is_normal_in(g: GroupTable, s: SubgroupSet, t: SubgroupSet) -> bool:
    """True iff conjugation by every member of t keeps s inside itself."""
    _require_nested(g, s, t)
    s_bools = s.bools()
    conj = g.conj_table[np.ix_(t.member_array(), s.member_array())]
    return bool(s_bools[conj].all())


@dataclass(frozen=True)
class QuotientType:
    """Shape of t/s: not_normal, elementary_abelian(k), cyclic(m) or other.

    An order-p quotient is reported as elementary_abelian(1), never as
    cyclic(p); s == t gives elementary_abelian(0).
    """

    kind: str
    param: int = 0

    @property
    def is_cyclic(self) -> bool:
        return self.kind == "cyclic" or (
            self.kind == "elementary_abelian" and self.param <= 1)


NOT_NORMAL = QuotientType("not_normal")
OTHER = QuotientType("other")


def quotient_type(g: GroupTable, s: SubgroupSet, t: SubgroupSet) -> QuotientType:
    """Classify the quotient t/s for nested subgroups s of t."""
    _require_nested(g, s, t)
    if not is_normal_in(g, s, t):
        return NOT_NORMAL
    m = t.size // s.size
    if m == 1:
        return QuotientType("elementary_abelian", 0)
    t_members = t.member_array()
    s_bools = s.bools()

    pp = prime_power_or_none(m)
    if pp is not None:
        p, k = pp
        powers = g.power_map(p)[t_members]
        comms = g.commutator_table[np.ix_(t_members, t_members)]
        if s_bools[powers].all() and s_bools[comms].all():
            return QuotientType("elementary_abelian", k)

    # cyclic iff some coset has order m in t/s: the first power of a
    # representative landing in s must be the m-th
    table = g.product
    for rep in t_members:
        x = int(rep)
        steps = 1
        while not s_bools[x]:
            x = int(table[x, rep])
            steps += 1
        if steps == m:
            return QuotientType("cyclic", m)
    return OTHER


def count_order_p_subgroups(g: GroupTable) -> int:
    """Number of subgroups of prime order p in a nontrivial p-group.

    Counted through the element census: each such subgroup owns exactly
    p - 1 elements of order p.
    """
    if g.order == 1:
        raise TrivialGroup("the one-element group has no order-p subgroups")
    if g.prime_power is None:
        raise NotPrimePower(g.order)
    p, _ = g.prime_power
    n_elems = int((g.element_orders == p).sum())
    assert n_elems % (p - 1) == 0
    return n_elems // (p - 1)
