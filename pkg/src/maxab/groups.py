"""Finite groups as explicit multiplication tables.

Conventions used everywhere: elements are dense integer indices 0..n-1 with
the identity pinned at index 0; permutations act on 1-based points, cycles
inside one generator compose left to right, and fixed points may be omitted.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadParameter,
    InvalidPermutation,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotASubgroup,
    NotClosed,
    NotNormal,
    NotPrimePower,
    OrderCapExceeded,
)

DEFAULT_ORDER_CAP = 10000

# Full O(n^3) associativity scan up to this order; above it a seeded spot
# check of 10*n^2 random triples runs instead unless full_assoc forces it.
FULL_ASSOC_SCAN_LIMIT = 512
_SPOT_CHECK_SEED = 1


# ---------------------------------------------------------------------------
# prime powers

def prime_power(n: int) -> tuple[int, int]:
    """Return (p, k) with p prime, k >= 1 and p**k == n.

    Raises NotPrimePower otherwise; n == 1 raises with trivial=True since
    the one-element group has no prime.
    """
    if n < 1:
        raise BadParameter(f"order must be positive, got {n}")
    if n == 1:
        raise NotPrimePower(1, trivial=True)
    p = _smallest_prime_factor(n)
    k = 0
    m = n
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise NotPrimePower(n)
    return p, k


def prime_power_or_none(n: int) -> tuple[int, int] | None:
    try:
        return prime_power(n)
    except NotPrimePower:
        return None


def _smallest_prime_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return d
        d += 2
    return n


# ---------------------------------------------------------------------------
# element-set bit masks

def mask_from_bools(bools: np.ndarray) -> int:
    return int.from_bytes(np.packbits(bools, bitorder="little").tobytes(), "little")


def bools_from_mask(mask: int, n: int) -> np.ndarray:
    raw = mask.to_bytes((n + 7) // 8, "little")
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), count=n, bitorder="little")
    return bits.astype(bool)


@dataclass(frozen=True)
class SubgroupSet:
    """Subset of group elements stored as a bit mask over element indices.

    Instances produced by this package are genuine subgroups (closed under
    product and inverse, containing index 0); the dataclass itself only pins
    the representation.
    """

    n: int
    mask: int

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def contains(self, i: int) -> bool:
        return bool((self.mask >> i) & 1)

    def issubset(self, other: "SubgroupSet") -> bool:
        return self.mask & other.mask == self.mask

    def members(self) -> tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(self.bools()))

    def bools(self) -> np.ndarray:
        return bools_from_mask(self.mask, self.n)

    def member_array(self) -> np.ndarray:
        return np.flatnonzero(self.bools())

    @classmethod
    def from_members(cls, n: int, members: Iterable[int]) -> "SubgroupSet":
        mask = 0
        for i in members:
            if not 0 <= i < n:
                raise BadParameter(f"element index {i} outside [0, {n})")
            mask |= 1 << i
        return cls(n, mask)


def trivial_subgroup(n: int) -> SubgroupSet:
    return SubgroupSet(n, 1)


def full_subgroup(n: int) -> SubgroupSet:
    return SubgroupSet(n, (1 << n) - 1)


# ---------------------------------------------------------------------------
# the group table

class GroupTable:
    """Immutable finite group given by its full multiplication table.

    ``product[i, j]`` is the index of the product i*j and ``inverse[i]`` the
    index of i**-1.  Construction validates the group axioms and fails with
    an error naming the first witness; see from_cayley_table for tables from
    untrusted input (it additionally relabels the identity to index 0).
    """

    def __init__(self, product, name: str = "", *, full_assoc: bool = False):
        arr = np.asarray(product, dtype=np.int32)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise BadParameter(f"product table must be square, got shape {arr.shape}")
        n = int(arr.shape[0])
        if n < 1:
            raise BadParameter("group order must be at least 1")

        bad = (arr < 0) | (arr >= n)
        if bad.any():
            flat = int(bad.ravel().argmax())
            i, j = divmod(flat, n)
            raise NotClosed(i, j, int(arr[i, j]), n)

        rng = np.arange(n, dtype=np.int32)
        if not (np.array_equal(arr[0], rng) and np.array_equal(arr[:, 0], rng)):
            raise NoIdentity("index 0 is not a two-sided identity")

        has_id = arr == 0
        missing = ~has_id.any(axis=1)
        if missing.any():
            raise NoInverse(int(missing.argmax()))
        inverse = has_id.argmax(axis=1).astype(np.int32)
        two_sided = arr[inverse, rng] == 0
        if not two_sided.all():
            raise NoInverse(int((~two_sided).argmax()))

        witness = _associativity_witness(arr, full=full_assoc or n <= FULL_ASSOC_SCAN_LIMIT)
        if witness is not None:
            raise NotAssociative(witness)

        arr.setflags(write=False)
        inverse.setflags(write=False)
        self.order = n
        self.product = arr
        self.inverse = inverse
        self.name = name
        self.prime_power = prime_power_or_none(n)

    # -- scalar arithmetic ------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return int(self.product[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def conj(self, g: int, x: int) -> int:
        """g * x * g**-1."""
        return int(self.product[self.product[g, x], self.inverse[g]])

    def element_order(self, a: int) -> int:
        return int(self.element_orders[a])

    def renamed(self, name: str) -> "GroupTable":
        """Same table under a different label (arrays are shared)."""
        g = object.__new__(GroupTable)
        g.order = self.order
        g.product = self.product
        g.inverse = self.inverse
        g.name = name
        g.prime_power = self.prime_power
        return g

    def __repr__(self) -> str:
        return f"GroupTable({self.name!r}, order={self.order})"

    # -- cached whole-group views ------------------------------------------

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.product, self.product.T))

    @cached_property
    def commuting(self) -> np.ndarray:
        """Boolean matrix: commuting[i, j] iff i*j == j*i."""
        m = self.product == self.product.T
        m.setflags(write=False)
        return m

    @cached_property
    def conj_table(self) -> np.ndarray:
        """conj_table[g, x] = g * x * g**-1."""
        t = self.product
        c = t[t, self.inverse[:, None]]
        c.setflags(write=False)
        return c

    @cached_property
    def commutator_table(self) -> np.ndarray:
        """commutator_table[x, y] = x**-1 * y**-1 * x * y."""
        t, inv = self.product, self.inverse
        n = self.order
        left = t[inv[:, None], inv[None, :]]
        k = t[t[left, np.arange(n, dtype=np.int32)[:, None]],
              np.arange(n, dtype=np.int32)[None, :]]
        k.setflags(write=False)
        return k

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        t = self.product
        orders = np.zeros(n, dtype=np.int64)
        orders[0] = 1
        cur = np.arange(n, dtype=np.int32)
        k = 1
        while (orders == 0).any():
            k += 1
            cur = t[cur, np.arange(n, dtype=np.int32)]
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
        orders.setflags(write=False)
        return orders

    def power_map(self, e: int) -> np.ndarray:
        """Vector of x**e over all elements, e >= 0."""
        if e < 0:
            raise BadParameter("power_map expects a nonnegative exponent")
        n = self.order
        base = np.arange(n, dtype=np.int32)
        out = np.zeros(n, dtype=np.int32)
        sq = base
        while e:
            if e & 1:
                out = self.product[out, sq]
            e >>= 1
            if e:
                sq = self.product[sq, sq]
        return out


def _associativity_witness(table: np.ndarray, full: bool) -> tuple[int, int, int] | None:
    n = table.shape[0]
    if full:
        chunk = max(1, (1 << 22) // (n * n))
        for i0 in range(0, n, chunk):
            rows = table[i0:i0 + chunk]
            left = table[rows]            # [i, j, k] -> (i*j)*k
            right = rows[:, table]        # [i, j, k] -> i*(j*k)
            if not np.array_equal(left, right):
                flat = int((left != right).ravel().argmax())
                c, rem = divmod(flat, n * n)
                j, k = divmod(rem, n)
                return (i0 + c, j, k)
        return None
    rng = np.random.default_rng(_SPOT_CHECK_SEED)
    m = 10 * n * n
    i = rng.integers(0, n, size=m)
    j = rng.integers(0, n, size=m)
    k = rng.integers(0, n, size=m)
    left = table[table[i, j], k]
    right = table[i, table[j, k]]
    if not np.array_equal(left, right):
        w = int((left != right).argmax())
        return (int(i[w]), int(j[w]), int(k[w]))
    return None


# ---------------------------------------------------------------------------
# constructors

def from_cayley_table(n: int, table: Sequence[Sequence[int]], name: str = "",
                      *, full_assoc: bool = False) -> GroupTable:
    """Validate an untrusted n x n table and return its GroupTable.

    Elements are relabeled if needed so that the identity sits at index 0.
    """
    if n < 1:
        raise BadParameter(f"order must be positive, got {n}")
    arr = np.asarray(table, dtype=np.int64)
    if arr.shape != (n, n):
        raise BadParameter(f"expected a {n}x{n} table, got shape {arr.shape}")
    bad = (arr < 0) | (arr >= n)
    if bad.any():
        flat = int(bad.ravel().argmax())
        i, j = divmod(flat, n)
        raise NotClosed(i, j, int(arr[i, j]), n)

    rng = np.arange(n, dtype=np.int64)
    is_id = np.array([np.array_equal(arr[e], rng) and np.array_equal(arr[:, e], rng)
                      for e in range(n)])
    if not is_id.any():
        raise NoIdentity("no row and column act as the identity")
    e = int(is_id.argmax())
    if e != 0:
        swap = rng.copy()
        swap[0], swap[e] = e, 0
        arr = swap[arr[np.ix_(swap, swap)]]
    return GroupTable(arr.astype(np.int32), name, full_assoc=full_assoc)


def parse_cycles(text: str, degree: int) -> tuple[int, ...]:
    """Parse 1-based cycle notation like ``(1 2 3)(4 5)`` into an image tuple.

    Returns the 0-based one-line form: result[i] is the image of point i.
    Cycles need not be disjoint and compose left to right.
    """
    perm = list(range(degree))
    pos = 0
    n = len(text)
    saw_cycle = False
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch != "(":
            raise InvalidPermutation(f"expected '(' at offset {pos} in {text!r}")
        end = text.find(")", pos)
        if end < 0:
            raise InvalidPermutation(f"unclosed cycle at offset {pos} in {text!r}")
        body = text[pos + 1:end].replace(",", " ").split()
        if not body:
            raise InvalidPermutation(f"empty cycle at offset {pos} in {text!r}")
        points = []
        for tok in body:
            try:
                v = int(tok)
            except ValueError:
                raise InvalidPermutation(f"bad point {tok!r} in {text!r}") from None
            if not 1 <= v <= degree:
                raise InvalidPermutation(
                    f"point {v} exceeds degree {degree} in {text!r}")
            if v - 1 in points:
                raise InvalidPermutation(f"point {v} repeats inside one cycle")
            points.append(v - 1)
        cyc = {points[i]: points[(i + 1) % len(points)] for i in range(len(points))}
        perm = [cyc.get(img, img) for img in perm]
        saw_cycle = True
        pos = end + 1
    if not saw_cycle:
        raise InvalidPermutation(f"no cycles found in {text!r}")
    return tuple(perm)


def _normalize_generator(gen, degree: int) -> tuple[int, ...]:
    if isinstance(gen, str):
        return parse_cycles(gen, degree)
    images = [int(v) for v in gen]
    if len(images) != degree:
        raise InvalidPermutation(
            f"generator has {len(images)} images, expected {degree}")
    if sorted(images) != list(range(1, degree + 1)):
        raise InvalidPermutation(f"{images} is not a bijection on 1..{degree}")
    return tuple(v - 1 for v in images)


def from_permutations(degree: int, generators: Sequence, name: str = "",
                      *, order_cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """Breadth-first closure of a permutation group given by generators.

    Generators may be cycle-notation strings or sequences of 1-based images.
    Elements are indexed in discovery order with the identity first.
    """
    if degree < 1:
        raise BadParameter(f"degree must be positive, got {degree}")
    gens = [_normalize_generator(g, degree) for g in generators]

    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    pos = 0
    while pos < len(elements):
        x = elements[pos]
        pos += 1
        for g in gens:
            y = tuple(g[v] for v in x)   # x first, then g
            if y not in index:
                if len(elements) >= order_cap:
                    raise OrderCapExceeded(order_cap, "permutation closure")
                index[y] = len(elements)
                elements.append(y)

    n = len(elements)
    perms = np.array(elements, dtype=np.int32)
    keys = {perms[i].tobytes(): i for i in range(n)}
    table = np.empty((n, n), dtype=np.int32)
    for i in range(n):
        composed = perms[:, perms[i]]    # row j = element i then element j
        table[i] = [keys[row.tobytes()] for row in composed]
    return GroupTable(table, name)


def direct_product(g: GroupTable, h: GroupTable, *,
                   order_cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """Componentwise product on pairs, indexed as i*|H| + j."""
    n = g.order * h.order
    if n > order_cap:
        raise OrderCapExceeded(order_cap, f"direct product of order {n}")
    ones_g = np.ones((g.order, g.order), dtype=np.int64)
    ones_h = np.ones((h.order, h.order), dtype=np.int64)
    table = np.kron(g.product.astype(np.int64) * h.order, ones_h) \
        + np.kron(ones_g, h.product.astype(np.int64))
    name = f"{g.name} x {h.name}" if g.name and h.name else ""
    return GroupTable(table.astype(np.int32), name)


# ---------------------------------------------------------------------------
# subgroup-flavoured operations on the parent table

def check_subgroup(g: GroupTable, s: SubgroupSet) -> None:
    """Raise NotASubgroup unless s is closed with identity and inverses."""
    if s.n != g.order:
        raise NotASubgroup(f"bit vector length {s.n} does not match order {g.order}")
    if not s.contains(0):
        raise NotASubgroup("identity is missing")
    bools = s.bools()
    m = np.flatnonzero(bools)
    prods = g.product[np.ix_(m, m)]
    ok = bools[prods]
    if not ok.all():
        flat = int((~ok).ravel().argmax())
        a, b = divmod(flat, len(m))
        raise NotASubgroup(
            f"{int(m[a])}*{int(m[b])} = {int(prods[a, b])} lies outside")
    if not bools[g.inverse[m]].all():
        bad = int(m[int((~bools[g.inverse[m]]).argmax())])
        raise NotASubgroup(f"inverse of {bad} lies outside")


def subgroup_from_members(g: GroupTable, members: Iterable[int]) -> SubgroupSet:
    s = SubgroupSet.from_members(g.order, members)
    check_subgroup(g, s)
    return s


def center(g: GroupTable) -> SubgroupSet:
    """Elements commuting with everything; always an abelian normal subgroup."""
    return SubgroupSet(g.order, mask_from_bools(g.commuting.all(axis=1)))


def centralizer(g: GroupTable, s: SubgroupSet) -> SubgroupSet:
    """Elements commuting with every member of the subgroup s."""
    check_subgroup(g, s)
    bools = g.commuting[:, s.member_array()].all(axis=1)
    return SubgroupSet(g.order, mask_from_bools(bools))


@dataclass(frozen=True)
class CosetPartition:
    """A quotient group together with the projection onto coset indices."""

    quotient: GroupTable
    projection: np.ndarray               # parent element -> coset index
    coset_members: tuple[tuple[int, ...], ...]


def quotient(g: GroupTable, n_sub: SubgroupSet) -> CosetPartition:
    """Quotient by a normal subgroup; the subgroup itself is coset 0."""
    check_subgroup(g, n_sub)
    bools = n_sub.bools()
    members = np.flatnonzero(bools)
    conj = g.conj_table[:, members]
    ok = bools[conj]
    if not ok.all():
        flat = int((~ok).ravel().argmax())
        gi, si = divmod(flat, len(members))
        raise NotNormal(int(gi), int(members[si]), int(conj[gi, si]))

    n = g.order
    proj = np.full(n, -1, dtype=np.int32)
    reps: list[int] = []
    cosets: list[tuple[int, ...]] = []
    for i in range(n):
        if proj[i] >= 0:
            continue
        coset = np.unique(g.product[i, members])
        proj[coset] = len(reps)
        reps.append(i)
        cosets.append(tuple(int(x) for x in coset))
    q = len(reps)
    rep_arr = np.array(reps, dtype=np.int32)
    qtable = proj[g.product[np.ix_(rep_arr, rep_arr)]]
    qt = GroupTable(qtable, f"{g.name}/N{n_sub.size}" if g.name else "")
    # projection must be a homomorphism onto the quotient table
    if not np.array_equal(proj[g.product], qt.product[proj[:, None], proj[None, :]]):
        raise NotNormal(0, 0, 0)
    proj.setflags(write=False)
    return CosetPartition(qt, proj, tuple(cosets))


def subgroup_as_group(g: GroupTable, s: SubgroupSet) -> tuple[GroupTable, tuple[int, ...]]:
    """Reindex a subgroup as a group of its own.

    Returns the induced GroupTable plus the map from its indices back to
    parent element indices (identity maps to identity).
    """
    check_subgroup(g, s)
    m = s.member_array()
    pos = np.full(g.order, -1, dtype=np.int32)
    pos[m] = np.arange(len(m), dtype=np.int32)
    local = pos[g.product[np.ix_(m, m)]]
    name = f"{g.name}|{len(m)}" if g.name else ""
    return GroupTable(local, name), tuple(int(x) for x in m)
