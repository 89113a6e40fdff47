"""Constructors for the standard group families used by the corpus.

Every family is realized through explicit permutation generators fed to the
breadth-first closure, so all tables share the identity-first indexing.  For
the two families without a small natural action (generalized quaternion and
the modular p**3 group) the generators are the right-regular permutations
derived from the normal-form multiplication.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .errors import BadParameter
from .groups import (
    DEFAULT_ORDER_CAP,
    GroupTable,
    from_permutations,
    prime_power_or_none,
)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _cycle(points: Sequence[int]) -> str:
    return "(" + " ".join(str(p) for p in points) + ")"


def cyclic(n: int, *, order_cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """Cyclic group of order n."""
    if n < 1:
        raise BadParameter(f"cyclic order must be positive, got {n}")
    gens = [] if n == 1 else [_cycle(range(1, n + 1))]
    return from_permutations(max(n, 1), gens, f"cyclic({n})", order_cap=order_cap)


def elemab(p: int, k: int, *, order_cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """Elementary abelian group (Z/p)**k, one p-cycle per block of points."""
    if not _is_prime(p):
        raise BadParameter(f"elemab needs a prime, got {p}")
    if k < 1:
        raise BadParameter(f"elemab exponent must be >= 1, got {k}")
    if p ** k > order_cap:
        raise BadParameter(f"elemab({p},{k}) has order {p ** k} beyond cap {order_cap}")
    gens = [_cycle(range(i * p + 1, (i + 1) * p + 1)) for i in range(k)]
    return from_permutations(p * k, gens, f"elemab({p},{k})", order_cap=order_cap)


def dihedral(n: int, *, order_cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """Dihedral group of order 2n (symmetries of the n-gon for n >= 3)."""
    if n < 1:
        raise BadParameter(f"dihedral parameter must be positive, got {n}")
    if n == 1:
        return from_permutations(2, ["(1 2)"], "dihedral(1)", order_cap=order_cap)
    if n == 2:
        return from_permutations(4, ["(1 2)", "(3 4)"], "dihedral(2)",
                                 order_cap=order_cap)
    rot = _cycle(range(1, n + 1))
    flip = "".join(_cycle((i, n + 2 - i)) for i in range(2, n // 2 + 2) if i != n + 2 - i)
    return from_permutations(n, [rot, flip], f"dihedral({n})", order_cap=order_cap)


def _regular_generators(n: int, mul: Callable[[int, int], int],
                        gens: Sequence[int]) -> list[tuple[int, ...]]:
    """Right-regular permutations x -> x*g on 1-based points for each g."""
    return [tuple(mul(x, g) + 1 for x in range(n)) for g in gens]


def genquat(n: int, *, order_cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """Generalized quaternion group of order n = 2**k, k >= 3.

    Normal form a**i * b**j with a of order n/2, b**2 = a**(n/4) and
    b*a*b**-1 = a**-1; realized through its regular action.
    """
    if n < 8 or prime_power_or_none(n) != (2, n.bit_length() - 1):
        raise BadParameter(f"genquat needs a power of 2 that is >= 8, got {n}")
    if n > order_cap:
        raise BadParameter(f"genquat({n}) exceeds cap {order_cap}")
    h = n // 2

    def unpack(x: int) -> tuple[int, int]:
        return x % h, x // h

    def pack(i: int, j: int) -> int:
        return (j % 2) * h + i % h

    def mul(x: int, y: int) -> int:
        i1, j1 = unpack(x)
        i2, j2 = unpack(y)
        if j1 == 0:
            return pack(i1 + i2, j2)
        if j2 == 0:
            return pack(i1 - i2, 1)
        return pack(i1 - i2 + h // 2, 0)

    gens = _regular_generators(n, mul, [pack(1, 0), pack(0, 1)])
    return from_permutations(n, gens, f"genquat({n})", order_cap=order_cap)


def heisenberg(p: int, *, order_cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """Group of order p**3 acting on the affine plane over Z/p.

    For odd p this is the extraspecial group of exponent p (the unitriangular
    3x3 matrices); the triple (a, b, c) sends (x, y) to (x+a, y+c*x+b).
    """
    if not _is_prime(p):
        raise BadParameter(f"heisenberg needs a prime, got {p}")
    if p ** 3 > order_cap:
        raise BadParameter(f"heisenberg({p}) has order {p ** 3} beyond cap {order_cap}")

    def act(a: int, b: int, c: int) -> tuple[int, ...]:
        return tuple((((x + a) % p) * p + (y + c * x + b) % p) + 1
                     for x in range(p) for y in range(p))

    gens = [act(1, 0, 0), act(0, 0, 1)]
    return from_permutations(p * p, gens, f"heisenberg({p})", order_cap=order_cap)


def modular_p3(p: int, *, order_cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """Order p**3 with a cyclic subgroup of index p, for odd primes.

    Normal form a**i * b**j with a of order p**2 and b*a*b**-1 = a**(1+p);
    realized through its regular action.
    """
    if not _is_prime(p) or p == 2:
        raise BadParameter(f"modular_p3 needs an odd prime, got {p}")
    n = p ** 3
    if n > order_cap:
        raise BadParameter(f"modular_p3({p}) has order {n} beyond cap {order_cap}")
    pp = p * p

    def mul(x: int, y: int) -> int:
        i1, j1 = x % pp, x // pp
        i2, j2 = y % pp, y // pp
        i = (i1 + i2 * pow(1 + p, j1, pp)) % pp
        return ((j1 + j2) % p) * pp + i

    gens = _regular_generators(n, mul, [1, pp])
    return from_permutations(n, gens, f"modular_p3({p})", order_cap=order_cap)


def wreath_pp(p: int, *, order_cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """Wreath product of Z/p with Z/p acting on p blocks of p points.

    Order p**(p+1); for p = 2 this is the dihedral group of order 8.
    """
    if not _is_prime(p):
        raise BadParameter(f"wreath_pp needs a prime, got {p}")
    if p ** (p + 1) > order_cap:
        raise BadParameter(
            f"wreath_pp({p}) has order {p ** (p + 1)} beyond cap {order_cap}")
    rot = _cycle(range(1, p + 1))
    shift = "".join(_cycle(range(j, p * p + 1, p)) for j in range(1, p + 1))
    return from_permutations(p * p, [rot, shift], f"wreath_pp({p})",
                             order_cap=order_cap)


FAMILIES: dict[str, Callable[..., GroupTable]] = {
    "cyclic": cyclic,
    "elemab": elemab,
    "dihedral": dihedral,
    "genquat": genquat,
    "heisenberg": heisenberg,
    "modular_p3": modular_p3,
    "wreath_pp": wreath_pp,
}


def family(name: str, args: Sequence[int], *,
           order_cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """Dispatch to a family constructor by name."""
    ctor = FAMILIES.get(name)
    if ctor is None:
        raise BadParameter(f"unknown family {name!r}; known: {sorted(FAMILIES)}")
    try:
        return ctor(*args, order_cap=order_cap)
    except TypeError:
        raise BadParameter(
            f"{name} does not accept {len(args)} parameter(s)") from None
