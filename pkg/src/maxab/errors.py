"""Exception types shared across the package."""

from __future__ import annotations


class GroupError(Exception):
    """Base class for every error raised by this package."""


class BadParameter(GroupError):
    """A constructor was called with parameters outside its domain."""


class NotClosed(GroupError):
    """A multiplication table entry falls outside the element range."""

    def __init__(self, row: int, col: int, value: int, order: int):
        self.row, self.col, self.value = row, col, value
        super().__init__(
            f"table entry at ({row}, {col}) is {value}, outside [0, {order})"
        )


class NoIdentity(GroupError):
    """No element acts as a two-sided identity."""


class NoInverse(GroupError):
    """Some element has no two-sided inverse."""

    def __init__(self, element: int):
        self.element = element
        super().__init__(f"element {element} has no two-sided inverse")


class NotAssociative(GroupError):
    """The table violates associativity; carries the first witnessing triple."""

    def __init__(self, triple: tuple[int, int, int]):
        self.triple = triple
        i, j, k = triple
        super().__init__(f"({i}*{j})*{k} != {i}*({j}*{k})")


class OrderCapExceeded(GroupError):
    """A construction would produce a group larger than the configured cap."""

    def __init__(self, cap: int, detail: str = ""):
        self.cap = cap
        msg = f"group order exceeds cap {cap}"
        super().__init__(msg + (f" ({detail})" if detail else ""))


class EnumerationCapExceeded(GroupError):
    """Subgroup enumeration was refused because the group is too large."""


class InvalidPermutation(GroupError):
    """A generator is not a valid permutation of {1..degree}."""


class NotPrimePower(GroupError):
    """The integer is not p**k for a prime p and k >= 1.

    ``trivial`` is set for n == 1, which has no prime but is allowed
    everywhere as a degenerate case.
    """

    def __init__(self, n: int, trivial: bool = False):
        self.n = n
        self.trivial = trivial
        detail = "the trivial case 1" if trivial else str(n)
        super().__init__(f"{detail} is not a prime power p**k with k >= 1")


class TrivialGroup(GroupError):
    """The operation is undefined on the one-element group."""


class NotASubgroup(GroupError):
    """The element set is not closed under product and inverse."""

    def __init__(self, detail: str):
        super().__init__(f"not a subgroup: {detail}")


class NotNormal(GroupError):
    """Conjugation moves the subgroup; carries a witnessing pair."""

    def __init__(self, g: int, s: int, image: int):
        self.g, self.s, self.image = g, s, image
        super().__init__(
            f"subgroup is not normal: {g}*{s}*{g}^-1 = {image} lies outside"
        )


class NotNested(GroupError):
    """The pair of subgroups is not nested (S is not contained in T)."""


class Overflow(GroupError):
    """An exact integer result does not fit the declared 64-bit range."""


class ParseError(GroupError):
    """Malformed group-file or expression text; 1-based line numbers."""

    def __init__(self, message: str, line: int, column: int | None = None):
        self.line = line
        self.column = column
        at = f"line {line}" + (f", column {column}" if column is not None else "")
        super().__init__(f"{at}: {message}")


class DuplicateName(GroupError):
    """Two group specs in one corpus share a name."""

    def __init__(self, name: str, line: int):
        self.name = name
        self.line = line
        super().__init__(f"line {line}: duplicate group name {name!r}")


class IoError(GroupError):
    """Reading or writing a corpus or report stream failed."""
