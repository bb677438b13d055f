"""Index sets of polyhomogeneous expansions.

An index set records the exponents (z, p) occurring in an expansion
sum c * rho^z * (log rho)^p at a boundary face.  Orders z are exact
rationals; p is the log power.  Every set is closed under the rules

    (z, p) in E  =>  (z + 1, p) in E,
    (z, p) in E, p > 0  =>  (z, p - 1) in E,

so a set is an (infinite) union of integer-step staircases and is stored
by its finite antichain of minimal generators.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

Orderish = Union[int, Fraction, str]


def _as_order(z: Orderish) -> Fraction:
    if isinstance(z, Fraction):
        return z
    if isinstance(z, int):
        return Fraction(z)
    if isinstance(z, str):
        return Fraction(z)
    raise TypeError(f"index-set order must be rational, got {z!r}")


def _dominates(a: tuple[Fraction, int], b: tuple[Fraction, int]) -> bool:
    """True if generator `a` implies `b` under the closure rules."""
    za, pa = a
    zb, pb = b
    d = zb - za
    return d >= 0 and d.denominator == 1 and pb <= pa


class IndexSet:
    """Closed set of (order, log power) pairs, in canonical generator form."""

    __slots__ = ("generators",)

    def __init__(self, pairs: Iterable[tuple[Orderish, int]] = ()):
        gens: list[tuple[Fraction, int]] = []
        for z, p in pairs:
            zp = (_as_order(z), int(p))
            if zp[1] < 0:
                raise ValueError("log power must be a nonnegative integer")
            gens.append(zp)
        self.generators: frozenset[tuple[Fraction, int]] = frozenset(_canonic(gens))

    # -- basic protocol -------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, IndexSet) and self.generators == other.generators

    def __hash__(self) -> int:
        return hash(self.generators)

    def __bool__(self) -> bool:
        return bool(self.generators)

    @property
    def is_empty(self) -> bool:
        return not self.generators

    def __repr__(self) -> str:
        if self.is_empty:
            return "IndexSet()"
        items = ", ".join(f"({z}, {p})" for z, p in self.sorted_generators())
        return f"IndexSet([{items}])"

    def sorted_generators(self) -> list[tuple[Fraction, int]]:
        return sorted(self.generators)

    # -- membership and inf ---------------------------------------------

    def __contains__(self, pair: tuple[Orderish, int]) -> bool:
        z, p = _as_order(pair[0]), int(pair[1])
        return any(_dominates(g, (z, p)) for g in self.generators)

    @property
    def inf(self) -> Fraction | None:
        """Infimum of the orders; None for the empty set (= +infinity)."""
        if self.is_empty:
            return None
        return min(z for z, _ in self.generators)

    def max_log_at(self, z: Orderish) -> int:
        """Largest log power present at order z, or -1 if z is absent."""
        z = _as_order(z)
        best = -1
        for zg, pg in self.generators:
            d = z - zg
            if d >= 0 and d.denominator == 1:
                best = max(best, pg)
        return best

    # -- comparisons used by the resolvent constraints -------------------

    def inf_gt(self, a: Orderish) -> bool:
        """Paper convention: every (z, k) has Re z > a.  Empty set passes."""
        a = _as_order(a)
        return all(z > a for z, _ in self.generators)

    def inf_ge(self, a: Orderish) -> bool:
        """Paper convention: (z, k) with Re z <= a forces (z, k) = (a, 0)."""
        a = _as_order(a)
        return all(z > a or (z == a and p == 0) for z, p in self.generators)

    # -- algebra ----------------------------------------------------------

    def shift(self, a: Orderish) -> "IndexSet":
        """Add the rational a to every order."""
        a = _as_order(a)
        return IndexSet((z + a, p) for z, p in self.generators)

    def dilate(self, e: int) -> "IndexSet":
        """Scale orders by a positive integer (pullback through rho -> rho^e)."""
        if e <= 0:
            raise ValueError("dilation factor must be a positive integer")
        return IndexSet((z * e, p) for z, p in self.generators)

    def divide(self, e: int) -> "IndexSet":
        """Divide orders by a positive integer (pushforward through rho^e)."""
        if e <= 0:
            raise ValueError("division factor must be a positive integer")
        return IndexSet((z / e, p) for z, p in self.generators)

    def __add__(self, other: "IndexSet") -> "IndexSet":
        """Minkowski sum; the empty set is absorbing."""
        if not isinstance(other, IndexSet):
            return NotImplemented
        if self.is_empty or other.is_empty:
            return EMPTY
        return IndexSet(
            (z1 + z2, p1 + p2)
            for z1, p1 in self.generators
            for z2, p2 in other.generators
        )

    def union(self, other: "IndexSet") -> "IndexSet":
        return IndexSet(list(self.generators) + list(other.generators))

    def extended_union(self, other: "IndexSet") -> "IndexSet":
        """E extended-union F: the union plus (z, p1+p2+1) at shared orders."""
        gens = list(self.generators) + list(other.generators)
        for z in {zg for zg, _ in gens}:
            p1 = self.max_log_at(z)
            p2 = other.max_log_at(z)
            if p1 >= 0 and p2 >= 0:
                gens.append((z, p1 + p2 + 1))
        return IndexSet(gens)

    def e_infinity(self, max_terms: int = 1000) -> "IndexSet":
        """Union of all k-fold Minkowski sums of a positive index set.

        Terminates once a further summand adds nothing new; index sets with
        log-power generators need not stabilize, hence the iteration guard.
        """
        if self.is_empty:
            return EMPTY
        if not self.inf_gt(0):
            raise ValueError("e_infinity requires a positive index set (inf > 0)")
        acc = self
        power = self
        for _ in range(max_terms):
            power = power + self
            nxt = acc.union(power)
            if nxt == acc:
                return acc
            acc = nxt
        raise ValueError("e_infinity did not stabilize (log generators present?)")


def _canonic(gens: list[tuple[Fraction, int]]) -> list[tuple[Fraction, int]]:
    # domination is a partial order, so the antichain of undominated
    # elements is the unique minimal generating set
    uniq = sorted(set(gens))
    return [g for g in uniq if not any(h != g and _dominates(h, g) for h in uniq)]


EMPTY = IndexSet()


def natural(shift: Orderish = 0) -> IndexSet:
    """The smooth ladder shift + N0, the index set of a smooth function."""
    return IndexSet([(shift, 0)])


def from_orders(orders: Iterable[Orderish]) -> IndexSet:
    return IndexSet((z, 0) for z in orders)
