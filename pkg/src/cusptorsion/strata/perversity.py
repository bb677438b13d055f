"""Perversity sequences."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Perversity:
    """Values p_2, p_3, ... (index k = codimension), p_2 = 0, unit steps."""

    values: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        if self.values:
            if self.values[0] != 0:
                raise ValueError("p_2 must vanish")
            for a, b in zip(self.values, self.values[1:]):
                if b not in (a, a + 1):
                    raise ValueError("perversity steps must be 0 or 1")

    def __call__(self, k: int) -> int:
        if k < 2:
            raise ValueError("perversities start at codimension 2")
        if k - 2 >= len(self.values):
            raise ValueError(f"perversity defined up to k={len(self.values)+1}, asked {k}")
        return self.values[k - 2]

    @property
    def top_codim(self) -> int:
        return len(self.values) + 1

    def leq(self, other: "Perversity") -> bool:
        n = min(len(self.values), len(other.values))
        return all(self.values[i] <= other.values[i] for i in range(n))


def upper_middle(m: int) -> Perversity:
    """m-bar(k) = floor((k-1)/2) for k = 2..m."""
    return Perversity(tuple((k - 1) // 2 for k in range(2, max(m, 2) + 1)), name="upper-middle")


def zero_perversity(m: int) -> Perversity:
    return Perversity(tuple(0 for _ in range(2, max(m, 2) + 1)), name="zero")


def top_perversity(m: int) -> Perversity:
    return Perversity(tuple(k - 2 for k in range(2, max(m, 2) + 1)), name="top")
