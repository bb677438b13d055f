"""Smith normal form over the integers and integer cochain torsion."""

from __future__ import annotations

from fractions import Fraction

import numpy as np


def smith_normal_form(A: list[list[int]]) -> tuple[list[int], int]:
    """Invariant factors (nonzero diagonal of the SNF) and the rank.

    Plain exact algorithm with Python integers; fine at desk scale.
    """
    M = [[int(x) for x in row] for row in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    divisors: list[int] = []
    r = 0
    while True:
        pr = pc = None
        best = None
        for i in range(r, rows):
            for j in range(r, cols):
                if M[i][j] != 0 and (best is None or abs(M[i][j]) < best):
                    best, pr, pc = abs(M[i][j]), i, j
        if pr is None:
            break
        M[r], M[pr] = M[pr], M[r]
        for row in M:
            row[r], row[pc] = row[pc], row[r]
        while True:
            # reduce the pivot column, then the pivot row; when a remainder
            # appears it is strictly smaller than the pivot, so swapping it
            # into the pivot slot makes |pivot| strictly decrease
            reduced = True
            for i in range(r + 1, rows):
                if M[i][r]:
                    q = M[i][r] // M[r][r]
                    for j in range(r, cols):
                        M[i][j] -= q * M[r][j]
                    if M[i][r]:
                        M[r], M[i] = M[i], M[r]
                        reduced = False
                        break
            if not reduced:
                continue
            for j in range(r + 1, cols):
                if M[r][j]:
                    q = M[r][j] // M[r][r]
                    for i in range(r, rows):
                        M[i][j] -= q * M[i][r]
                    if M[r][j]:
                        for i in range(r, rows):
                            M[i][r], M[i][j] = M[i][j], M[i][r]
                        reduced = False
                        break
            if reduced:
                break
        divisors.append(abs(M[r][r]))
        r += 1
    # enforce divisibility chain
    for i in range(len(divisors)):
        for j in range(i + 1, len(divisors)):
            a, b = divisors[i], divisors[j]
            g = _gcd(a, b)
            l = a * b // g if g else 0
            divisors[i], divisors[j] = g, l
    return sorted(divisors), r


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


class IntegerCochainComplex:
    """Finite complex of free abelian groups, maps d_i: F^i -> F^{i+1}."""

    def __init__(self, dims: list[int], differentials: dict[int, list[list[int]]]):
        self.dims = dims
        self.d: dict[int, list[list[int]]] = {}
        n = len(dims) - 1
        for i in range(n):
            D = differentials.get(i)
            if D is None:
                D = [[0] * dims[i] for _ in range(dims[i + 1])]
            if len(D) != dims[i + 1] or (D and len(D[0]) != dims[i]):
                raise ValueError(f"differential {i} has wrong shape")
            if any(not _is_int(x) for row in D for x in row):
                raise ValueError("differentials must be integral")
            self.d[i] = [[int(x) for x in row] for row in D]
        for i in range(n - 1):
            comp = _matmul(self.d[i + 1], self.d[i])
            if any(x != 0 for row in comp for x in row):
                raise ValueError("d^2 != 0")

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def torsion_orders(self) -> list[int]:
        """O_i = order of the torsion subgroup of H^i, i = 0..n."""
        out = []
        for i in range(self.top + 1):
            if i == 0:
                out.append(1)
                continue
            divisors, _ = smith_normal_form(self.d[i - 1]) if self.dims[i - 1] and self.dims[i] else ([], 0)
            order = 1
            for s in divisors:
                order *= s
            out.append(order)
        return out

    def betti(self) -> list[int]:
        ranks = {}
        for i in range(self.top):
            _, ranks[i] = smith_normal_form(self.d[i]) if self.dims[i] and self.dims[i + 1] else ([], 0)
        out = []
        for i in range(self.top + 1):
            z = self.dims[i] - ranks.get(i, 0)
            b = ranks.get(i - 1, 0)
            out.append(z - b)
        return out

    def realified(self):
        """Real cochain model (reversed-grading BasedChainComplex) and maps."""
        from ..complexes.chains import BasedChainComplex

        n = self.top
        dims = list(reversed(self.dims))
        bnd = {}
        for j in range(1, n + 1):
            # chain degree j holds cochain degree n - j; boundary = d_{n-j},
            # already shaped (dims[n-j+1], dims[n-j])
            bnd[j] = np.array(self.d[n - j], dtype=float)
        return BasedChainComplex(dims, bnd)


def _is_int(x) -> bool:
    return isinstance(x, (int, np.integer))


def _matmul(A: list[list[int]], B: list[list[int]]) -> list[list[int]]:
    if not A or not B:
        return []
    return [
        [sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
        for i in range(len(A))
    ]


def integer_torsion(C: IntegerCochainComplex) -> Fraction:
    """prod_i O_i^{(-1)^{i-1}} over the torsion subgroup orders of H^i."""
    tau = Fraction(1)
    for i, O in enumerate(C.torsion_orders()):
        if (i - 1) % 2 == 0:
            tau *= O
        else:
            tau /= O
    return tau
