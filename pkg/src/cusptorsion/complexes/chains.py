"""Based chain complexes and twisted simplicial chains."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .local_system import LocalSystem
from .simplicial import SimplicialComplex, Simplex

RANK_RTOL = 1e-9  # relative singular-value threshold for rank decisions
RANK_FLOOR = 1e-11  # singular values below this count as zero outright


def _svd_rank(s: np.ndarray, rtol: float) -> int:
    if s.size == 0 or s[0] <= RANK_FLOOR:
        return 0
    return int(np.sum(s > rtol * s[0]))


def _rank(A: np.ndarray, rtol: float = RANK_RTOL) -> int:
    if A.size == 0:
        return 0
    return _svd_rank(np.linalg.svd(A, compute_uv=False), rtol)


def nullspace(A: np.ndarray, rtol: float = RANK_RTOL) -> np.ndarray:
    """Orthonormal basis of the kernel, columns."""
    n = A.shape[1]
    if n == 0:
        return np.zeros((0, 0))
    if A.shape[0] == 0:
        return np.eye(n)
    u, s, vt = np.linalg.svd(A)
    return vt[_svd_rank(s, rtol):].T.conj()


def column_space(A: np.ndarray, rtol: float = RANK_RTOL) -> np.ndarray:
    """Orthonormal basis of the column space, columns."""
    if A.size == 0:
        return np.zeros((A.shape[0], 0))
    u, s, vt = np.linalg.svd(A, full_matrices=False)
    return u[:, : _svd_rank(s, rtol)]


@dataclass
class BasedChainComplex:
    """Finite real chain complex with preferred bases (the identity charts).

    `boundary[i]` maps degree i to degree i-1 and has shape
    (dims[i-1], dims[i]); entries for i = 0 and i = n+1 are zero maps.
    `labels[i]` names the preferred basis vectors of degree i.
    """

    dims: list[int]
    boundary: dict[int, np.ndarray]
    labels: dict[int, list] = field(default_factory=dict)
    direction: str = "chain"

    def __post_init__(self):
        n = len(self.dims) - 1
        for i in range(n + 2):
            rows = self.dims[i - 1] if 1 <= i <= n else 0
            cols = self.dims[i] if 0 <= i <= n else 0
            if i not in self.boundary or self.boundary[i] is None:
                self.boundary[i] = np.zeros((rows, cols))
            B = np.asarray(self.boundary[i], dtype=float)
            if B.shape != (rows, cols):
                raise ValueError(f"boundary {i}: shape {B.shape} != {(rows, cols)}")
            self.boundary[i] = B
        self.check_complex()

    @property
    def top_degree(self) -> int:
        return len(self.dims) - 1

    def check_complex(self, tol: float = 1e-12) -> None:
        for i in range(2, self.top_degree + 1):
            prod = self.boundary[i - 1] @ self.boundary[i]
            if prod.size and np.max(np.abs(prod)) > tol * max(1.0, _norm(self.boundary[i - 1]) * _norm(self.boundary[i])):
                raise ValueError(f"boundary^2 != 0 between degrees {i} and {i-2}")

    def dual(self) -> "BasedChainComplex":
        """Cochain complex on the dual preferred bases.

        Degree i of the dual has differential d_i = boundary[i+1]^T mapping
        degree i to i+1; we store it as a chain complex over the reversed
        grading so the same torsion code applies.
        """
        n = self.top_degree
        dims = list(reversed(self.dims))
        bnd = {}
        for j in range(1, n + 1):
            # degree j of the reversed complex is cochain degree n - j
            bnd[j] = self.boundary[n - j + 1].T
        labels = {j: self.labels.get(n - j, []) for j in range(n + 1)}
        return BasedChainComplex(dims, bnd, labels,
                                 direction="cochain" if self.direction == "chain" else "chain")

    def betti(self, i: int) -> int:
        z = self.dims[i] - _rank(self.boundary[i])
        b = _rank(self.boundary[i + 1]) if i + 1 <= self.top_degree else 0
        return z - b

    def homology_dims(self) -> list[int]:
        return [self.betti(i) for i in range(self.top_degree + 1)]

    def harmonic_basis(self, i: int) -> np.ndarray:
        """Orthonormal representatives of H_i in the preferred inner product."""
        stack = [self.boundary[i]]
        if i + 1 <= self.top_degree:
            stack.append(self.boundary[i + 1].T)
        return nullspace(np.vstack(stack))

    def homology(self) -> list[tuple[int, np.ndarray]]:
        return [(self.betti(i), self.harmonic_basis(i)) for i in range(self.top_degree + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * d for i, d in enumerate(self.dims))


def _norm(A: np.ndarray) -> float:
    return float(np.max(np.abs(A))) if A.size else 0.0


def twisted_complex(K: SimplicialComplex, L: LocalSystem,
                    direction: str = "chain") -> BasedChainComplex:
    """Simplicial chains of K with coefficients in the local system.

    The preferred basis is (simplex, frame vector) with frames anchored at
    the least vertex of each simplex in the spanning-tree gauge; the
    boundary picks up the gauged transport on the face dropping the least
    vertex.  Pass direction="cochain" for the dual complex.
    """
    if L.base is not K:
        L = L.restrict(K)
    if not K.is_connected():
        raise ValueError("twisted complexes assume a connected base (one tree)")
    k = L.rank
    n = K.dim
    dims = [k * K.n_simplices(d) for d in range(n + 1)]
    labels = {
        d: [(s, j) for s in K.simplices.get(d, ()) for j in range(k)]
        for d in range(n + 1)
    }
    boundary: dict[int, np.ndarray] = {}
    for d in range(1, n + 1):
        rows, cols = dims[d - 1], dims[d]
        B = np.zeros((rows, cols))
        for ci, s in enumerate(K.simplices.get(d, ())):
            for i_drop in range(len(s)):
                f = s[:i_drop] + s[i_drop + 1 :]
                sign = (-1) ** i_drop
                M = L.gauged_transport(s[0], s[1]) if i_drop == 0 else np.eye(k)
                ri = K._pos[d - 1][f]
                B[ri * k : (ri + 1) * k, ci * k : (ci + 1) * k] += sign * M
        boundary[d] = B
    C = BasedChainComplex(dims, boundary, labels)
    return C.dual() if direction == "cochain" else C


def relative_twisted_complex(K: SimplicialComplex, sub: SimplicialComplex,
                             L: LocalSystem, direction: str = "chain") -> BasedChainComplex:
    """Twisted chains of K modulo those supported on a subcomplex."""
    C = twisted_complex(K, L)
    k = L.rank
    keep: dict[int, list[int]] = {}
    labels: dict[int, list] = {}
    for d in range(C.top_degree + 1):
        idx, labs = [], []
        for ci, s in enumerate(K.simplices.get(d, ())):
            if not sub.has_simplex(s):
                for j in range(k):
                    idx.append(ci * k + j)
                    labs.append((s, j))
        keep[d] = idx
        labels[d] = labs
    dims = [len(keep[d]) for d in range(C.top_degree + 1)]
    boundary = {}
    for d in range(1, C.top_degree + 1):
        boundary[d] = C.boundary[d][np.ix_(keep[d - 1], keep[d])]
    out = BasedChainComplex(dims, boundary, labels)
    return out.dual() if direction == "cochain" else out


def homology(C: BasedChainComplex) -> list[tuple[int, np.ndarray]]:
    """Per-degree (dimension, orthonormal harmonic representatives)."""
    return C.homology()
