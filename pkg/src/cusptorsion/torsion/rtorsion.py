"""R-torsion of based real (co)chain complexes.

All torsions are carried as natural logarithms.  The image bases b_i are
orthonormal (column-pivoted orthogonal factorization of the boundary);
the result does not depend on that choice and tests exercise this.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..complexes.chains import BasedChainComplex, column_space, nullspace, _rank


@dataclass(frozen=True)
class TorsionValue:
    log_value: float

    @property
    def value(self) -> float:
        return float(np.exp(self.log_value))

    def __add__(self, other: "TorsionValue") -> "TorsionValue":
        return TorsionValue(self.log_value + other.log_value)

    def __sub__(self, other: "TorsionValue") -> "TorsionValue":
        return TorsionValue(self.log_value - other.log_value)


def _as_cols(x, dim: int) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.size == 0:
        return np.zeros((dim, 0))
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.shape[0] != dim:
        raise ValueError(f"representative block has {arr.shape[0]} rows, expected {dim}")
    return arr


def basis_change_det(u: np.ndarray, v: np.ndarray) -> float:
    """[u|v] = |det W| for bases related by u_i = sum_j W_ij v_j (columns)."""
    u = np.atleast_2d(np.asarray(u, dtype=float))
    v = np.atleast_2d(np.asarray(v, dtype=float))
    if u.shape != v.shape or u.shape[0] < u.shape[1]:
        raise ValueError("bases must be column sets of equal shape")
    if u.shape[1] == 0:
        return 1.0
    W, *_ = np.linalg.lstsq(v, u, rcond=None)
    if np.max(np.abs(v @ W - u)) > 1e-8 * max(1.0, np.max(np.abs(u))):
        raise ValueError("u does not lie in the span of v")
    sign, logdet = np.linalg.slogdet(W.T)
    if sign == 0.0:
        raise ValueError("singular change of basis (u is not a basis)")
    return float(np.exp(logdet))


def _validate_homology_basis(C: BasedChainComplex, h: Sequence[np.ndarray]) -> None:
    for i in range(C.top_degree + 1):
        hi = _as_cols(h[i], C.dims[i])
        bi = C.betti(i)
        if hi.shape[1] != bi:
            raise ValueError(f"degree {i}: homology basis has {hi.shape[1]} vectors, needs {bi}")
        if bi == 0:
            continue
        B = C.boundary[i]
        if B.size and np.max(np.abs(B @ hi)) > 1e-7 * max(1.0, np.max(np.abs(hi))):
            raise ValueError(f"degree {i}: homology representatives are not cycles")
        img = column_space(C.boundary[i + 1]) if i + 1 <= C.top_degree else np.zeros((C.dims[i], 0))
        if _rank(np.hstack([img, hi])) != img.shape[1] + bi:
            raise ValueError(f"degree {i}: homology representatives do not span")


def empty_homology_basis(C: BasedChainComplex) -> list[np.ndarray]:
    return [np.zeros((C.dims[i], 0)) for i in range(C.top_degree + 1)]


def harmonic_homology_basis(C: BasedChainComplex) -> list[np.ndarray]:
    return [C.harmonic_basis(i) for i in range(C.top_degree + 1)]


def log_torsion(C: BasedChainComplex, h: Sequence[np.ndarray] | None = None,
                image_bases: Sequence[np.ndarray] | None = None) -> TorsionValue:
    """Chain-convention torsion: prod_i [b_i h_i b_{i-1} | c_i]^{(-1)^i}.

    `h` lists homology representatives per degree (defaults to orthonormal
    harmonic ones); `image_bases` overrides the internal orthonormal choice
    of a basis of each image space (used by the independence tests).
    """
    n = C.top_degree
    if h is None:
        h = harmonic_homology_basis(C)
    _validate_homology_basis(C, h)
    b = []
    for i in range(n + 1):
        if image_bases is not None:
            b.append(np.asarray(image_bases[i], dtype=float).reshape(C.dims[i], -1))
        else:
            b.append(column_space(C.boundary[i + 1]) if i + 1 <= n else np.zeros((C.dims[i], 0)))
    log_tau = 0.0
    for i in range(n + 1):
        cols = [b[i], _as_cols(h[i], C.dims[i])]
        if i >= 1 and b[i - 1].shape[1]:
            pre, *_ = np.linalg.lstsq(C.boundary[i], b[i - 1], rcond=None)
            resid = C.boundary[i] @ pre - b[i - 1]
            if np.max(np.abs(resid)) > 1e-8:
                raise ValueError(f"degree {i}: image basis has no preimage")
            cols.append(pre)
        M = np.hstack(cols) if C.dims[i] else np.zeros((0, 0))
        if M.shape[0] != M.shape[1]:
            raise ValueError(
                f"degree {i}: basis count {M.shape[1]} != dimension {M.shape[0]}"
            )
        if M.size == 0:
            continue
        sign, logdet = np.linalg.slogdet(M)
        if sign == 0.0:
            raise ValueError(f"degree {i}: assembled basis is singular")
        log_tau += (-1) ** i * logdet
    return TorsionValue(float(log_tau))


def log_torsion_cochain(C: BasedChainComplex, h: Sequence[np.ndarray] | None = None) -> TorsionValue:
    """Cochain-convention torsion: prod_q [c^q | b^q h^q b^{q+1}]^{(-1)^q}.

    The cochain complex is passed through its reversed chain model (see
    BasedChainComplex.dual): cochain degree q sits at chain degree n - q
    and the differential d_q is boundary[n - q].
    """
    n = C.top_degree
    if h is None:
        h = harmonic_homology_basis(C)
    _validate_homology_basis(C, h)
    log_tau = 0.0
    for q in range(n + 1):
        i = n - q  # chain degree holding cochain degree q
        dim = C.dims[i]
        # b^q: image of d_{q-1} = boundary[i+1]
        bq = column_space(C.boundary[i + 1]) if i + 1 <= n else np.zeros((dim, 0))
        cols = [bq, _as_cols(h[i], dim)]
        # b^{q+1} preimages under d_q = boundary[i]
        nxt = column_space(C.boundary[i]) if i >= 1 else np.zeros((0, 0))
        if i >= 1 and nxt.shape[1]:
            pre, *_ = np.linalg.lstsq(C.boundary[i], nxt, rcond=None)
            cols.append(pre)
        M = np.hstack(cols) if dim else np.zeros((0, 0))
        if M.shape[0] != M.shape[1]:
            raise ValueError(f"cochain degree {q}: basis count mismatch")
        if M.size == 0:
            continue
        sign, logdet = np.linalg.slogdet(M)
        if sign == 0.0:
            raise ValueError(f"cochain degree {q}: singular assembled basis")
        # [c^q | M] = 1/|det M|
        log_tau += (-1) ** q * (-logdet)
    return TorsionValue(float(log_tau))
