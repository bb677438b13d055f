"""Staggered one-dimensional blocks of the conjugated Hodge Laplacian.

Per fiber mode |kappa|^2 the conjugated operator splits into quartets
indexed by the perpendicular form degree j (multiplicity binom(v-1, j)):

    degree j:     S_low  = C_a^H C_a + lam_v / w^2            (a = j - v/2)
    degree j+1:   [[C_{a+1}^H C_{a+1} + lam_v/w^2 ,  K],
                   [K^H ,  C_a C_a^H + lam_v/w^2]]
    degree j+2:   S_high = C_{a+1} C_{a+1}^H + lam_v / w^2

with K = i |kappa| (D_n C_a^H - C_{a+1}^H D_m), D = diag(1/w), and C_a the
flattened first-order factor  w d/dx + a w'  from nodes to midpoints.  The
factors make every block Hermitian positive semidefinite by construction;
a base holonomy enters as a Bloch phase on the wraparound entries.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh, eigvalsh

from .model import SpectralFamily


@dataclass
class Grid1D:
    """Periodic staggered grid on [0, 2*pi) with warp samples.

    `base_shift` is the momentum shift of the active character along the
    base circle; it enters as a Bloch phase on the wraparound entries.
    """

    family: SpectralFamily
    eps: float
    base_shift: float = 0.0

    def __post_init__(self):
        n = self.family.x_grid_size
        self.n = n
        self.h = 2 * math.pi / n
        self.x_nodes = self.h * np.arange(n)
        self.x_mids = self.x_nodes + self.h / 2
        f, e = self.family, self.eps
        self.w_n = f.warp(self.x_nodes, e)
        self.w_m = f.warp(self.x_mids, e)
        self.wp_m = f.warp_prime(self.x_mids, e)
        self.bloch = cmath.exp(2j * math.pi * self.base_shift)

    @property
    def real_bloch(self) -> bool:
        return abs(self.bloch.imag) < 1e-14

    def factor(self, a: float) -> np.ndarray:
        """Flattened C_a: nodes -> midpoints (n x n); real when the Bloch
        phase is +-1 (base angle a multiple of pi)."""
        n, h = self.n, self.h
        dtype = float if self.real_bloch else complex
        C = np.zeros((n, n), dtype=dtype)
        sm = np.sqrt(1.0 / self.w_m)   # midpoint weight^{1/2}
        sn = np.sqrt(self.w_n)         # node weight^{-1/2}
        lo = sm * (-self.w_m / h + a * self.wp_m / 2.0)
        hi = sm * (self.w_m / h + a * self.wp_m / 2.0)
        idx = np.arange(n)
        C[idx, idx] = lo * sn
        j = (idx + 1) % n
        phase = np.ones(n, dtype=dtype)
        phase[-1] = self.bloch.real if self.real_bloch else self.bloch
        C[idx, j] += hi * sn[j] * phase
        return C

    def dn(self) -> np.ndarray:
        return 1.0 / self.w_n

    def dm(self) -> np.ndarray:
        return 1.0 / self.w_m


class DirichletGrid1D(Grid1D):
    """Open grid for the eps = 0 cusp limit: Dirichlet past the first node.

    Nodes x_1 .. x_{n-1} are interior unknowns; the cusp ends x = 0 and
    x = 2*pi are truncation points where the fiber-acyclic modes decay
    like exp(-c/x), so the Dirichlet error is far below discretization.
    """

    def __post_init__(self):
        super().__post_init__()
        if self.family.closed:
            raise ValueError("the cusp limit needs a surgery model")

    def factor(self, a: float) -> np.ndarray:
        n, h = self.n, self.h
        C = np.zeros((n, n - 1))
        sm = np.sqrt(1.0 / self.w_m)
        sn = np.sqrt(self.w_n)
        for i in range(n):  # midpoints 0..n-1
            lo = -self.w_m[i] / h + a * self.wp_m[i] / 2.0
            hi = self.w_m[i] / h + a * self.wp_m[i] / 2.0
            if i - 1 >= 0 and i - 1 <= n - 2:
                C[i, i - 1] += sm[i] * lo * sn[i]
            if i <= n - 2:
                C[i, i] += sm[i] * hi * sn[i + 1]
        return C

    def dn(self) -> np.ndarray:
        return 1.0 / self.w_n[1:]


def _herm(A: np.ndarray) -> np.ndarray:
    return 0.5 * (A + A.conj().T)


def quartet_blocks(grid: Grid1D, lam_v: float, v: int, j: int) -> dict[str, np.ndarray]:
    """The three Hermitian blocks of the quartet at perpendicular degree j.

    With a real Bloch phase the coupling i*kappa*B (B real) is conjugated by
    diag(I, iI) into the real symmetric [[A, -B], [-B^T, C]].
    """
    a = j - v / 2.0
    Ca = grid.factor(a)
    Cb = grid.factor(a + 1.0)
    Dn = (grid.dn() ** 2) * lam_v
    Dm = (grid.dm() ** 2) * lam_v
    S_low = _herm(Ca.conj().T @ Ca)
    S_low[np.diag_indices_from(S_low)] += Dn
    S_high = _herm(Cb @ Cb.conj().T)
    S_high[np.diag_indices_from(S_high)] += Dm
    kap = math.sqrt(lam_v)
    B = kap * (grid.dn()[:, None] * Ca.conj().T - Cb.conj().T * grid.dm()[None, :])
    A = _herm(Cb.conj().T @ Cb)
    A[np.diag_indices_from(A)] += Dn
    Cc = _herm(Ca @ Ca.conj().T)
    Cc[np.diag_indices_from(Cc)] += Dm
    if np.isrealobj(Ca):
        top = np.hstack([A, -B])
        bot = np.hstack([-B.T, Cc])
        M = _herm(np.vstack([top, bot]))
    else:
        top = np.hstack([A, 1j * B])
        bot = np.hstack([(1j * B).conj().T, Cc])
        M = _herm(np.vstack([top, bot]))
    return {"low": S_low, "mid": M, "high": S_high}


def scalar_blocks_kappa0(grid: Grid1D, v: int) -> dict[int, list[tuple[np.ndarray, int]]]:
    """Blocks of the zero fiber mode: everything decouples by vertical degree."""
    out: dict[int, list[tuple[np.ndarray, int]]] = {}
    for q in range(v + 1):
        a = q - v / 2.0
        Ca = grid.factor(a)
        top = _herm(Ca.conj().T @ Ca)
        bot = _herm(Ca @ Ca.conj().T)
        out.setdefault(q, []).append((top, math.comb(v, q)))       # tangential
        out.setdefault(q + 1, []).append((bot, math.comb(v, q)))   # dx-component
    return out


def mode_eigenvalues(grid: Grid1D, lam_v: float, v: int,
                     lam_max: float | None = None) -> dict[int, list[tuple[float, int]]]:
    """Eigenvalues per total form degree for one fiber mode of one character."""
    out: dict[int, list[tuple[float, int]]] = {d: [] for d in range(v + 2)}

    def put(degree: int, vals: np.ndarray, mult: int):
        for lam in vals:
            lam = float(max(lam, 0.0)) if lam > -1e-10 else float(lam)
            if lam_max is None or lam <= lam_max:
                out[degree].append((lam, mult))

    if lam_v <= 1e-12:
        for q, blocks in scalar_blocks_kappa0(grid, v).items():
            if q > v + 1:
                continue
            for A, mult in blocks:
                put(q, eigvalsh(A), mult)
        return out
    for j in range(v):
        mult = math.comb(v - 1, j)
        blocks = quartet_blocks(grid, lam_v, v, j)
        put(j, eigvalsh(blocks["low"]), mult)
        put(j + 1, eigvalsh(blocks["mid"]), mult)
        put(j + 2, eigvalsh(blocks["high"]), mult)
    return out
