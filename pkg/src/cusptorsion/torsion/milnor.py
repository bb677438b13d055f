"""Milnor multiplicativity for short exact sequences of cochain complexes."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..complexes.chains import BasedChainComplex, column_space, nullspace
from .rtorsion import TorsionValue, _as_cols, harmonic_homology_basis, log_torsion_cochain


class CochainSES:
    """0 -> C' -> C -> C'' -> 0 with compatible preferred bases.

    Complexes are given in the reversed chain model (cochain degree q at
    chain degree n - q); inclusion and projection are per-cochain-degree
    matrices written in the preferred bases, and compatibility means the
    inclusion is (a permutation of) the first columns and the projection
    kills exactly those.
    """

    def __init__(self, sub: BasedChainComplex, total: BasedChainComplex,
                 quot: BasedChainComplex,
                 inclusion: Sequence[np.ndarray], projection: Sequence[np.ndarray]):
        self.sub, self.total, self.quot = sub, total, quot
        n = total.top_degree
        if sub.top_degree != n or quot.top_degree != n:
            raise ValueError("complexes must share the grading range")
        self.inclusion = [np.asarray(M, dtype=float) for M in inclusion]
        self.projection = [np.asarray(M, dtype=float) for M in projection]
        for q in range(n + 1):
            i = n - q
            inc, prj = self.inclusion[q], self.projection[q]
            if inc.shape != (total.dims[i], sub.dims[i]):
                raise ValueError(f"inclusion shape mismatch at degree {q}")
            if prj.shape != (quot.dims[i], total.dims[i]):
                raise ValueError(f"projection shape mismatch at degree {q}")
            if prj.size and inc.size and np.max(np.abs(prj @ inc)) > 1e-10:
                raise ValueError(f"projection o inclusion != 0 at degree {q}")
            # exactness of the based sequence
            if np.linalg.matrix_rank(np.hstack([inc, prj.T])) != total.dims[i]:
                raise ValueError(f"sequence not exact at degree {q}")

    @property
    def top(self) -> int:
        return self.total.top_degree

    def d(self, complex_: BasedChainComplex, q: int) -> np.ndarray:
        """Cochain differential d_q of a reversed-model complex."""
        n = complex_.top_degree
        return complex_.boundary[n - q]

    def _class_coords(self, complex_: BasedChainComplex, q: int,
                      z: np.ndarray, h: np.ndarray) -> np.ndarray:
        """Coordinates of the class [z] in the cohomology basis h."""
        n = complex_.top_degree
        i = n - q
        z = np.asarray(z, dtype=float)
        ncols = z.shape[1] if z.ndim == 2 else (1 if z.size else 0)
        z = z.reshape(complex_.dims[i], ncols) if z.size else np.zeros((complex_.dims[i], ncols))
        if h.shape[1] == 0 or ncols == 0:
            return np.zeros((h.shape[1], ncols))
        prev = complex_.boundary[i + 1] if i + 1 <= n else np.zeros((complex_.dims[i], 0))
        A = np.hstack([h, prev])
        sol, *_ = np.linalg.lstsq(A, z, rcond=None)
        if np.max(np.abs(A @ sol - z)) > 1e-7 * max(1.0, float(np.max(np.abs(z)))):
            raise ValueError("representative is not a cocycle modulo coboundaries")
        return sol[: h.shape[1]]

    def long_exact_sequence(
        self,
        h_sub: Sequence[np.ndarray] | None = None,
        h_tot: Sequence[np.ndarray] | None = None,
        h_quot: Sequence[np.ndarray] | None = None,
    ) -> BasedChainComplex:
        """The cohomology long exact sequence as a based acyclic cochain complex.

        Slot 3q holds H^q(C'), slot 3q+1 holds H^q(C), slot 3q+2 holds
        H^q(C''); the preferred bases are the given cohomology bases.
        """
        n = self.top
        h_sub = h_sub if h_sub is not None else harmonic_homology_basis(self.sub)
        h_tot = h_tot if h_tot is not None else harmonic_homology_basis(self.total)
        h_quot = h_quot if h_quot is not None else harmonic_homology_basis(self.quot)
        h_sub = [_as_cols(h_sub[i], self.sub.dims[i]) for i in range(n + 1)]
        h_tot = [_as_cols(h_tot[i], self.total.dims[i]) for i in range(n + 1)]
        h_quot = [_as_cols(h_quot[i], self.quot.dims[i]) for i in range(n + 1)]

        dims: list[int] = []
        maps: dict[int, np.ndarray] = {}
        for q in range(n + 1):
            i = n - q
            dims += [h_sub[i].shape[1], h_tot[i].shape[1], h_quot[i].shape[1]]
        slots = len(dims)

        def slot_map(k: int) -> np.ndarray:
            """Differential from slot k to slot k+1."""
            q, r = divmod(k, 3)
            i = self.top - q
            if r == 0:  # H^q(C') -> H^q(C): push representatives through iota
                z = self.inclusion[q] @ h_sub[i]
                return self._class_coords(self.total, q, z, h_tot[i])
            if r == 1:  # H^q(C) -> H^q(C'')
                z = self.projection[q] @ h_tot[i]
                return self._class_coords(self.quot, q, z, h_quot[i])
            # connecting map H^q(C'') -> H^{q+1}(C')
            if q + 1 > self.top:
                return np.zeros((0, h_quot[i].shape[1]))
            zq = h_quot[i]
            if zq.shape[1] == 0:
                return np.zeros((h_sub[self.top - q - 1].shape[1], 0))
            lift, *_ = np.linalg.lstsq(self.projection[q], zq, rcond=None)
            dz = self.d(self.total, q) @ lift
            w, *_ = np.linalg.lstsq(self.inclusion[q + 1], dz, rcond=None)
            if dz.size and np.max(np.abs(self.inclusion[q + 1] @ w - dz)) > 1e-7 * max(
                1.0, float(np.max(np.abs(dz)))
            ):
                raise ValueError("connecting map failed (sequence not exact?)")
            return self._class_coords(self.sub, q + 1, w, h_sub[self.top - q - 1])

        # reversed chain model for the LES: chain degree j = slots-1-k
        rdims = list(reversed(dims))
        for j in range(1, slots):
            k = slots - 1 - j  # the slot mapping out with this boundary
            maps[j] = slot_map(k)
        H = BasedChainComplex(rdims, maps)
        return H


def milnor_residual(
    ses: CochainSES,
    h_sub: Sequence[np.ndarray] | None = None,
    h_tot: Sequence[np.ndarray] | None = None,
    h_quot: Sequence[np.ndarray] | None = None,
) -> float:
    """log tau(C,h) - log tau(C',h') - log tau(C'',h'') - log tau(LES)."""
    n = ses.top
    h_sub = h_sub if h_sub is not None else harmonic_homology_basis(ses.sub)
    h_tot = h_tot if h_tot is not None else harmonic_homology_basis(ses.total)
    h_quot = h_quot if h_quot is not None else harmonic_homology_basis(ses.quot)
    t_tot = log_torsion_cochain(ses.total, h_tot)
    t_sub = log_torsion_cochain(ses.sub, h_sub)
    t_quot = log_torsion_cochain(ses.quot, h_quot)
    H = ses.long_exact_sequence(h_sub, h_tot, h_quot)
    if any(b != 0 for b in H.homology_dims()):
        raise ValueError("long exact sequence is not exact")
    t_les = log_torsion_cochain(H)
    return float(t_tot.log_value - t_sub.log_value - t_quot.log_value - t_les.log_value)
