"""Torsion of complexes, pairs, and pair sequences on simplicial data."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..complexes.chains import BasedChainComplex, twisted_complex
from ..complexes.local_system import LocalSystem
from ..complexes.simplicial import SimplicialComplex
from .milnor import CochainSES
from .rtorsion import TorsionValue, log_torsion, log_torsion_cochain


def subcomplex_chain_complex(K: SimplicialComplex, A: SimplicialComplex,
                             L: LocalSystem) -> BasedChainComplex:
    """Twisted chains of the subcomplex A in the gauge of K.

    Using K's spanning-tree gauge keeps the inclusion A -> K the literal
    coordinate inclusion, which the pair sequences need.
    """
    k = L.rank
    n = max(A.simplices)
    dims = [k * A.n_simplices(d) for d in range(n + 1)]
    labels = {d: [(s, j) for s in A.simplices.get(d, ()) for j in range(k)]
              for d in range(n + 1)}
    boundary = {}
    for d in range(1, n + 1):
        B = np.zeros((dims[d - 1], dims[d]))
        for ci, s in enumerate(A.simplices.get(d, ())):
            for i_drop in range(len(s)):
                f = tuple(x for t, x in enumerate(s) if t != i_drop)
                sign = (-1) ** i_drop
                M = L.gauged_transport(s[0], s[1]) if i_drop == 0 else np.eye(k)
                ri = A._pos[d - 1][A._sort(f)]
                B[ri * k : (ri + 1) * k, ci * k : (ci + 1) * k] += sign * M
        boundary[d] = B
    return BasedChainComplex(dims, boundary, labels)


def _pad_to(C: BasedChainComplex, n: int) -> BasedChainComplex:
    if C.top_degree == n:
        return C
    dims = C.dims + [0] * (n - C.top_degree)
    bnd = {i: B for i, B in C.boundary.items() if 1 <= i <= C.top_degree}
    return BasedChainComplex(dims, bnd, C.labels)


def pair_ses(K: SimplicialComplex, A: SimplicialComplex, L: LocalSystem) -> CochainSES:
    """The cochain sequence 0 -> C*(K, A) -> C*(K) -> C*(A) -> 0."""
    n = K.dim
    CK = twisted_complex(K, L)
    CA = _pad_to(subcomplex_chain_complex(K, A, L), n)
    k = L.rank
    keep: dict[int, list[int]] = {}
    for d in range(n + 1):
        idx = []
        for ci, s in enumerate(K.simplices.get(d, ())):
            if not A.has_simplex(s):
                idx += [ci * k + j for j in range(k)]
        keep[d] = idx
    rel_dims = [len(keep[d]) for d in range(n + 1)]
    rel_bnd = {d: CK.boundary[d][np.ix_(keep[d - 1], keep[d])] for d in range(1, n + 1)}
    CRel = BasedChainComplex(rel_dims, rel_bnd)

    inclusion, projection = [], []
    for q in range(n + 1):
        # relative cochains -> cochains: indicator columns on non-A q-simplices
        inc = np.zeros((CK.dims[q], rel_dims[q]))
        for col, row in enumerate(keep[q]):
            inc[row, col] = 1.0
        inclusion.append(inc)
        # cochains -> A-cochains: restriction rows
        prj = np.zeros((CA.dims[q], CK.dims[q]))
        for ai, s in enumerate(A.simplices.get(q, ())):
            ki = K.simplex_position(s)
            for j in range(k):
                prj[ai * k + j, ki * k + j] = 1.0
        projection.append(prj)
    return CochainSES(CRel.dual(), CK.dual(), CA.dual(), inclusion, projection)


def r_torsion(C: BasedChainComplex, h: Sequence[np.ndarray] | None = None,
              convention: str = "chain") -> TorsionValue:
    if convention == "chain":
        return log_torsion(C, h)
    if convention == "cochain":
        return log_torsion_cochain(C.dual() if C.direction == "chain" else C, h)
    raise ValueError("convention must be 'chain' or 'cochain'")


def torsion_of_complex(K: SimplicialComplex, L: LocalSystem,
                       h: Sequence[np.ndarray] | None = None,
                       convention: str = "cochain") -> TorsionValue:
    C = twisted_complex(K, L)
    return r_torsion(C, h, convention)


def torsion_of_pair(K: SimplicialComplex, A: SimplicialComplex, L: LocalSystem,
                    h: Sequence[np.ndarray] | None = None) -> TorsionValue:
    """Cochain torsion of the relative complex C*(K, A; alpha).

    `h`, when given, lists cohomology representatives per cochain degree in
    the relative coordinates (non-A simplices tensor frames).
    """
    ses = pair_ses(K, A, L)
    hh = None
    if h is not None:
        hh = [np.asarray(x, dtype=float) for x in h][::-1]  # reversed model
    return log_torsion_cochain(ses.sub, hh)
