"""Builders for the desk-scale stratified spaces.

All systems on these spaces are rotation systems specified by angles for
the surviving circle directions of the smooth stratum.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from ..complexes.local_system import LocalSystem, rotation
from ..complexes.simplicial import (
    SimplicialComplex,
    circle,
    cone,
    product_complex,
    suspension,
    torus,
)
from .stratified import StratifiedSpace


def _angle_system(K: SimplicialComplex, angle_of_edge, rank: int) -> LocalSystem:
    hol = {}
    for e in K.edges():
        theta = angle_of_edge(*e)
        if rank == 2:
            hol[e] = rotation(theta)
        else:
            val = math.cos(theta)
            if abs(abs(val) - 1.0) > 1e-12:
                raise ValueError("rank-1 systems need angles multiple of pi")
            hol[e] = np.array([[round(val)]], dtype=float)
    return LocalSystem(K, rank, hol)


def _wrap_angle(i, j, n, theta):
    if {i, j} == {0, n - 1} and n > 2:
        return theta if i == n - 1 else -theta
    return 0.0


def cone_space(link: SimplicialComplex, angles: Sequence[float] | None = None,
               rank: int = 2) -> StratifiedSpace:
    """Cone on a coordinate torus/circle link, singular at the apex."""
    X = cone(link, apex="apex")
    B = X.full_subcomplex(["apex"])
    X_out = X.full_subcomplex([v for v in X.vertices if v != "apex"])
    system = None
    if angles is not None:
        from ..complexes.local_system import torus_rotation_system

        system = torus_rotation_system(X_out, angles, rank=rank)
    return StratifiedSpace(X, [B], system)


def suspension_space(link: SimplicialComplex, angles: Sequence[float] | None = None,
                     rank: int = 2) -> StratifiedSpace:
    """Suspension of a torus/circle link, singular at the two poles."""
    X = suspension(link)
    Bn = X.full_subcomplex(["north"])
    Bs = X.full_subcomplex(["south"])
    X_out = X.full_subcomplex([v for v in X.vertices if v not in ("north", "south")])
    system = None
    if angles is not None:
        from ..complexes.local_system import torus_rotation_system

        system = torus_rotation_system(X_out, angles, rank=rank)
    return StratifiedSpace(X, [Bn, Bs], system)


def collapsed_torus3_space(n: int = 3, base_angle: float = 0.0,
                           fiber_angle: float = math.pi,
                           rank: int = 2) -> StratifiedSpace:
    """T^3 collapsed fiberwise along H = T^2 over Y = S^1.

    The result is S^1 x S^2 with two singular core circles; we triangulate
    it directly as circle x suspension(circle).  The surviving smooth
    stratum is T^2 x (0,1); `base_angle` twists the Y-circle direction and
    `fiber_angle` the collapsed-fiber direction.
    """
    S1 = circle(n)
    X = product_complex(S1, suspension(circle(n)))
    Bn = X.full_subcomplex([v for v in X.vertices if v[1] == "north"])
    Bs = X.full_subcomplex([v for v in X.vertices if v[1] == "south"])
    out_verts = [v for v in X.vertices if v[1] not in ("north", "south")]
    X_out = X.full_subcomplex(out_verts)

    def angle_of_edge(u, v):
        (i1, j1), (i2, j2) = u, v
        th = _wrap_angle(i1, i2, n, base_angle)
        th += _wrap_angle(j1, j2, n, fiber_angle)
        return th

    system = _angle_system(X_out, angle_of_edge, rank)
    return StratifiedSpace(X, [Bn, Bs], system)


def smooth_space(K: SimplicialComplex, system: LocalSystem | None = None) -> StratifiedSpace:
    """A manifold viewed as a stratified space with empty singular set."""
    empty = SimplicialComplex([], [])
    if system is None:
        from ..complexes.local_system import trivial_system

        system = trivial_system(K)
    return StratifiedSpace(K, [], system)
