"""Unimodular local systems presented by edge holonomies.

A system stores, for each edge (u, v) of the base complex (u before v in
the vertex order), the parallel transport matrix for the direction u -> v.
Transports within a single simplex must be path independent (flatness) and
every matrix must have |det| = 1 (unimodularity).
"""

from __future__ import annotations

import math
from typing import Callable, Iterable, Mapping

import numpy as np

from .simplicial import SimplicialComplex, Simplex, Vertex


def rotation(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


class LocalSystem:
    def __init__(self, base: SimplicialComplex, rank: int,
                 edge_holonomy: Mapping[Simplex, np.ndarray],
                 angles: tuple[float, ...] | None = None):
        self.base = base
        self.rank = rank
        self.angles = angles  # kept for scene reporting when rotation-built
        self.edge_holonomy: dict[Simplex, np.ndarray] = {}
        for e in base.edges():
            M = np.asarray(edge_holonomy.get(e, np.eye(rank)), dtype=float)
            if M.shape != (rank, rank):
                raise ValueError(f"holonomy shape mismatch on edge {e!r}")
            self.edge_holonomy[e] = M
        self.validate()
        self._tree_transport: dict[Vertex, np.ndarray] | None = None

    # -- validation ---------------------------------------------------------

    def validate(self, tol: float = 1e-10) -> None:
        for e, M in self.edge_holonomy.items():
            det = abs(np.linalg.det(M))
            if abs(det - 1.0) > 1e-9:
                raise ValueError(f"holonomy on {e!r} not unimodular (|det|={det})")
        for tri in self.base.simplices.get(2, ()):
            a, b, c = tri
            lhs = self.transport(b, c) @ self.transport(a, b)
            rhs = self.transport(a, c)
            if np.max(np.abs(lhs - rhs)) > tol:
                raise ValueError(f"system not flat on triangle {tri!r}")

    # -- transport ----------------------------------------------------------

    def transport(self, u: Vertex, v: Vertex) -> np.ndarray:
        """Parallel transport u -> v along the edge (u, v)."""
        if u == v:
            return np.eye(self.rank)
        iu, iv = self.base.index[u], self.base.index[v]
        if iu < iv:
            return self.edge_holonomy[(u, v)]
        return np.linalg.inv(self.edge_holonomy[(v, u)])

    def tree_transport(self) -> dict[Vertex, np.ndarray]:
        """Spanning-tree gauge: transport from the component root to v."""
        if self._tree_transport is not None:
            return self._tree_transport
        P: dict[Vertex, np.ndarray] = {}
        adj: dict[Vertex, list[Vertex]] = {v: [] for v in self.base.vertices}
        for u, v in self.base.edges():
            adj[u].append(v)
            adj[v].append(u)
        for root in self.base.vertices:
            if root in P:
                continue
            P[root] = np.eye(self.rank)
            queue = [root]
            while queue:
                u = queue.pop(0)
                for w in adj[u]:
                    if w not in P:
                        P[w] = self.transport(u, w) @ P[u]
                        queue.append(w)
        self._tree_transport = P
        return P

    def gauged_transport(self, u: Vertex, v: Vertex) -> np.ndarray:
        """Transport u -> v after the spanning-tree gauge (trivial on the tree)."""
        P = self.tree_transport()
        return np.linalg.solve(P[v], self.transport(u, v) @ P[u])

    # -- derived systems ------------------------------------------------------

    def restrict(self, sub: SimplicialComplex) -> "LocalSystem":
        # sub may order a pair differently, so transport per sub's edge order
        hol = {e: self.transport(e[0], e[1]) for e in sub.edges()}
        return LocalSystem(sub, self.rank, hol, angles=self.angles)

    def transfer(self, K: SimplicialComplex, vertex_map: Mapping[Vertex, Vertex]) -> "LocalSystem":
        """Move the system to a complex whose vertices map into the base.

        Edges of K must map to edges (or vertices) of the base; transport
        along a collapsed edge is the identity.
        """
        hol = {}
        for u, v in K.edges():
            hol[(u, v)] = self.transport(vertex_map[u], vertex_map[v])
        return LocalSystem(K, self.rank, hol, angles=self.angles)

    def subdivided(self, KP: SimplicialComplex) -> "LocalSystem":
        """Induced system on the barycentric subdivision.

        Each barycenter is anchored at the least vertex of its simplex;
        transports between anchors run inside the larger simplex.
        """
        anchor = {s: s[0] for s in KP.vertices}
        hol = {}
        for e in KP.edges():
            s, t = e  # nested simplices of the base
            big = s if len(s) >= len(t) else t
            hol[e] = self.transport(anchor[s], anchor[t])
        return LocalSystem(KP, self.rank, hol, angles=self.angles)


def trivial_system(K: SimplicialComplex, rank: int = 1) -> LocalSystem:
    return LocalSystem(K, rank, {})


def torus_rotation_system(K: SimplicialComplex, angles: Iterable[float],
                          rank: int = 2) -> LocalSystem:
    """Rotation system on a coordinate torus (or circle) complex.

    Vertices must be grid tuples (or plain integers for a circle); crossing
    the wrap of coordinate c in the increasing direction multiplies by the
    rotation through angles[c].  Rank 1 is allowed when every angle is a
    multiple of pi (signs).
    """
    angles = tuple(angles)

    def coords(v) -> tuple:
        return v if isinstance(v, tuple) else (v,)

    sizes: list[int] = []
    dim = len(coords(K.vertices[0]))
    if len(angles) != dim:
        raise ValueError(f"need {dim} angles, got {len(angles)}")
    for c in range(dim):
        sizes.append(max(coords(v)[c] for v in K.vertices) + 1)

    def hol(u, v) -> np.ndarray:
        cu, cv = coords(u), coords(v)
        theta = 0.0
        for c in range(dim):
            if {cu[c], cv[c]} == {0, sizes[c] - 1} and sizes[c] > 2:
                theta += angles[c] if cu[c] == sizes[c] - 1 else -angles[c]
        if rank == 2:
            return rotation(theta)
        if rank == 1:
            val = math.cos(theta)
            if abs(abs(val) - 1.0) > 1e-12:
                raise ValueError("rank-1 systems need angles multiple of pi")
            return np.array([[round(val)]], dtype=float)
        raise ValueError("rotation systems support rank 1 or 2")

    return LocalSystem(K, rank, {e: hol(*e) for e in K.edges()}, angles=angles)
