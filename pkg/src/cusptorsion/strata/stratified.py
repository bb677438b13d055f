"""Depth-one stratified pseudomanifolds with a local system on the top stratum."""

from __future__ import annotations

from typing import Sequence

from ..complexes.local_system import LocalSystem
from ..complexes.simplicial import SimplicialComplex, Simplex, Vertex, barycentric_subdivision


class StratifiedSpace:
    """Triangulated pseudomanifold X with singular stratum B of codim >= 2.

    `B_components` lists the connected pieces of the singular set (each a
    subcomplex of X); `system_out` is a unimodular local system on the full
    subcomplex of X away from B (the smooth stratum).  The first barycentric
    subdivision, where basic sets live, is computed on demand.
    """

    def __init__(self, X: SimplicialComplex, B_components: Sequence[SimplicialComplex],
                 system_out: LocalSystem | None = None):
        self.X = X
        self.B_components = list(B_components)
        self.bverts: set[Vertex] = set()
        for B in self.B_components:
            for d, ss in B.simplices.items():
                for s in ss:
                    if not X.has_simplex(s):
                        raise ValueError("B is not a subcomplex of X")
            self.bverts |= set(B.vertices)
        self.dim = X.dim
        for B in self.B_components:
            if B.vertices and self.dim - B.dim < 2:
                raise ValueError("singular stratum must have codimension >= 2")
        self.X_out = X.full_subcomplex([v for v in X.vertices if v not in self.bverts])
        if system_out is None:
            from ..complexes.local_system import trivial_system

            system_out = trivial_system(self.X_out)
        if set(system_out.base.vertices) != set(self.X_out.vertices):
            raise ValueError("system must live on the smooth stratum X \\ B")
        self.system = system_out
        self._Tp: SimplicialComplex | None = None
        self._b_barycenters: list[set[Simplex]] | None = None

    # -- subdivision ---------------------------------------------------------

    @property
    def Tp(self) -> SimplicialComplex:
        """First barycentric subdivision of the triangulation."""
        if self._Tp is None:
            self._Tp = barycentric_subdivision(self.X)
        return self._Tp

    @property
    def b_barycenters(self) -> list[set[Simplex]]:
        """Per component: the T' vertices lying in B (barycenters of B-simplices)."""
        if self._b_barycenters is None:
            out = []
            for B in self.B_components:
                bset = set()
                for d, ss in B.simplices.items():
                    bset |= set(ss)
                out.append(bset)
            self._b_barycenters = out
        return self._b_barycenters

    def codims(self) -> list[int]:
        return [self.dim - (B.dim if B.vertices else -1) for B in self.B_components]

    # -- anchored transports on the subdivision -------------------------------

    def anchor(self, s: Simplex) -> Vertex:
        """Least barycenter of s not lying in B, anchored at its least out vertex.

        Simplices of T' are chains of X-simplices; a barycenter is in B iff
        its X-simplex is contained in B.  The returned vertex is a vertex of
        the original complex, outside B, lying in the top X-simplex of s.
        """
        allb = set().union(*self.b_barycenters) if self.b_barycenters else set()
        for xsimp in s:
            if xsimp not in allb:
                for v in xsimp:
                    if v not in self.bverts:
                        return v
        raise ValueError(f"simplex {s!r} is contained in the singular stratum")

    def transport(self, s: Simplex, t: Simplex):
        """Gauged transport between the anchors of two T'-simplices sharing a
        common coface (used for the boundary of anchored twisted chains)."""
        a, b = self.anchor(s), self.anchor(t)
        return self.system.gauged_transport(a, b)
