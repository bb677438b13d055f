"""Mapping cylinders, cutting along two-sided hypersurfaces, gluing."""

from __future__ import annotations

from typing import Callable, Mapping

from .simplicial import (
    SimplicialComplex,
    Simplex,
    Vertex,
    barycentric_subdivision,
    glue,
)


class SimplicialMap:
    """Vertex assignment K -> L that sends simplices to simplices."""

    def __init__(self, domain: SimplicialComplex, codomain: SimplicialComplex,
                 vertex_map: Mapping[Vertex, Vertex]):
        self.domain = domain
        self.codomain = codomain
        self.vertex_map = dict(vertex_map)
        missing = [v for v in domain.vertices if v not in self.vertex_map]
        if missing:
            raise ValueError(f"map undefined on vertices {missing[:3]!r}...")
        for d, ss in domain.simplices.items():
            for s in ss:
                if not codomain.has_simplex(set(self(s))):
                    raise ValueError(f"image of {s!r} is not a simplex of the target")

    def __call__(self, s: Simplex) -> Simplex:
        img = {self.vertex_map[v] for v in s}
        return self.codomain._sort(img)


def mapping_cylinder(phi: SimplicialMap) -> tuple[SimplicialComplex, dict, dict]:
    """Triangulated mapping cylinder of a simplicial map K -> L.

    Vertices are the barycenters of K (the domain end appears as the first
    barycentric subdivision K') together with the vertices of L; a chain of
    faces with minimal element s may be joined with any simplex of L inside
    phi(s).  Returns (cylinder, domain_end_map, base_map): the vertex maps
    embedding K' and L.
    """
    K, L = phi.domain, phi.codomain
    KP = barycentric_subdivision(K)
    cyl = lambda s: ("cyl", s)
    base = lambda w: ("base", w)

    verts = [cyl(s) for s in KP.vertices] + [base(w) for w in L.vertices]
    simps: list[tuple] = []
    for d, chains in KP.simplices.items():
        for c in chains:
            # c is a chain of K-simplices, ascending in dimension: c[0] minimal
            tau = phi(c[0])
            simps.append(tuple(cyl(s) for s in c) + tuple(base(w) for w in tau))
    simps += [tuple(base(w) for w in s)
              for d, ss in L.simplices.items() if d > 0 for s in ss]
    C = SimplicialComplex(verts, simps)
    domain_end = {s: cyl(s) for s in KP.vertices}
    base_end = {w: base(w) for w in L.vertices}
    return C, domain_end, base_end


def cut_along(
    M: SimplicialComplex,
    H: SimplicialComplex,
    side_fn: Callable[[Simplex], int],
) -> tuple[SimplicialComplex, dict, dict]:
    """Cut M along a two-sided codimension-one subcomplex H.

    `side_fn` assigns +1 or -1 to the top mixed simplices (those meeting H
    without lying inside it); sides of lower mixed simplices are inferred
    from their cofaces and must be consistent, otherwise H does not
    separate locally and the cut is rejected.  Returns (N, plus_map,
    minus_map) where the maps send H vertices to the two boundary copies.
    """
    hverts = set(H.vertices)
    for d, ss in H.simplices.items():
        for s in ss:
            if not M.has_simplex(s):
                raise ValueError("H is not a subcomplex of M")

    def is_mixed(s: Simplex) -> bool:
        inside = sum(v in hverts for v in s)
        return 0 < inside < len(s)

    side: dict[Simplex, int] = {}
    for s in M.top_simplices():
        if not is_mixed(s):
            continue
        sd = side_fn(s)
        if sd not in (1, -1):
            raise ValueError(f"side of {s!r} must be +-1")
        stack = [s]
        while stack:
            t = stack.pop()
            if not is_mixed(t):
                continue
            if t in side:
                if side[t] != sd:
                    raise ValueError("H does not separate locally (side conflict)")
                continue
            side[t] = sd
            for i in range(len(t)):
                f = t[:i] + t[i + 1 :]
                if len(f) >= 1:
                    stack.append(f)

    def tag(v: Vertex, sd: int) -> Vertex:
        return ("cut", v, sd) if v in hverts else v

    verts: list[Vertex] = []
    for v in M.vertices:
        if v in hverts:
            verts += [("cut", v, 1), ("cut", v, -1)]
        else:
            verts.append(v)
    simps: list[tuple] = []
    for d, ss in M.simplices.items():
        if d == 0:
            continue
        for s in ss:
            inside = sum(v in hverts for v in s)
            if inside == 0:
                simps.append(s)
            elif inside == len(s):
                simps.append(tuple(tag(v, 1) for v in s))
                simps.append(tuple(tag(v, -1) for v in s))
            else:
                if s not in side:
                    raise ValueError(f"mixed simplex {s!r} received no side")
                simps.append(tuple(tag(v, side[s]) for v in s))
    N = SimplicialComplex(verts, simps)
    plus = {v: ("cut", v, 1) for v in H.vertices}
    minus = {v: ("cut", v, -1) for v in H.vertices}
    return N, plus, minus


def coordinate_side(c: int, n: int) -> Callable[[Simplex], int]:
    """Side function for cutting a coordinate torus along the slice x_c = 0."""

    def coord(v) -> int:
        return v[c] if isinstance(v, tuple) else v

    def fn(s: Simplex) -> int:
        for v in s:
            if coord(v) == 1:
                return 1
            if coord(v) == n - 1:
                return -1
        raise ValueError(f"cannot infer side of {s!r}")

    return fn


def glue_two(
    a: SimplicialComplex,
    b: SimplicialComplex,
    identification: Mapping[Vertex, Vertex],
) -> SimplicialComplex:
    """Glue b onto a, identifying vertex v of b with identification[v] of a."""
    ident: dict[tuple[int, Vertex], Vertex] = {(0, v): ("g", v) for v in a.vertices}
    for v in b.vertices:
        if v in identification:
            ident[(1, v)] = ("g", identification[v])
    return glue([a, b], ident)
