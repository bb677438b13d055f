"""Finite simplicial complexes with ordered vertices.

Simplices are stored per dimension as tuples of vertex ids, sorted by the
position of the id in the complex's vertex list; that order also fixes
orientations (the sorted tuple is the +1 orientation) and incidence signs
follow the alternating-face rule.
"""

from __future__ import annotations

import itertools
from typing import Callable, Hashable, Iterable, Mapping, Sequence

Vertex = Hashable
Simplex = tuple


class SimplicialComplex:
    def __init__(self, vertices: Sequence[Vertex], simplices: Iterable[Sequence[Vertex]]):
        self.vertices: tuple[Vertex, ...] = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        self.index: dict[Vertex, int] = {v: i for i, v in enumerate(self.vertices)}
        by_dim: dict[int, set[Simplex]] = {0: {(v,) for v in self.vertices}}
        for s in simplices:
            t = self._sort(s)
            if len(set(t)) != len(t):
                raise ValueError(f"degenerate simplex {s!r}")
            by_dim.setdefault(len(t) - 1, set()).add(t)
        # close under faces (top down, including dims created along the way)
        for d in range(max(by_dim), 0, -1):
            for s in by_dim.get(d, ()):
                for f in itertools.combinations(s, d):
                    by_dim.setdefault(d - 1, set()).add(f)
        self.simplices: dict[int, tuple[Simplex, ...]] = {
            d: tuple(sorted(by_dim[d], key=self._key)) for d in sorted(by_dim)
        }
        self._pos: dict[int, dict[Simplex, int]] = {
            d: {s: i for i, s in enumerate(ss)} for d, ss in self.simplices.items()
        }

    # -- helpers -----------------------------------------------------------

    def _sort(self, s: Sequence[Vertex]) -> Simplex:
        try:
            return tuple(sorted(s, key=self.index.__getitem__))
        except KeyError as e:
            raise ValueError(f"unknown vertex {e.args[0]!r}") from None

    def _key(self, s: Simplex):
        return tuple(self.index[v] for v in s)

    @property
    def dim(self) -> int:
        return max(self.simplices)

    def n_simplices(self, d: int | None = None) -> int:
        if d is None:
            return sum(len(ss) for ss in self.simplices.values())
        return len(self.simplices.get(d, ()))

    def simplex_position(self, s: Sequence[Vertex]) -> int:
        t = self._sort(s)
        return self._pos[len(t) - 1][t]

    def has_simplex(self, s: Sequence[Vertex]) -> bool:
        try:
            t = self._sort(s)
        except ValueError:
            return False
        return t in self._pos.get(len(t) - 1, {})

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * len(ss) for d, ss in self.simplices.items())

    def edges(self) -> tuple[Simplex, ...]:
        return self.simplices.get(1, ())

    def boundary_faces(self, s: Simplex) -> list[tuple[int, Simplex]]:
        """Faces with alternating signs: [(sign, face)]."""
        out = []
        for i in range(len(s)):
            out.append(((-1) ** i, s[:i] + s[i + 1 :]))
        return out

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        adj: dict[Vertex, list[Vertex]] = {v: [] for v in self.vertices}
        for u, v in self.edges():
            adj[u].append(v)
            adj[v].append(u)
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def subcomplex(self, keep: Callable[[Simplex], bool]) -> "SimplicialComplex":
        """Full closure of the simplices passing the filter."""
        sel = [s for ss in self.simplices.values() for s in ss if keep(s)]
        verts = sorted({v for s in sel for v in s}, key=self.index.__getitem__)
        return SimplicialComplex(verts, sel)

    def full_subcomplex(self, vertex_set: Iterable[Vertex]) -> "SimplicialComplex":
        vs = set(vertex_set)
        return self.subcomplex(lambda s: all(v in vs for v in s))

    def relabel(self, fn: Callable[[Vertex], Vertex]) -> "SimplicialComplex":
        verts = [fn(v) for v in self.vertices]
        simps = [tuple(fn(v) for v in s) for d, ss in self.simplices.items() for s in ss if d > 0]
        return SimplicialComplex(verts, simps)

    def top_simplices(self) -> list[Simplex]:
        """Simplices that are not a proper face of another simplex."""
        facelike: set[Simplex] = set()
        for d, ss in self.simplices.items():
            for s in ss:
                for i in range(len(s)):
                    facelike.add(s[:i] + s[i + 1 :])
        return [s for ss in self.simplices.values() for s in ss if s not in facelike]


def disjoint_union(
    a: SimplicialComplex, b: SimplicialComplex, tags: tuple[str, str] = ("a", "b")
) -> SimplicialComplex:
    ta, tb = tags
    fa = lambda v: (ta, v)
    fb = lambda v: (tb, v)
    verts = [fa(v) for v in a.vertices] + [fb(v) for v in b.vertices]
    simps = [tuple(fa(v) for v in s) for d, ss in a.simplices.items() for s in ss if d > 0]
    simps += [tuple(fb(v) for v in s) for d, ss in b.simplices.items() for s in ss if d > 0]
    return SimplicialComplex(verts, simps)


def glue(
    complexes: Sequence[SimplicialComplex],
    identify: Mapping[tuple[int, Vertex], Vertex],
) -> SimplicialComplex:
    """Union of relabelled complexes after identifying vertices.

    `identify` maps (complex position, old vertex) to a new id; vertices
    absent from the map keep (position, old vertex) as their id.
    """
    verts: list[Vertex] = []
    seen = set()
    simps: list[Simplex] = []
    for i, K in enumerate(complexes):
        ren = {v: identify.get((i, v), (i, v)) for v in K.vertices}
        for v in K.vertices:
            w = ren[v]
            if w not in seen:
                seen.add(w)
                verts.append(w)
        for d, ss in K.simplices.items():
            if d == 0:
                continue
            for s in ss:
                t = tuple(ren[v] for v in s)
                if len(set(t)) != len(t):
                    raise ValueError(f"gluing degenerates simplex {s!r}")
                simps.append(t)
    return SimplicialComplex(verts, simps)


# -- generators --------------------------------------------------------------


def point() -> SimplicialComplex:
    return SimplicialComplex([0], [])


def interval(n: int) -> SimplicialComplex:
    """Path with n edges on vertices 0..n."""
    if n < 1:
        raise ValueError("need at least one edge")
    return SimplicialComplex(range(n + 1), [(i, i + 1) for i in range(n)])


def circle(n: int) -> SimplicialComplex:
    """Cycle with n vertices; n >= 3 keeps the complex simplicial."""
    if n < 3:
        raise ValueError("a simplicial circle needs n >= 3")
    return SimplicialComplex(range(n), [(i, (i + 1) % n) for i in range(n)])


def torus(n1: int, n2: int) -> SimplicialComplex:
    """Product triangulation of T^2 on an n1 x n2 vertex grid."""
    if n1 < 3 or n2 < 3:
        raise ValueError("simplicial torus needs n1, n2 >= 3")
    verts = [(i, j) for i in range(n1) for j in range(n2)]
    tris = []
    for i in range(n1):
        for j in range(n2):
            a = (i, j)
            b = ((i + 1) % n1, j)
            c = ((i + 1) % n1, (j + 1) % n2)
            d = (i, (j + 1) % n2)
            tris += [(a, b, c), (a, d, c)]
    return SimplicialComplex(verts, tris)


def torus3(n1: int, n2: int, n3: int) -> SimplicialComplex:
    """Freudenthal (staircase) triangulation of T^3 on a vertex grid."""
    if min(n1, n2, n3) < 3:
        raise ValueError("simplicial 3-torus needs all n_i >= 3")
    ns = (n1, n2, n3)
    verts = [(i, j, k) for i in range(n1) for j in range(n2) for k in range(n3)]
    tets = []
    shifts = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    for i in range(n1):
        for j in range(n2):
            for k in range(n3):
                base = (i, j, k)
                for perm in itertools.permutations(range(3)):
                    chain = [base]
                    cur = base
                    for axis in perm:
                        cur = tuple(
                            (cur[t] + shifts[axis][t]) % ns[t] for t in range(3)
                        )
                        chain.append(cur)
                    tets.append(tuple(chain))
    return SimplicialComplex(verts, tets)


def product_complex(A: SimplicialComplex, B: SimplicialComplex) -> SimplicialComplex:
    """Staircase (ordered-product) triangulation of |A| x |B|.

    Top simplices are the monotone staircases through the vertex grid of a
    pair of top simplices, one from each factor.
    """
    verts = [(a, b) for a in A.vertices for b in B.vertices]
    tops: list[tuple] = []
    for sa in A.top_simplices():
        for sb in B.top_simplices():
            p, q = len(sa) - 1, len(sb) - 1
            # monotone lattice paths from (0,0) to (p,q)
            for pattern in itertools.combinations(range(p + q), p):
                path = [(0, 0)]
                i = j = 0
                for step in range(p + q):
                    if step in pattern:
                        i += 1
                    else:
                        j += 1
                    path.append((i, j))
                tops.append(tuple((sa[i], sb[j]) for i, j in path))
    return SimplicialComplex(verts, tops)


def cone(K: SimplicialComplex, apex: Vertex = "apex") -> SimplicialComplex:
    if apex in K.index:
        raise ValueError("apex id already used")
    verts = list(K.vertices) + [apex]
    simps = [s for d, ss in K.simplices.items() for s in ss if d > 0]
    coned = [s + (apex,) for ss in K.simplices.values() for s in ss]
    return SimplicialComplex(verts, simps + coned)


def suspension(K: SimplicialComplex) -> SimplicialComplex:
    north, south = "north", "south"
    verts = list(K.vertices) + [north, south]
    simps = [s for d, ss in K.simplices.items() for s in ss if d > 0]
    simps += [s + (north,) for ss in K.simplices.values() for s in ss]
    simps += [s + (south,) for ss in K.simplices.values() for s in ss]
    return SimplicialComplex(verts, simps)


# -- barycentric subdivision --------------------------------------------------


def barycentric_subdivision(K: SimplicialComplex) -> SimplicialComplex:
    """First barycentric subdivision; vertices are the simplices of K.

    The top simplices of K' are the full flags of faces of the top
    simplices of K (one flag per vertex ordering); every chain of faces is
    a subchain of such a flag, so the face closure fills in the rest.
    """
    verts = [s for d in sorted(K.simplices) for s in K.simplices[d]]
    flags: list[Simplex] = []
    for s in K.top_simplices():
        if len(s) == 1:
            continue
        for perm in itertools.permutations(s):
            flags.append(tuple(tuple(sorted(perm[: i + 1], key=K.index.__getitem__))
                               for i in range(len(s))))
    return SimplicialComplex(verts, flags)
