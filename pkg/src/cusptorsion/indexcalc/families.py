"""Index families on face lattices and their transport along b-maps.

A face lattice is just the named list of boundary hypersurfaces of one of
the surgery spaces; an index family assigns an index set to each face.
An exponent matrix records, for a b-map, how boundary defining functions
of the target pull back to products of those of the source; it drives
pullback and pushforward of families.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .indexset import EMPTY, IndexSet, Orderish, _as_order


@dataclass(frozen=True)
class FaceLattice:
    name: str
    faces: tuple[str, ...]

    def __contains__(self, face: str) -> bool:
        return face in self.faces

    def check(self, face: str) -> str:
        if face not in self.faces:
            raise KeyError(f"face {face!r} not in lattice {self.name!r}")
        return face


class IndexFamily:
    """Assignment of an index set to every face of a lattice (default empty)."""

    __slots__ = ("lattice", "_sets")

    def __init__(self, lattice: FaceLattice, sets: Mapping[str, IndexSet] | None = None):
        self.lattice = lattice
        data = {}
        if sets:
            for face, E in sets.items():
                lattice.check(face)
                if not isinstance(E, IndexSet):
                    raise TypeError(f"face {face!r}: expected IndexSet, got {type(E)}")
                data[face] = E
        self._sets = {f: data.get(f, EMPTY) for f in lattice.faces}

    def __getitem__(self, face: str) -> IndexSet:
        return self._sets[self.lattice.check(face)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IndexFamily)
            and self.lattice == other.lattice
            and self._sets == other._sets
        )

    def __hash__(self):
        return hash((self.lattice, tuple(sorted(self._sets.items()))))

    def __repr__(self) -> str:
        parts = ", ".join(
            f"{f}: {E!r}" for f, E in self._sets.items() if not E.is_empty
        )
        return f"IndexFamily({self.lattice.name}; {parts or 'all empty'})"

    def replace(self, **sets: IndexSet) -> "IndexFamily":
        data = dict(self._sets)
        for face, E in sets.items():
            self.lattice.check(face)
            data[face] = E
        return IndexFamily(self.lattice, data)

    def shift(self, offsets: Mapping[str, Orderish]) -> "IndexFamily":
        data = dict(self._sets)
        for face, a in offsets.items():
            self.lattice.check(face)
            data[face] = data[face].shift(a)
        return IndexFamily(self.lattice, data)

    def items(self) -> Iterable[tuple[str, IndexSet]]:
        return self._sets.items()


class ExponentMatrix:
    """Integer exponents e(G, H) of a b-map between two face lattices."""

    def __init__(
        self,
        source: FaceLattice,
        target: FaceLattice,
        entries: Mapping[tuple[str, str], int],
    ):
        self.source = source
        self.target = target
        self.entries: dict[tuple[str, str], int] = {}
        for (g, h), e in entries.items():
            source.check(g)
            target.check(h)
            if e < 0:
                raise ValueError("exponent matrix entries must be nonnegative")
            if e > 0:
                self.entries[(g, h)] = int(e)

    def exponent(self, g: str, h: str) -> int:
        return self.entries.get((g, h), 0)

    def targets_of(self, g: str) -> list[tuple[str, int]]:
        return [(h, e) for (gg, h), e in self.entries.items() if gg == g]

    def sources_of(self, h: str) -> list[tuple[str, int]]:
        return [(g, e) for (g, hh), e in self.entries.items() if hh == h]

    def is_b_normal(self) -> bool:
        """Each source face maps to at most one target hypersurface."""
        return all(len(self.targets_of(g)) <= 1 for g in self.source.faces)


def pullback_family(e: ExponentMatrix, family: IndexFamily) -> IndexFamily:
    """Pull an index family on the target back to the source lattice.

    A source face G picks up the dilated Minkowski sum of F(H) over all
    target faces H with e(G, H) > 0; a face mapping to the interior gets
    the smooth ladder N0.
    """
    if family.lattice != e.target:
        raise ValueError(
            f"family lives on {family.lattice.name!r}, expected {e.target.name!r}"
        )
    out: dict[str, IndexSet] = {}
    for g in e.source.faces:
        acc = IndexSet([(0, 0)])
        for h, exp in e.targets_of(g):
            acc = acc + family[h].dilate(exp)
        out[g] = acc
    return IndexFamily(e.source, out)


def pushforward_family(
    e: ExponentMatrix,
    family: IndexFamily,
    density_offsets: Mapping[str, Orderish] | None = None,
    renormalize_at: str | None = None,
    renorm_corner_faces: Iterable[str] = (),
    strict: bool = True,
) -> IndexFamily:
    """Push an index family on the source forward along a b-fibration.

    Target face H collects the extended union over source faces G with
    e(G, H) > 0 of the (offset, order-divided) index sets.  Source faces
    mapping onto the whole target must carry a positive index set
    (integrability), unless named as `renormalize_at`: then the finite-part
    rule applies, and each (0, l) entry there turns an entry (z, p) of a
    face in `renorm_corner_faces` (the faces meeting it in a corner) into
    the entries (z, q) for p+1 <= q <= p+l+1.
    """
    if family.lattice != e.source:
        raise ValueError(
            f"family lives on {family.lattice.name!r}, expected {e.source.name!r}"
        )
    if not e.is_b_normal():
        raise ValueError("pushforward requires a b-normal (row-simple) exponent matrix")

    offs = {g: _as_order(a) for g, a in (density_offsets or {}).items()}
    shifted = {g: family[g].shift(offs.get(g, 0)) for g in e.source.faces}
    corner = set(renorm_corner_faces)

    # log powers contributed by the renormalized corner integral
    renorm_logs: list[int] = []
    for g in e.source.faces:
        if not e.targets_of(g):  # face maps onto the whole target
            E = shifted[g]
            if g == renormalize_at:
                if not E.is_empty:
                    renorm_logs = sorted({p for z, p in E.generators if z == 0})
                if strict and not E.inf_ge(0):
                    raise ValueError(f"renormalization face {g!r} must have inf >= 0")
            elif strict and not E.is_empty and not E.inf_gt(0):
                raise ValueError(f"pushforward not integrable at face {g!r} (inf <= 0)")

    out: dict[str, IndexSet] = {}
    for h in e.target.faces:
        acc = EMPTY
        first = True
        for g, exp in e.sources_of(h):
            term = shifted[g].divide(exp)
            if renorm_logs and g in corner and not term.is_empty:
                extra = [
                    (z, q)
                    for z, p in term.generators
                    for l in renorm_logs
                    for q in range(p + 1, p + l + 2)
                ]
                term = term.union(IndexSet(extra))
            acc = term if first else acc.extended_union(term)
            first = False
        out[h] = acc
    return IndexFamily(e.target, out)
