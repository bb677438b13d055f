"""Perversity allowability and basic sets on the barycentric subdivision."""

from __future__ import annotations

from typing import Iterable

from ..complexes.simplicial import Simplex
from .perversity import Perversity
from .stratified import StratifiedSpace


def simplex_allowable(space: StratifiedSpace, s: Simplex, i: int, p: Perversity) -> bool:
    """(p, i)-allowability of a single T'-simplex.

    The subdivision makes each B-component a full subcomplex, so the
    intersection with it is the face spanned by its barycenters and the
    dimension count is a vertex count.
    """
    if len(s) - 1 > i:
        return False
    for comp_bary, codim in zip(space.b_barycenters, space.codims()):
        inter = sum(1 for v in s if v in comp_bary) - 1
        if inter >= 0 and inter > i - codim + p(codim):
            return False
    return True


def is_allowable(space: StratifiedSpace, support: Iterable[Simplex], i: int,
                 p: Perversity) -> bool:
    """Allowability of a closed support set (a union of T'-simplices)."""
    if i < 0:
        return all(False for _ in support) if any(True for _ in support) else True
    return all(simplex_allowable(space, s, i, p) for s in support)


def basic_sets(space: StratifiedSpace, p: Perversity) -> list[dict[int, list[Simplex]]]:
    """The filtration R^p_0 <= ... <= R^p_m as per-dimension simplex lists."""
    Tp = space.Tp
    m = space.dim
    out = []
    for i in range(m + 1):
        Ri = {
            d: [s for s in ss if simplex_allowable(space, s, i, p)]
            for d, ss in Tp.simplices.items()
            if d <= i
        }
        out.append(Ri)
    return out
