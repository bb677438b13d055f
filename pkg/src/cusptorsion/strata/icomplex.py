"""Basic-set complexes, intersection homology, and Dar torsion.

Both complexes live on the barycentric subdivision with twisted
coefficients anchored at out-vertices.  B-contained faces never appear in
the boundary of an allowable simplex in the degree window that matters
(their dimension is bounded by i - 2), so the twisted linear algebra never
needs coefficients over the singular stratum.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..complexes.chains import BasedChainComplex, nullspace, _rank
from ..complexes.simplicial import Simplex
from ..torsion.rtorsion import TorsionValue, log_torsion_cochain
from .allowable import basic_sets, simplex_allowable
from .perversity import Perversity
from .stratified import StratifiedSpace

IC_SIZE_GUARD = 5000  # refuse the brute force beyond this many T' simplices


def _anchored_boundary_entries(space: StratifiedSpace, s: Simplex):
    """Faces of a T'-simplex with signs and anchor-transport blocks."""
    out = []
    for idx in range(len(s)):
        f = s[:idx] + s[idx + 1 :]
        sign = (-1) ** idx
        out.append((sign, f))
    return out


def _is_b_contained(space: StratifiedSpace, s: Simplex) -> bool:
    allb = set().union(*space.b_barycenters) if space.b_barycenters else set()
    return all(v in allb for v in s)


class TwistedSubdivisionChains:
    """Anchored twisted chain data on selected T'-simplices per dimension."""

    def __init__(self, space: StratifiedSpace):
        self.space = space
        self.k = space.system.rank

    def boundary_matrix(self, cols: Sequence[Simplex], rows: Sequence[Simplex]) -> np.ndarray:
        """Twisted boundary from the span of `cols` (dim d) into `rows` (dim d-1).

        Faces outside `rows` are dropped; callers must separately constrain
        them if they matter.
        """
        k = self.k
        pos = {s: i for i, s in enumerate(rows)}
        B = np.zeros((k * len(rows), k * len(cols)))
        for ci, s in enumerate(cols):
            for sign, f in _anchored_boundary_entries(self.space, s):
                ri = pos.get(f)
                if ri is None:
                    continue
                M = self.space.transport(s, f)
                B[ri * k : (ri + 1) * k, ci * k : (ci + 1) * k] += sign * M
        return B


def basic_complex(space: StratifiedSpace, p: Perversity) -> BasedChainComplex:
    """The finite complex of basic-set pair homologies with twisted coefficients.

    Degree i is spanned by the relative cycles of (R_i, R_{i-1}): chains on
    the i-simplices of R_i \\ R_{i-1} whose boundary components on faces
    outside R_{i-1} vanish; the boundary map is the connecting map of the
    triple, computed on chain representatives.
    """
    R = basic_sets(space, p)
    Tp = space.Tp
    m = space.dim
    tw = TwistedSubdivisionChains(space)
    k = tw.k

    pair_simps: list[list[Simplex]] = []
    cycle_bases: list[np.ndarray] = []
    for i in range(m + 1):
        prev = set(R[i - 1].get(i, [])) if i >= 1 else set()
        cols = [s for s in R[i].get(i, []) if s not in prev]
        if any(_is_b_contained(space, s) for s in cols):
            raise AssertionError("allowable top simplices cannot sit inside B")
        # faces to constrain: (i-1)-simplices of T' not in R_{i-1}
        allowed_prev = set(R[i - 1].get(i - 1, [])) if i >= 1 else set()
        constrain = [f for f in Tp.simplices.get(i - 1, ()) if f not in allowed_prev]
        constrain = [f for f in constrain if not _is_b_contained(space, f)]
        # sanity: boundaries of allowable i-simplices never hit B-contained faces
        C = tw.boundary_matrix(cols, constrain) if cols else np.zeros((0, 0))
        Z = nullspace(C) if cols else np.zeros((0, 0))
        pair_simps.append(cols)
        cycle_bases.append(Z if Z.size else np.zeros((k * len(cols), 0)))

    dims = [cycle_bases[i].shape[1] for i in range(m + 1)]
    boundary: dict[int, np.ndarray] = {}
    for i in range(1, m + 1):
        # boundary of representatives, read in the coordinates of the next pair
        cols_i = pair_simps[i]
        rows = pair_simps[i - 1]
        D = tw.boundary_matrix(cols_i, rows)
        img = D @ cycle_bases[i] if dims[i] else np.zeros((k * len(rows), 0))
        # express modulo chains of R_{i-2}: subtract nothing (those coordinates
        # are absent from the pair window) and solve in the cycle basis
        Zprev = cycle_bases[i - 1]
        if dims[i - 1] == 0:
            if img.size and np.max(np.abs(img)) > 1e-8:
                # the class may be killed by R_{i-2}-chains; project out the
                # non-cycle part by solving in the larger allowable space
                raise ValueError("boundary leaves the basic complex")
            boundary[i] = np.zeros((0, dims[i]))
            continue
        sol, *_ = np.linalg.lstsq(Zprev, img, rcond=None)
        resid = Zprev @ sol - img
        if resid.size and np.max(np.abs(resid)) > 1e-7 * max(1.0, float(np.max(np.abs(img)))):
            raise ValueError("boundary of a relative cycle is not a relative cycle")
        boundary[i] = sol
    labels = {i: [(s, j) for s in pair_simps[i] for j in range(k)] for i in range(m + 1)}
    C = BasedChainComplex(dims, boundary, labels={})
    C.pair_simplices = pair_simps  # type: ignore[attr-defined]
    C.cycle_bases = cycle_bases  # type: ignore[attr-defined]
    return C


def ic_homology(space: StratifiedSpace, p: Perversity,
                size_guard: int = IC_SIZE_GUARD) -> list[int]:
    """Brute-force intersection homology dimensions over the full chain space.

    The guard protects against accidentally exponential inputs; callers may
    raise it deliberately for a specific oracle run.
    """
    Tp = space.Tp
    if Tp.n_simplices() > size_guard:
        raise ValueError(
            f"IC brute force refused: {Tp.n_simplices()} simplices exceed {size_guard}"
        )
    m = space.dim
    tw = TwistedSubdivisionChains(space)
    k = tw.k
    allowable: list[list[Simplex]] = []
    for i in range(m + 1):
        allowable.append(
            [s for s in Tp.simplices.get(i, ()) if simplex_allowable(space, s, i, p)
             and not _is_b_contained(space, s)]
        )
    # IC_i: chains on allowable i-simplices whose boundary is supported on
    # (p, i-1)-allowable simplices
    bases: list[np.ndarray] = []
    for i in range(m + 1):
        cols = allowable[i]
        bad = [
            f
            for f in Tp.simplices.get(i - 1, ())
            if not simplex_allowable(space, f, i - 1, p)
            and not _is_b_contained(space, f)
        ]
        C = tw.boundary_matrix(cols, bad) if cols else np.zeros((0, 0))
        Z = nullspace(C) if cols else np.zeros((0, 0))
        bases.append(Z if Z.size else np.zeros((k * len(cols), 0)))

    dims = []
    for i in range(m + 1):
        n_i = bases[i].shape[1]
        Di = tw.boundary_matrix(allowable[i], allowable[i - 1]) if i >= 1 else None
        rank_out = _rank(Di @ bases[i]) if i >= 1 and n_i else 0
        if i + 1 <= m and bases[i + 1].shape[1]:
            Dup = tw.boundary_matrix(allowable[i + 1], allowable[i])
            rank_in = _rank(Dup @ bases[i + 1])
        else:
            rank_in = 0
        dims.append(n_i - rank_out - rank_in)
    return dims


def dar_torsion(space: StratifiedSpace, p: Perversity,
                h: Sequence[np.ndarray] | None = None) -> TorsionValue:
    """Intersection R-torsion: cochain torsion of the basic complex."""
    C = basic_complex(space, p)
    return log_torsion_cochain(C.dual(), h)
