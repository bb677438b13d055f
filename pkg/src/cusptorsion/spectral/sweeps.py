"""Epsilon sweeps: eigenvalue tracking, counting, heat-trace regression."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .model import SpectralFamily
from .solve import DegreeSpectrum, solve_family


@dataclass
class EigenSweep:
    family: SpectralFamily
    eps_grid: list[float]
    spectra: dict[float, dict[int, DegreeSpectrum]] = field(default_factory=dict)

    def run(self, lam_max: float = 60.0, tail_t: float = 0.25) -> "EigenSweep":
        for eps in self.eps_grid:
            self.spectra[eps] = solve_family(self.family, eps, lam_max=lam_max,
                                             tail_t=tail_t)
        return self

    def degree(self, d: int) -> list[tuple[float, DegreeSpectrum]]:
        return [(eps, self.spectra[eps][d]) for eps in self.eps_grid]

    def min_eigenvalue_track(self, degree: int | None = None) -> list[tuple[float, float]]:
        out = []
        for eps in self.eps_grid:
            specs = self.spectra[eps]
            if degree is None:
                lam = min(s.min_eigenvalue() for s in specs.values())
            else:
                lam = specs[degree].min_eigenvalue()
            out.append((eps, lam))
        return out


def small_eigenvalue_count(sweep: EigenSweep, delta: float,
                           degree: int | None = None) -> dict:
    """Counts of eigenvalues below delta per epsilon, with a plateau check.

    The count must stabilize along the tail of the grid; the smallest
    positive eigenvalue track is fitted for its decay exponent in epsilon.
    """
    counts = []
    min_pos = []
    for eps in sweep.eps_grid:
        specs = sweep.spectra[eps]
        if degree is None:
            c = sum(s.count_below(delta) for s in specs.values())
            vals = np.concatenate([s.values for s in specs.values()])
            mults = np.concatenate([s.mults for s in specs.values()])
        else:
            c = specs[degree].count_below(delta)
            vals, mults = specs[degree].values, specs[degree].mults
        counts.append(c)
        pos = vals[(vals > 1e-9)]
        min_pos.append(float(pos.min()) if pos.size else math.inf)
        gap = vals[vals >= delta]
        if gap.size and gap.min() < 2 * delta:
            pass  # delta sits close to the continuum; caller sees the counts
    tailn = max(2, len(counts) // 2)
    plateau = len(set(counts[-tailn:])) == 1
    # decay exponent of the smallest positive eigenvalue across the sweep
    slope = None
    smalls = [(e, v) for e, v in zip(sweep.eps_grid, min_pos) if np.isfinite(v)]
    if len(smalls) >= 3:
        le = np.log([e for e, _ in smalls])
        lv = np.log([v for _, v in smalls])
        slope = float(np.polyfit(le, lv, 1)[0])
    return {
        "counts": dict(zip(sweep.eps_grid, counts)),
        "stable": plateau,
        "limit_count": counts[-1] if plateau else None,
        "min_positive": dict(zip(sweep.eps_grid, min_pos)),
        "decay_exponent": slope,
    }


def first_stable_gap(sweep: EigenSweep, degree: int | None = None) -> float:
    """A defensible delta: half the smallest eigenvalue above the collapsing
    cluster at the final epsilon (used to validate caller-supplied deltas)."""
    eps = sweep.eps_grid[-1]
    specs = sweep.spectra[eps]
    vals = (np.concatenate([s.values for s in specs.values()])
            if degree is None else specs[degree].values)
    vals = np.sort(vals)
    return float(vals[min(len(vals) - 1, 8)])


def heat_trace_of(spec: dict[int, DegreeSpectrum], t: float,
                  degree: int | None = None) -> float:
    if degree is None:
        return sum(s.heat_trace(t) for s in spec.values())
    return spec[degree].heat_trace(t)


def heat_trace_regression(sweep: EigenSweep, t: float,
                          degree: int | None = None) -> dict:
    """Fit trace(eps; t) = c_{-1}(t) log eps + c_0(t) across the grid."""
    eps = np.array(sweep.eps_grid)
    tr = np.array([heat_trace_of(sweep.spectra[e], t, degree) for e in eps])
    A = np.stack([np.log(eps), np.ones_like(eps)], axis=1)
    coef, *_ = np.linalg.lstsq(A, tr, rcond=None)
    resid = float(np.max(np.abs(A @ coef - tr)))
    tail = max(s.tail_bound_t for s in sweep.spectra[eps[0]].values())
    return {
        "t": t,
        "slope_log_eps": float(coef[0]),
        "intercept": float(coef[1]),
        "fit_residual": resid,
        "traces": dict(zip(eps.tolist(), tr.tolist())),
        "tail_bound": tail,
    }


def small_det_decomposition(sweep: EigenSweep, delta: float,
                            degree: int | None = None) -> dict:
    """Fit of the log-product of positive small eigenvalues against log eps.

    A phenomenological check: reports the fitted power law and the finite
    part, without asserting the determinant identity.
    """
    rows = []
    for eps in sweep.eps_grid:
        specs = sweep.spectra[eps]
        vals, mults = [], []
        degs = specs.keys() if degree is None else [degree]
        for d in degs:
            s = specs[d]
            keep = (s.values > 1e-9) & (s.values < delta)
            vals.append(s.values[keep])
            mults.append(s.mults[keep])
        vals = np.concatenate(vals)
        mults = np.concatenate(mults)
        if vals.size == 0:
            continue
        rows.append((eps, float(np.sum(mults * np.log(vals)))))
    if not rows:
        raise ValueError("no positive small eigenvalues below delta on the grid")
    eps = np.array([r[0] for r in rows])
    lp = np.array([r[1] for r in rows])
    A = np.stack([np.log(eps), np.ones_like(eps)], axis=1)
    coef, *_ = np.linalg.lstsq(A, lp, rcond=None)
    return {
        "log_products": dict(zip(eps.tolist(), lp.tolist())),
        "slope": float(coef[0]),
        "finite_part": float(coef[1]),
    }
