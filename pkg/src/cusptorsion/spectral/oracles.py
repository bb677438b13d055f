"""Independent oracles: theta traces and a shooting-method mode solver."""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import solve_ivp

from .model import SpectralFamily


def theta_sum(t: float, shift: float, cutoff: int = 64) -> float:
    """sum_{k in Z} exp(-t (k + shift)^2), truncated with negligible tail."""
    ks = np.arange(-cutoff, cutoff + 1)
    return float(np.sum(np.exp(-t * (ks + shift) ** 2)))


def flat_heat_trace(family: SpectralFamily, t: float, degree: int) -> float:
    """Heat trace of the flat product metric (the eps = 1 oracle)."""
    m = family.dim
    total = 0.0
    for a0, af in family.characters():
        term = theta_sum(t, a0)
        for a in af:
            term *= theta_sum(t, a)
        total += term
    return math.comb(m, degree) * total


def flat_heat_trace_all_degrees(family: SpectralFamily, t: float) -> float:
    return sum(flat_heat_trace(family, t, q) for q in range(family.dim + 1))


def shooting_transfer_trace(family: SpectralFamily, eps: float, lam: float,
                            rtol: float = 1e-10, atol: float = 1e-12) -> float:
    """Trace of the transfer matrix of the degree-zero, fiber-mode-zero
    Laplacian over one period; a periodic eigenvalue satisfies trace = 2.

    The unconjugated scalar form - w^{1-v} (w^{v+1} u')' = lam u is used:
    it has the same spectrum as the conjugated block but its coefficients
    involve only w and w', so the warp kink at the tube edge needs no
    delta-function bookkeeping.
    """
    v = family.fiber_dim

    def rhs(x, y):
        u, up = y
        w2 = float(family.warp_sq(np.array([x]), eps)[0])
        wp = float(family.warp_prime(np.array([x]), eps)[0])
        w = math.sqrt(w2)
        # u'' = -(v+1) (w'/w) u' - lam u / w^2
        return [up, -(v + 1) * (wp / w) * up - lam * u / w2]

    cols = []
    for y0 in ([1.0, 0.0], [0.0, 1.0]):
        sol = solve_ivp(rhs, (0.0, 2 * math.pi), y0, rtol=rtol, atol=atol,
                        dense_output=False)
        cols.append(sol.y[:, -1])
    return float(cols[0][0] + cols[1][1])


def shooting_count_below(family: SpectralFamily, eps: float, delta: float,
                         scan_points: int = 60) -> int:
    """Number of periodic eigenvalues of the mode-zero block below delta.

    The zero mode is exact for the trivial character (the warp^{1/2}
    section annihilated by the first-order factor), so it is counted
    outright; positive eigenvalues come from discriminant sign changes on
    (0, delta].
    """
    count = 1  # exact zero mode
    lams = np.linspace(delta * 1e-3, delta, scan_points)
    vals = [shooting_transfer_trace(family, eps, l) - 2.0 for l in lams]
    for fa, fb in zip(vals, vals[1:]):
        if fa == 0.0 or fa * fb < 0:
            count += 1
    return count


def shooting_smallest_positive(family: SpectralFamily, eps: float,
                               upper: float, tol: float = 1e-12) -> float:
    """Smallest positive periodic eigenvalue of the mode-zero block by
    bisection on the discriminant."""
    f = lambda l: shooting_transfer_trace(family, eps, l) - 2.0
    lo = 1e-9
    flo = f(lo)
    n = 80
    grid = np.geomspace(1e-6, upper, n)
    prev, fprev = lo, flo
    for l in grid:
        fl = f(l)
        if fprev * fl < 0:
            a, b, fa = prev, l, fprev
            for _ in range(200):
                mid = 0.5 * (a + b)
                fm = f(mid)
                if fa * fm <= 0:
                    b = mid
                else:
                    a, fa = mid, fm
                if b - a < tol * max(1.0, b):
                    break
            return 0.5 * (a + b)
        prev, fprev = l, fl
    raise ValueError("no positive periodic eigenvalue found below the bound")
