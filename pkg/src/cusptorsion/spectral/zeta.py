"""Zeta determinants and analytic torsion from eigenvalue data.

zeta'(0) is evaluated through the renormalized time integral split at
t = 1: eigenvalue sums handle t >= 1 exactly (incomplete gamma), while the
small-time side is completed by heat coefficients fitted on a window
[t0, 1] against the half-integer ladder of the trace expansion; log t
terms are absent for the even product-type models treated here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import exp1

from .solve import DegreeSpectrum

EULER_GAMMA = 0.5772156649015328606


@dataclass
class ZetaReport:
    zeta_prime_0: float
    a_half_m: float          # fitted constant heat coefficient a_{m/2}
    n_zero_modes: int
    fit_residual: float
    tail_bound: float


def heat_ladder(m: int, step: float = 1.0, top: float = 1.5) -> list[float]:
    """Exponents of the short-time trace expansion starting at -m/2.

    Closed manifolds expand in integer steps (step 1.0, so odd dimensions
    carry no constant term); the cusp limit models may produce half steps
    (step 0.5), which also brings in a genuine constant coefficient.
    """
    gammas = []
    g = -m / 2.0
    while g <= top + 1e-9:
        gammas.append(round(g * 2) / 2.0)
        g += step
    return gammas


def fit_heat_coefficients(spec: DegreeSpectrum, m: int, t0: float,
                          step: float = 1.0,
                          n_window: int = 48) -> tuple[np.ndarray, list[float], float]:
    ts = np.geomspace(t0, 1.0, n_window)
    tr = np.array([spec.heat_trace(t) for t in ts])
    gammas = heat_ladder(m, step=step)
    A = np.stack([ts**g for g in gammas], axis=1)
    scale = np.linalg.norm(A, axis=0)
    coef, *_ = np.linalg.lstsq(A / scale, tr, rcond=None)
    coef = coef / scale
    resid = float(np.max(np.abs(A @ coef - tr)))
    return coef, gammas, resid


def zeta_prime_at_zero(spec: DegreeSpectrum, m: int, t0: float = 0.25,
                       step: float = 1.0, zero_tol: float = 1e-8) -> ZetaReport:
    """Derivative of the zeta function at the origin for one form degree.

    Writing Tr(t) = sum c_j t^{g_j} + r(t) with g_j <= 0 and r -> 0, the
    meromorphic continuation gives

        zeta'(0) = gamma_E (c_0 - N) + sum_{g_j < 0} c_j / g_j
                   + int_0^1 r(t) dt/t + int_1^inf (Tr(t) - N) dt/t

    with N the number of zero modes and c_0 = a_{m/2} the constant term.
    """
    n0 = spec.n_zero_modes(zero_tol)
    pos = spec.nonzero(zero_tol)

    # large time: exact via the exponential integral
    I1 = float(np.sum(pos.mults * exp1(pos.values))) if pos.values.size else 0.0

    # fitted short-time ladder
    coef, gammas, resid = fit_heat_coefficients(spec, m, t0, step=step)
    c0 = 0.0
    neg_sum = 0.0
    for c, g in zip(coef, gammas):
        if abs(g) < 1e-12:
            c0 += c
        elif g < 0:
            neg_sum += c / g

    # r(t) on [t0, 1] from eigenvalue sums minus the non-positive powers
    ts = np.geomspace(t0, 1.0, 160)
    sing = np.zeros_like(ts)
    for c, g in zip(coef, gammas):
        if g < 1e-12:
            sing += c * ts**g
    vals = np.array([spec.heat_trace(t) for t in ts]) - sing
    I_mid = float(np.trapezoid(vals / ts, ts))
    # r(t) on (0, t0] from the fitted positive powers
    I_low = 0.0
    for c, g in zip(coef, gammas):
        if g > 1e-12:
            I_low += c * t0**g / g

    zp = EULER_GAMMA * (c0 - n0) + neg_sum + I_mid + I_low + I1
    return ZetaReport(float(zp), float(c0), n0, resid, spec.tail_bound_t)


def analytic_torsion(spectra: dict[int, DegreeSpectrum], m: int,
                     t0: float = 0.25, step: float = 1.0) -> dict:
    """log AT = 1/2 sum_q (-1)^q q zeta_q'(0) with per-degree reports."""
    reports = {}
    log_at = 0.0
    for q, spec in spectra.items():
        rep = zeta_prime_at_zero(spec, m, t0=t0, step=step)
        reports[q] = rep
        log_at += 0.5 * (-1) ** q * q * rep.zeta_prime_0
    return {"log_at": log_at, "reports": reports}


def analytic_torsion_det(spectra: dict[int, DegreeSpectrum],
                         zero_tol: float = 1e-8) -> dict:
    """log AT via the finite determinant combination of the discrete blocks.

    For the surgery models every form degree splits into supersymmetric
    quartet blocks sharing first-order factors, so the alternating
    combination 1/2 sum_q (-1)^q q log det Delta_q telescopes mode by mode:
    the divergent parts of the determinants cancel exactly and the value
    converges to the zeta-regularized combination (checked against exact
    Hill-discriminant determinant ratios).  Unreliable for v = 0 models,
    where no telescoping partner exists; use the fitted path there.
    """
    log_at = 0.0
    zeros = {}
    for q, spec in spectra.items():
        pos = spec.nonzero(zero_tol)
        zeros[q] = spec.n_zero_modes(zero_tol)
        logdet = float(np.sum(pos.mults * np.log(pos.values)))
        log_at += 0.5 * (-1) ** q * q * (-logdet)
    return {"log_at": log_at, "zero_modes": zeros}
