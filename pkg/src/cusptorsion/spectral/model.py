"""Degenerating torus models for the twisted Hodge Laplacian.

The geometry is a warped product: an x-circle of length 2*pi carrying the
surgery neck at x = 0, times a flat fiber torus T^v scaled by the warp

    w(x; eps)^2 = cap((x/r)^2 + eps^2),      x = circle distance from the neck,

where cap(u) = u below a blend point a < 1 and caps smoothly (C-infinity,
via the standard exponential step) to 1 at u = 1, staying 1 beyond.  Inside the tube this is the surgery normal
form up to the fixed scaling x -> x/r (a product-type surgery metric with
rescaled fiber); outside, the metric is the exact flat product, and at
eps = 1 the warp is identically one (the flat oracle case).  The C^2 blend
keeps the short-time heat ladder clean enough for the zeta fits.  The local system is a
rotation system with one angle per circle direction (base first); each
complex character contributes momentum shifts a_j = theta_j / 2 pi.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np


@dataclass(frozen=True)
class SpectralFamily:
    """Displaced-torus model: S^1_x x T^v with a rotation local system."""

    fiber_dim: int
    base_angle: float = 0.0
    fiber_angles: tuple[float, ...] = ()
    rank: int = 2
    closed: bool = False  # True: no surgery, warp identically one
    x_grid_size: int = 512
    mode_cutoff: int = 16
    tube_radius: float = 1.0
    blend_start: float = 0.4  # cap(u) = u below this, smooth to 1 at u = 1

    def __post_init__(self):
        if len(self.fiber_angles) != self.fiber_dim:
            raise ValueError("need one fiber angle per fiber dimension")
        if self.rank not in (1, 2):
            raise ValueError("rotation systems have rank 1 or 2")
        if self.rank == 1:
            for th in (self.base_angle, *self.fiber_angles):
                if abs(math.cos(th)) < 1.0 - 1e-12:
                    raise ValueError("rank-1 systems need angles multiple of pi")

    @property
    def dim(self) -> int:
        return self.fiber_dim + 1

    def characters(self) -> list[tuple[float, tuple[float, ...]]]:
        """Momentum shifts (base, fiber...) of the complexified system.

        A rank-2 rotation system splits into two conjugate characters; when
        they coincide modulo 1 (angles 0 or pi) both are listed so that the
        real multiplicities come out right.
        """
        a0 = self.base_angle / (2 * math.pi)
        af = tuple(t / (2 * math.pi) for t in self.fiber_angles)
        if self.rank == 1:
            return [(a0, af)]
        return [(a0, af), (-a0, tuple(-a for a in af))]

    def fiber_modes(self) -> dict[float, int]:
        """Distinct squared fiber momenta |kappa|^2 with multiplicities,
        aggregated over characters and the mode window |k_j| <= cutoff."""
        out: dict[float, int] = {}
        K = self.mode_cutoff
        for _, af in self.characters():
            if self.fiber_dim == 0:
                out[0.0] = out.get(0.0, 0) + 1
                continue
            for ks in itertools.product(range(-K, K + 1), repeat=self.fiber_dim):
                lam = sum((k + a) ** 2 for k, a in zip(ks, af))
                lam = round(lam, 12)
                out[lam] = out.get(lam, 0) + 1
        return dict(sorted(out.items()))

    def fiber_acyclic(self) -> bool:
        """No fiber character is trivial: every vertical momentum is nonzero."""
        if self.fiber_dim == 0:
            return False
        for _, af in self.characters():
            if all(abs(a - round(a)) < 1e-12 for a in af):
                return False
        return True

    # -- warp profile -------------------------------------------------------

    @staticmethod
    def neck_distance(x: np.ndarray) -> np.ndarray:
        """Signed circle distance from the neck x = 0, in [-pi, pi)."""
        return np.mod(np.asarray(x, dtype=float) + math.pi, 2 * math.pi) - math.pi

    @staticmethod
    def _smoothstep(s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """C-infinity step theta(s) with theta = 0 for s <= 0, 1 for s >= 1,
        and its derivative; built from sigma(s) = exp(-1/s)."""
        s = np.clip(np.asarray(s, dtype=float), 0.0, 1.0)
        su = np.clip(s, 1e-12, 1.0 - 1e-12)
        sa = np.exp(-1.0 / su)
        sb = np.exp(-1.0 / (1.0 - su))
        sa = np.where(s <= 0.0, 0.0, sa)
        sb = np.where(s >= 1.0, 0.0, sb)
        tot = sa + sb + 1e-300
        theta = sa / tot
        da = np.where(s <= 0.0, 0.0, sa / su**2)
        db = np.where(s >= 1.0, 0.0, -sb / (1.0 - su) ** 2)
        dtheta = (da * sb - sa * db) / tot**2
        return theta, dtheta

    def _cap(self, u: np.ndarray) -> np.ndarray:
        a = self.blend_start
        th, _ = self._smoothstep((np.asarray(u) - a) / (1.0 - a))
        return np.where(u >= 1.0, 1.0, (1.0 - th) * u + th)

    def _cap_prime(self, u: np.ndarray) -> np.ndarray:
        a = self.blend_start
        u = np.asarray(u)
        th, dth = self._smoothstep((u - a) / (1.0 - a))
        dth = dth / (1.0 - a)
        return np.where(u >= 1.0, 0.0, (1.0 - th) + dth * (1.0 - u))

    def warp_sq(self, x: np.ndarray, eps: float) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.closed:
            return np.ones_like(x)
        d = self.neck_distance(x) / self.tube_radius
        return self._cap(d * d + eps * eps)

    def warp(self, x: np.ndarray, eps: float) -> np.ndarray:
        return np.sqrt(self.warp_sq(x, eps))

    def warp_prime(self, x: np.ndarray, eps: float) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.closed:
            return np.zeros_like(x)
        r = self.tube_radius
        d = self.neck_distance(x) / r
        u = d * d + eps * eps
        return self._cap_prime(u) * d / (r * self.warp(x, eps))

    def resolution_flag(self, eps: float, min_points: int = 16) -> bool:
        """True when fewer than `min_points` grid points span the eps-neck.

        Under-resolved runs stay well-defined (the discrete operator is
        symmetric PSD regardless); results carry this flag so reports can
        surface it.
        """
        if self.closed:
            return False
        h = 2 * math.pi / self.x_grid_size
        return 2 * eps * self.tube_radius / h < min_points


def vertical_spectrum(fiber_dim: int, angles: Sequence[float], degree: int,
                      rank: int = 2, cutoff: int = 16) -> list[tuple[float, int]]:
    """Twisted fiber Laplacian spectrum on T^v with form-degree multiplicity.

    On the flat unit torus every form degree sees the same scalar spectrum
    |k + a|^2, with multiplicity binom(v, degree) per lattice point and
    character.
    """
    fam = SpectralFamily(fiber_dim, 0.0, tuple(angles), rank=rank,
                         mode_cutoff=cutoff, closed=True)
    mult = math.comb(fiber_dim, degree)
    out: dict[float, int] = {}
    for lam, m in fam.fiber_modes().items():
        out[lam] = out.get(lam, 0) + m * mult
    return sorted(out.items())


def harmonic_fiber_ranks(fiber_dim: int, angles: Sequence[float],
                         rank: int = 2) -> list[int]:
    """Ranks of the vertical harmonic form bundle per degree."""
    fam = SpectralFamily(fiber_dim, 0.0, tuple(angles), rank=rank, closed=True)
    zero_chars = 0
    for _, af in fam.characters():
        if all(abs(a - round(a)) < 1e-12 for a in af):
            zero_chars += 1
    return [math.comb(fiber_dim, q) * zero_chars for q in range(fiber_dim + 1)]


def horizontal_indicial_roots(fiber_dim: int, angles: Sequence[float],
                              rank: int = 2, base_Y: str = "point",
                              y_cutoff: int = 8) -> dict:
    """Indicial roots of the horizontal b-operator and the Fredholm flag.

    Roots are zeta = +-i sqrt(mu + (q - v/2)^2) over eigenvalues mu of the
    base operator on the vertical-harmonic bundle and harmonic degrees q;
    a real root (zero) appears exactly when mu = 0 meets q = v/2.
    """
    v = fiber_dim
    ranks = harmonic_fiber_ranks(v, angles, rank)
    if base_Y == "point":
        mus = [0.0]
    elif base_Y == "circle":
        mus = sorted({float(k**2) for k in range(-y_cutoff, y_cutoff + 1)})
    else:
        raise ValueError("base_Y must be 'point' or 'circle'")
    roots: list[complex] = []
    fredholm = True
    for q, r in enumerate(ranks):
        if r == 0:
            continue
        for mu in mus:
            val = mu + (q - v / 2.0) ** 2
            root = complex(0.0, math.sqrt(val))
            roots += [root, -root]
            if val == 0.0:
                fredholm = False
    roots = sorted(set(roots), key=lambda z: (z.imag, z.real))
    return {"roots": roots, "fredholm": fredholm, "harmonic_ranks": ranks}
