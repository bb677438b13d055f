"""Heat-trace index families, Euclidean b-spectra, and membership checks."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .families import ExponentMatrix, FaceLattice, IndexFamily, pushforward_family
from .indexset import EMPTY, IndexSet, from_orders, natural
from .surgery import DELTA_HEAT, ET, HEAT

# ET face receiving each face of the blown-up heat diagonal
PUSH_ET = ExponentMatrix(
    DELTA_HEAT,
    ET,
    {
        ("tf", "tf"): 1,
        ("tff", "tff"): 1,
        ("eps_tau", "tff"): 1,
        ("hbf", "af"): 1,
        ("hmf", "af"): 1,
    },
)


def heat_alpha(m: int, h: int) -> IndexFamily:
    """The index family of the heat kernel on the surgery heat space."""
    return IndexFamily(
        HEAT,
        {
            "tf": natural(-m),
            "tff": natural(-h - 1),
            "hbf": natural(0),
            "hmf": natural(0),
            # tb, hlf, hlr carry empty sets (infinite-order vanishing)
        },
    )


def heat_alpha_even(m: int, h: int, order: int | None = None) -> IndexFamily:
    """Heat-kernel family with the even-metric refinement at the front face.

    For an exactly even metric the front-face expansion proceeds in even
    steps; for a metric even only to order `order` >= 2 the even steps hold
    below that order and all integers from it on.
    """
    base = heat_alpha(m, h)
    if order is None:
        tff = IndexSet([(-h - 1, 0), (-h + 1, 0)])  # -h-1 + 2*N0
    else:
        if order < 2:
            raise ValueError("evenness order must be >= 2")
        evens = [Fraction(-h - 1 + n) for n in range(0, order, 2)]
        tff = from_orders(evens + [Fraction(-h - 1 + order)])
    return base.replace(tff=tff)


def heat_trace_family(alpha: IndexFamily, m: int, h: int) -> IndexFamily:
    """Index family of the heat trace on the rescaled (eps, sqrt t) square.

    The trace is the pushforward of the diagonal-restricted kernel through
    the blown-up corner: the new corner face carries the sum of the two
    adjacent index sets, faces over eps = 0 combine by extended union.
    """
    if alpha.lattice != HEAT:
        raise ValueError("expected a heat-space index family")
    corner = alpha["hmf"] + alpha["tf"]
    upstairs = IndexFamily(
        DELTA_HEAT,
        {
            "tf": alpha["tf"],
            "tff": alpha["tff"],
            "eps_tau": corner,
            "hbf": alpha["hbf"],
            "hmf": alpha["hmf"],
        },
    )
    return pushforward_family(PUSH_ET, upstairs, strict=False)


def heat_trace_expected(m: int, h: int) -> IndexFamily:
    """The closed-form heat trace family A^{-m, (-h-1) ubar (-m), 0 ubar 0}."""
    tf = natural(-m)
    tff = natural(-h - 1).extended_union(natural(-m))
    af = natural(0).extended_union(natural(0))
    return IndexFamily(ET, {"tf": tf, "tff": tff, "af": af})


def heat_trace_tff_contribution(m: int, h: int, even: bool = False,
                                order: int | None = None) -> IndexSet:
    """Index set contributed at tff by the front face alone (no corner terms)."""
    alpha = heat_alpha_even(m, h, order) if even else heat_alpha(m, h)
    return alpha["tff"]


# -- Euclidean model operators (radial compactification) -------------------


def sphere_eigenvalues(n: int, lmax: int) -> list[int]:
    """Eigenvalues l(l + n - 2) of the round (n-1)-sphere, l = 0..lmax.

    For n = 1 the 0-sphere is two points and only l = 0 occurs.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if n == 1:
        return [0]
    return [l * (l + n - 2) for l in range(lmax + 1)]


def euclidean_b_spectrum(n: int, lmax: int = 32) -> list[Fraction]:
    """i Spec_b of the radially compactified Euclidean Laplacian.

    The roots (n-2)/2 -/+ sqrt(nu + ((n-2)/2)^2) over sphere eigenvalues
    nu = l(l + n - 2) are exact integers: -l and l + n - 2.
    """
    roots: set[Fraction] = set()
    for l_ in range(0, lmax + 1) if n >= 2 else [0]:
        half = Fraction(n - 2, 2)
        # nu + half^2 = (l + half)^2 exactly
        s = l_ + half
        roots.add(half - s)
        roots.add(half + s)
    return sorted(roots)


def _alpha0(n: int) -> Fraction:
    """A convenient weight below n-2 avoiding accidental multiplicities.

    All b-spectrum points are integers, so any weight with 2*alpha not an
    integer avoids collisions; n - 2 - 1/4 also satisfies the two gap
    conditions for every n >= 1.
    """
    return Fraction(n - 2) - Fraction(1, 4)


def index_set_H(n: int, lmax: int = 32) -> IndexSet:
    """H_n = hat H^+(alpha_0): orders of decay of solutions at infinity."""
    spec = euclidean_b_spectrum(n, lmax)
    a = _alpha0(n)
    plus = [z for z in spec if z > a]
    minus_shifted = [-z + 2 * a for z in spec if z < a]
    Hplus = from_orders(plus)
    Hminus = from_orders(minus_shifted)
    return Hplus.extended_union(Hminus)


def index_sets_J(n: int, lmax: int = 32) -> IndexSet:
    """J_n = H_n + 1, the decay index set of the inverted Dirac operator."""
    return index_set_H(n, lmax).shift(1)


# -- membership constraints (resolvent calculus certificates) --------------


def validate_calculus_membership(
    G: IndexFamily,
    constraints: Iterable[tuple[str, Fraction | int, str]],
) -> bool:
    """Check (face, bound, strictness) constraints on an index family.

    Strictness is 'gt' for inf > bound (every order strictly above) or
    'ge' for inf >= bound (orders at the bound only as (bound, 0)).
    """
    for face, bound, strictness in constraints:
        E = G[face]
        if strictness == "gt":
            if not E.inf_gt(bound):
                return False
        elif strictness == "ge":
            if not E.inf_ge(bound):
                return False
        else:
            raise ValueError(f"unknown strictness {strictness!r}")
    return True


def resolvent_constraints_J(h: int) -> list[tuple[str, Fraction, str]]:
    """The constraint set carried by the holomorphic part of the resolvent."""
    hp1 = Fraction(h + 1)
    return [
        ("ff", Fraction(0), "ge"),
        ("phibf", Fraction(0), "ge"),
        ("mf", Fraction(0), "ge"),
        ("lf", Fraction(0), "gt"),
        ("rf", hp1, "gt"),
        ("phibf", hp1, "ge"),
    ]


def resolvent_constraints_K() -> list[tuple[str, Fraction, str]]:
    """Constraints on the finite-rank part on the b-surgery double space."""
    return [
        ("bf", Fraction(0), "ge"),
        ("mf", Fraction(0), "ge"),
        ("lf", Fraction(0), "gt"),
        ("rf", Fraction(0), "gt"),
    ]
