"""Surgery-space face lattices, projection exponent matrices, and the
mapping/composition rules for index families.

The closed-form rules (`mapping_theorem`, `compose_families`) are checked
against oracles that run the raw pullback -> sum -> pushforward pipeline
through the double and triple space with the blow-up density offsets.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .families import ExponentMatrix, FaceLattice, IndexFamily, pullback_family, pushforward_family
from .indexset import EMPTY, IndexSet

# -- face lattices ------------------------------------------------------

SINGLE = FaceLattice("X_s", ("bs", "ms"))
DOUBLE = FaceLattice("X2_s", ("ff", "phibf", "lf", "rf", "mf"))
DOUBLE_B = FaceLattice("X2_bs", ("bf", "lf", "rf", "mf"))
TRIPLE = FaceLattice(
    "X3_s",
    (
        "phiTT", "phiFT", "phiCT", "phiST",
        "phiF", "phiC", "phiS",
        "T", "F", "C", "S",
        "N1", "N2", "N3", "Z",
    ),
)
HEAT = FaceLattice("HX_s", ("tf", "tff", "hbf", "hmf", "tb", "hlf", "hlr"))
DELTA_HEAT = FaceLattice("DeltaHX~", ("tf", "tff", "eps_tau", "hbf", "hmf"))
ET = FaceLattice("ET", ("tf", "tff", "af"))
EPS = FaceLattice("[0,1]_eps", ("eps0",))

# -- projections off one factor (Prop. on double/triple projections) ----

# double space -> single space, projection retaining the left factor
BETA2_L = ExponentMatrix(
    DOUBLE,
    SINGLE,
    {("lf", "bs"): 1, ("phibf", "bs"): 1, ("ff", "bs"): 1, ("rf", "ms"): 1, ("mf", "ms"): 1},
)
# projection retaining the right factor
BETA2_R = ExponentMatrix(
    DOUBLE,
    SINGLE,
    {("rf", "bs"): 1, ("phibf", "bs"): 1, ("ff", "bs"): 1, ("lf", "ms"): 1, ("mf", "ms"): 1},
)

# triple space -> double space, projections off the first/second/third factor
PI_F = ExponentMatrix(
    TRIPLE,
    DOUBLE,
    {
        ("phiTT", "ff"): 1, ("phiFT", "ff"): 1, ("phiF", "ff"): 1,
        ("phiCT", "phibf"): 1, ("phiST", "phibf"): 1, ("T", "phibf"): 1, ("F", "phibf"): 1,
        ("phiS", "lf"): 1, ("S", "lf"): 1, ("N2", "lf"): 1,
        ("phiC", "rf"): 1, ("C", "rf"): 1, ("N3", "rf"): 1,
        ("N1", "mf"): 1, ("Z", "mf"): 1,
    },
)
PI_C = ExponentMatrix(
    TRIPLE,
    DOUBLE,
    {
        ("phiTT", "ff"): 1, ("phiCT", "ff"): 1, ("phiC", "ff"): 1,
        ("phiFT", "phibf"): 1, ("phiST", "phibf"): 1, ("T", "phibf"): 1, ("C", "phibf"): 1,
        ("phiS", "lf"): 1, ("S", "lf"): 1, ("N1", "lf"): 1,
        ("phiF", "rf"): 1, ("F", "rf"): 1, ("N3", "rf"): 1,
        ("N2", "mf"): 1, ("Z", "mf"): 1,
    },
)
PI_S = ExponentMatrix(
    TRIPLE,
    DOUBLE,
    {
        ("phiTT", "ff"): 1, ("phiST", "ff"): 1, ("phiS", "ff"): 1,
        ("phiFT", "phibf"): 1, ("phiCT", "phibf"): 1, ("T", "phibf"): 1, ("S", "phibf"): 1,
        ("phiC", "lf"): 1, ("C", "lf"): 1, ("N1", "lf"): 1,
        ("phiF", "rf"): 1, ("F", "rf"): 1, ("N2", "rf"): 1,
        ("N3", "mf"): 1, ("Z", "mf"): 1,
    },
)


def density_exponents_single() -> dict[str, int]:
    """Exponents of the blow-down density transformation on X_s."""
    return {"bs": 1}


def density_exponents_double(h: int) -> dict[str, int]:
    """Exponents on X2_s: blow-down of the canonical density of M^2 x [0,1]."""
    return {"lf": 1, "rf": 1, "phibf": 2, "ff": h + 3}


def density_exponents_triple(h: int) -> dict[str, int]:
    """Exponents on X3_s of the canonical-density blow-down."""
    d = {"N1": 1, "N2": 1, "N3": 1, "F": 2, "C": 2, "S": 2, "T": 3}
    d.update({"phiF": h + 3, "phiC": h + 3, "phiS": h + 3})
    d.update({"phiFT": h + 4, "phiCT": h + 4, "phiST": h + 4, "phiTT": 2 * h + 5})
    return d


def _rho_exponents(*pulls: tuple[ExponentMatrix, ExponentMatrix]) -> dict[str, int]:
    """Exponent vector of a product of pullbacks of rho_bs to the triple space.

    Each entry is (projection to the double space, retention map to the single
    space); the pullback of rho_bs is the product of bdfs given by composing
    the two exponent matrices.
    """
    total: dict[str, int] = {}
    for pi, beta in pulls:
        for g in pi.source.faces:
            e = 0
            for h, e1 in pi.targets_of(g):
                for s, e2 in beta.targets_of(h):
                    if s == "bs":
                        e += e1 * e2
            if e:
                total[g] = total.get(g, 0) + e
    return total


def triple_density_offsets(h: int) -> dict[str, Fraction]:
    """Offsets turning two pulled-back kernels into a full triple-space density.

    These are the exponents of (rho rho' rho'')^{-(h+2)} times the canonical
    density blow-down, i.e. the weight nu_RHS in the composition proof.
    """
    rho = _rho_exponents((PI_C, BETA2_L))          # bdf of the first factor
    rho_p = _rho_exponents((PI_F, BETA2_L))        # second factor
    rho_pp = _rho_exponents((PI_F, BETA2_R))       # third factor
    t3 = density_exponents_triple(h)
    out: dict[str, Fraction] = {}
    for g in TRIPLE.faces:
        e = rho.get(g, 0) + rho_p.get(g, 0) + rho_pp.get(g, 0)
        out[g] = Fraction(t3.get(g, 0) - (h + 2) * e)
    return out


def double_density_offsets(h: int) -> dict[str, int]:
    """Exponents of (rho_lf rho_rf rho_phibf^2 rho_ff)^{-(h+1)} on X2_s."""
    return {"lf": -(h + 1), "rf": -(h + 1), "phibf": -2 * (h + 1), "ff": -(h + 1)}


# -- closed-form rules ---------------------------------------------------

def mapping_theorem(E: IndexFamily, F: IndexFamily, h: int) -> IndexFamily:
    """Index family of A f for A in the surgery calculus with family E
    acting on a polyhomogeneous f with family F."""
    if E.lattice != DOUBLE or F.lattice != SINGLE:
        raise ValueError("mapping_theorem expects families on X2_s and X_s")
    hp1 = h + 1
    G_ms = (E["mf"] + F["ms"]).extended_union((E["rf"] + F["bs"]).shift(-hp1))
    G_bs = (
        (E["lf"] + F["ms"])
        .extended_union(E["ff"] + F["bs"])
        .extended_union((E["phibf"] + F["bs"]).shift(-hp1))
    )
    return IndexFamily(SINGLE, {"bs": G_bs, "ms": G_ms})


def compose_families(E: IndexFamily, F: IndexFamily, h: int) -> IndexFamily:
    """Index family of the composition A o B for surgery-calculus operators
    with families E (for A) and F (for B)."""
    if E.lattice != DOUBLE or F.lattice != DOUBLE:
        raise ValueError("compose_families expects families on X2_s")
    s = -(h + 1)
    G_ff = (
        (E["ff"] + F["ff"])
        .extended_union((E["phibf"] + F["phibf"]).shift(s))
        .extended_union(E["lf"] + F["rf"])
    )
    G_phibf = (
        (E["phibf"] + F["ff"])
        .extended_union(E["ff"] + F["phibf"])
        .extended_union((E["phibf"] + F["phibf"]).shift(s))
        .extended_union(E["lf"] + F["rf"])
    )
    G_lf = (
        (E["ff"] + F["lf"])
        .extended_union((E["phibf"] + F["lf"]).shift(s))
        .extended_union(E["lf"] + F["mf"])
    )
    G_rf = (
        (E["rf"] + F["ff"])
        .extended_union((E["rf"] + F["phibf"]).shift(s))
        .extended_union(E["mf"] + F["rf"])
    )
    G_mf = (E["mf"] + F["mf"]).extended_union((E["rf"] + F["lf"]).shift(s))
    return IndexFamily(
        DOUBLE,
        {"ff": G_ff, "phibf": G_phibf, "lf": G_lf, "rf": G_rf, "mf": G_mf},
    )


# -- geometric oracles ----------------------------------------------------

def mapping_oracle(E: IndexFamily, F: IndexFamily, h: int) -> IndexFamily:
    """Mapping rule computed through the double space.

    Pull f back from the right, multiply with the kernel and the density
    weight, push forward to the left, and strip the single-space weight.
    """
    Ft = pullback_family(BETA2_R, F)
    offs = {g: Fraction(v) for g, v in double_density_offsets(h).items()}
    W = IndexFamily(DOUBLE, {g: E[g] + Ft[g] for g in DOUBLE.faces})
    pushed = pushforward_family(BETA2_L, W, density_offsets=offs, strict=False)
    return pushed.shift({"bs": h + 1})


def composition_oracle(E: IndexFamily, F: IndexFamily, h: int) -> IndexFamily:
    """Composition rule computed through the triple space.

    K(A o B) is the pushforward by pi_C of pi_S^* K(A) . pi_F^* K(B)
    weighted by the blow-up density factors; the X2_s weight is stripped
    at the end.
    """
    Ea = pullback_family(PI_S, E)
    Fb = pullback_family(PI_F, F)
    W = IndexFamily(TRIPLE, {g: Ea[g] + Fb[g] for g in TRIPLE.faces})
    pushed = pushforward_family(
        PI_C, W, density_offsets=triple_density_offsets(h), strict=False
    )
    back = {g: -v for g, v in double_density_offsets(h).items()}
    return pushed.shift(back)
