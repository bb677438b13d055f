from .rtorsion import (
    TorsionValue,
    basis_change_det,
    empty_homology_basis,
    harmonic_homology_basis,
    log_torsion,
    log_torsion_cochain,
)
from .integer import IntegerCochainComplex, integer_torsion, smith_normal_form
from .milnor import CochainSES, milnor_residual
from .ops import (
    pair_ses,
    r_torsion,
    subcomplex_chain_complex,
    torsion_of_complex,
    torsion_of_pair,
)
