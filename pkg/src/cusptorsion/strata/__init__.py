from .perversity import Perversity, top_perversity, upper_middle, zero_perversity
from .stratified import StratifiedSpace
from .allowable import basic_sets, is_allowable, simplex_allowable
from .icomplex import basic_complex, dar_torsion, ic_homology
from .spaces import collapsed_torus3_space, cone_space, smooth_space, suspension_space
from .surgery import SurgeryScene, fiber_acyclic, surgery_identity_residual, witt_check
