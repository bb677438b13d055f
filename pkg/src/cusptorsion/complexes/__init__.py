from .simplicial import (
    SimplicialComplex,
    barycentric_subdivision,
    circle,
    cone,
    disjoint_union,
    glue,
    interval,
    point,
    suspension,
    torus,
    torus3,
)
from .constructions import (
    SimplicialMap,
    coordinate_side,
    cut_along,
    glue_two,
    mapping_cylinder,
)
from .local_system import LocalSystem, rotation, torus_rotation_system, trivial_system
from .chains import (
    BasedChainComplex,
    homology,
    relative_twisted_complex,
    twisted_complex,
)
