"""Torsion invariants and spectral checks for fibered cusp degeneration.

Subpackages:

* ``indexcalc``  -- exact algebra of polyhomogeneous index sets and families
* ``complexes``  -- simplicial complexes, local systems, twisted chain complexes
* ``torsion``    -- R-torsion of based complexes, Milnor multiplicativity, Smith forms
* ``strata``     -- depth-one stratified spaces, intersection homology, Dar torsion
* ``spectral``   -- eigenvalue sweeps, heat traces, analytic torsion on torus models
"""

__version__ = "0.1.0"
