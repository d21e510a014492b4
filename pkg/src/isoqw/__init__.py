"""Isotropic quantum walks with two-dimensional coin on Z^d lattices.

Library layout:

* :mod:`isoqw.matkernel` -- exact Q(sqrt3) matrices and complex 2x2 numerics
* :mod:`isoqw.point_groups` -- finite subgroup catalog, orbits, orthogonalization
* :mod:`isoqw.cayley` -- generating sets, spanning checks, Brillouin zones
* :mod:`isoqw.walk` -- walk operators, unitarity conditions, torus oracle, evolution
* :mod:`isoqw.isotropy` -- covariance/homogeneity checks and coin representations
* :mod:`isoqw.classifier` -- the full classification pipeline with certificates
* :mod:`isoqw.cli` -- command-line front end
"""

__version__ = "0.1.0"
