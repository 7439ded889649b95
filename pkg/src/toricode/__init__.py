"""Toric and generalized toric codes from lattice point configurations.

The package is organized around five layers:

* ``lattice`` -- exact integer lattice geometry (points, hulls, Minkowski
  sums, affine-unimodular equivalence),
* ``mlength`` -- Minkowski length, strong indecomposability and the census
  of small polygons,
* ``gf`` -- finite field tables and torus enumeration,
* ``codes`` -- generator matrices, exact minimum distance (exhaustive and
  information-set), Construction X,
* ``bounds`` / ``constructions`` -- closed-form distance formulas and the
  structured configuration builders they apply to.

``cli`` binds everything into the ``toricode`` command.
"""

from toricode.lattice import (
    LatticeConfiguration,
    LatticePolytope,
    AffineUnimodularMap,
    convex_hull,
)
from toricode.gf import FiniteField, make_field, torus_points
from toricode.codes import LinearCode, CodeParams, build_code

__all__ = [
    "LatticeConfiguration",
    "LatticePolytope",
    "AffineUnimodularMap",
    "convex_hull",
    "FiniteField",
    "make_field",
    "torus_points",
    "LinearCode",
    "CodeParams",
    "build_code",
]

__version__ = "0.1.0"
