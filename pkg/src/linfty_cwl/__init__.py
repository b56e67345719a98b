"""Exact rational computations with L-infinity algebras, representations up to homotopy,
Chevalley-Eilenberg cohomology, and characteristic classes of L-infinity extensions."""
from .graded import GradedSpace
from .linfty import CrossedModule, LInftyAlgebra, LInftyMorphism, minimal_model_2term
from .ruth import Ruth, RuthMorphism, adjoint_ruth, check_ruth
from .cochain import Cochain, ce_differential
from .cohomology import cohomology, same_class
from .extension import LInftyExtension, Section, curvature, kernel_extension
from .cwl import cwl_class, cwl_cocycle, equivariant_homs

__version__ = "0.1.0"
