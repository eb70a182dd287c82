"""Generalized Hopf fibrations of pseudo-hyperbolic spaces.

Numerical O'Neill tensors on the canonical circle and ``Sp(1)`` fibrations of
real and complex pseudo-hyperbolic quadrics, the frame constructions that
classify submersions with totally geodesic fibres, and the resulting
existence/nonexistence decision procedure.
"""
from .classify import (
    ClassificationVerdict,
    ProblemInstance,
    Status,
    admissible,
    classify,
    classify_complex,
    classify_quaternionic,
    classify_real,
)
from .errors import (
    ClassificationContradiction,
    ContractViolation,
    DegenerateKernel,
    DegenerateSubspace,
    FibreMismatch,
    NullDirection,
)
from .frames import build_fibre_frame, build_horizontal_basis, index_decomposition
from .harness import VerificationReport, run_verify
from .hopf import Fibration, FibrationKind
from .ilin import IndefiniteForm, Ring, Signature
from .oneill import A_star, A_tensor, T_tensor, base_curvature, covariant_derivative, mixed_curvature_residual
from .spaceform import RealModel

__version__ = "0.1.0"
