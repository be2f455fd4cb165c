"""Finite-dimensional Lie algebras over prime fields: Chevalley algebras,
Cartan-type and Ermolaev algebras, MeatAxe tests, gradings and a certificate
pipeline for the maximal Ermolaev subalgebra of F4 in characteristic 3."""

from .ffalg import PrimeField, Subspace, kernel, rref
from .liecore import LieAlgebra, SubalgebraHandle, subalgebra_closure
from .pipeline import CertificateReport, VerificationConfig, verify_theorem
from .rootdata import build_root_datum, simple_lie_algebra

__version__ = "0.1.0"

__all__ = ["PrimeField", "Subspace", "kernel", "rref", "LieAlgebra", "SubalgebraHandle",
           "subalgebra_closure", "CertificateReport", "VerificationConfig", "verify_theorem",
           "build_root_datum", "simple_lie_algebra"]
