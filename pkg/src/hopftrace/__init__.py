"""Exact computations with finite-dimensional Hopf algebras, their comodules,
the coend algebra ``H~``, relative Hopf bimodules and twisted centers."""

from .linalg import GF, QQ, LinearMap
from .hopf import HopfAlgebraData, check_hopf
from .comodules import Comodule, comodule_hom, regular_comodule, tensor_comodule, trivial_comodule
from .bicomodules import (Bicomodule, BicomoduleAlgebra, ModuleCategoryObject, module_object_hom,
                          regular_module_object)
from .coend import cowedge_factorize, dinatural_j, hat_algebra, twisted_coend_algebra
from .trace import (HopfBimodule, balancing, center_structure, gamma_to_rho, induce,
                    twisted_yd_check, yd_induction)
from .zoo import function_algebra, group_algebra, standard_test_family, sweedler_h4, taft
from .report import Check, Report

__version__ = "0.1.0"

__all__ = [
    "GF", "QQ", "LinearMap", "HopfAlgebraData", "check_hopf",
    "Comodule", "comodule_hom", "regular_comodule", "tensor_comodule", "trivial_comodule",
    "Bicomodule", "BicomoduleAlgebra", "ModuleCategoryObject", "module_object_hom", "regular_module_object",
    "cowedge_factorize", "dinatural_j", "hat_algebra", "twisted_coend_algebra",
    "HopfBimodule", "balancing", "center_structure", "gamma_to_rho", "induce",
    "twisted_yd_check", "yd_induction",
    "function_algebra", "group_algebra", "standard_test_family", "sweedler_h4", "taft",
    "Check", "Report",
]
