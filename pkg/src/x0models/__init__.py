"""Exact intersection theory on regular models of the modular curves X_0(N)."""

from .arith import FactoredLevel, Invariants, factor_level, genus, invariants, k_count, kronecker_symbol, mu, xi
from .divisors import VerticalDivisor, closed_form_vm, solve_vm, verify_closed_form
from .errors import ConsistencyError, GenusTooSmall, InvalidInput, NoSolution, UnsupportedLevel, X0ModelsError
from .fiber import ComponentKind, FiberComponent, FiberModel, build_edixhoven, dual_graph_dot
from .linalg import RationalMatrix, kernel_basis, solve_singular
from .minimal import blow_down_composite, blow_down_iterative, find_exceptional, fiber_for_level, minimal_fiber
from .selfint import FinitePartResult, LogWeightedRational, asymptotic_report, finite_part

__all__ = [
    "ComponentKind", "ConsistencyError", "FactoredLevel", "FiberComponent", "FiberModel",
    "FinitePartResult", "GenusTooSmall", "InvalidInput", "Invariants", "LogWeightedRational",
    "NoSolution", "RationalMatrix", "UnsupportedLevel", "VerticalDivisor", "X0ModelsError",
    "asymptotic_report", "blow_down_composite", "blow_down_iterative", "build_edixhoven",
    "closed_form_vm", "dual_graph_dot", "factor_level", "fiber_for_level", "find_exceptional",
    "finite_part", "genus", "invariants", "k_count", "kernel_basis", "kronecker_symbol",
    "minimal_fiber", "mu", "solve_singular", "solve_vm", "verify_closed_form", "xi",
]
