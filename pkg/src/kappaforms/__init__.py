"""Exact symbolic engine for kappa-deformed super-Heisenberg realizations."""
from ._rational import BACKEND, rational
from .action import ActionEngine, CoproductRule, UnrealizeError, lorentz_coproduct
from .algebra import (
    AlgebraError,
    Coefficient,
    Context,
    ContextMismatch,
    Element,
    Monomial,
    OrderError,
    act_on_vacuum,
    anticommutator,
    commutator,
    divide_by_a0,
    equals_up_to_order,
    gcomm,
    graded_commutator,
    jacobi_residual,
    multiply,
)
from .closure import ClosureResult, closure_detect
from .nc import NCAlgebra, NCError, NCExpression, Word
from .parser import ParseError, parse
from .realizations import C_TEST_SET, FAMILIES, MUTATIONS, Realization, build_realization
from .series import series_exp, series_inverse, series_sqrt_one_plus, shift_power
from .verifier import CheckReport, SuiteConfig, run_suite, suite_passed

__version__ = "0.1.0"
