"""Off-shell Bethe vectors for gl(m|n) graded spin chains, built from explicit
partition sums, with exact rational arithmetic and numeric on-shell checks."""

from .action import action_formula, check_onshell, direct_action, eigenvalue_tau
from .builder import build, build_dual, build_hat
from .chain import SpinChain
from .graded import Bra, Ket
from .partitions import BetheParams, count_tables, enumerate_tables
from .scalars import PoleError, Profile, format_scalar, parse_scalar
from .solver import SolverConfig, solve_bethe

__all__ = ["Profile", "PoleError", "SpinChain", "BetheParams", "Ket", "Bra", "build",
           "build_hat", "build_dual", "action_formula", "direct_action", "check_onshell",
           "eigenvalue_tau", "enumerate_tables", "count_tables", "SolverConfig",
           "solve_bethe", "format_scalar", "parse_scalar"]
