"""Automatic differentiation as one evaluation over semirings and modules.

Every mode (symbolic, forward, reverse, higher order) is the same fold over
an expression, run at a different choice of tangent representation.
"""
from .ad import (
    MODES, Nagata, NagataSemiring, abstract_d, derive, derive_tuple, forward_2nd,
    forward_classic, forward_dense, forward_sparse, hessian_vector, letin, reverse,
    reverse_cayley, reverse_mut, run_mode, stream_all, symbolic, take_diag, take_path,
)
from .algebra import FLOAT, INT, NAT, RATIONAL, CountingSemiring, OpCounter, Scalar, Semiring
from .evaluate import evaluate, probe_equal, reify
from .expr import Expr, VarRegistry
from .syntax import parse, pretty

__all__ = [
    "FLOAT", "INT", "MODES", "NAT", "RATIONAL", "CountingSemiring", "Expr", "Nagata",
    "NagataSemiring", "OpCounter", "Scalar", "Semiring", "VarRegistry", "abstract_d",
    "derive", "derive_tuple", "evaluate", "forward_2nd", "forward_classic",
    "forward_dense", "forward_sparse", "hessian_vector", "letin", "parse", "pretty",
    "probe_equal", "reify", "reverse", "reverse_cayley", "reverse_mut", "run_mode",
    "stream_all", "symbolic", "take_diag", "take_path",
]
