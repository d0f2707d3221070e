"""Restarted, left-preconditioned GMRES with mixed-precision refinement."""

from ._core import (
    ConfigError,
    CsrMatrix,
    Error,
    backward_error,
    describe_precision,
    estimate_bytes,
    gen_convdiff2d,
    gen_laplace1d,
    ilu0_apply,
    normalize_policy,
    num_threads,
    random_solution,
    read_matrix_market,
    set_num_threads,
    solve,
    spmv,
    write_matrix_market,
)

__all__ = [
    "ConfigError",
    "CsrMatrix",
    "Error",
    "backward_error",
    "describe_precision",
    "estimate_bytes",
    "gen_convdiff2d",
    "gen_laplace1d",
    "ilu0_apply",
    "normalize_policy",
    "num_threads",
    "random_solution",
    "read_matrix_market",
    "set_num_threads",
    "solve",
    "spmv",
    "write_matrix_market",
]
