"""Exact Witt-vector, prism-tower and q-series calculus."""

from ._core import (
    __version__,
    cyclotomic,
    delta_n,
    from_ghost,
    gaussian_binomial,
    ghost,
    mobius,
    norm_lift,
    prism_norm,
    prism_transversal,
    q_analogue,
    run_cli,
    sum_rule,
    theta_n,
    transfer_rule,
    twisted_power,
    vartheta,
    witt_add,
    witt_mul,
)

__all__ = [
    "__version__",
    "cyclotomic",
    "delta_n",
    "from_ghost",
    "gaussian_binomial",
    "ghost",
    "mobius",
    "norm_lift",
    "prism_norm",
    "prism_transversal",
    "q_analogue",
    "run_cli",
    "sum_rule",
    "theta_n",
    "transfer_rule",
    "twisted_power",
    "vartheta",
    "witt_add",
    "witt_mul",
]
