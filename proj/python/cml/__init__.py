"""Python access to the cubic Hecke L-function lab."""

from ._cml import (
    CmlError,
    bias_scan,
    c0,
    cli,
    constant,
    factor,
    family,
    g3,
    g3_direct,
    in_family,
    l_half,
    l_strip,
    mul,
    norm,
    poisson_check,
    primary_associate,
    run_criterion,
    symbol,
    tau3,
)

__all__ = [
    "CmlError",
    "bias_scan",
    "c0",
    "cli",
    "constant",
    "factor",
    "family",
    "g3",
    "g3_direct",
    "in_family",
    "l_half",
    "l_strip",
    "mul",
    "norm",
    "poisson_check",
    "primary_associate",
    "run_criterion",
    "symbol",
    "tau3",
]
