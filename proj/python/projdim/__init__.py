"""Projective random walks on P(R^3): Cartan and UL decompositions, Lyapunov
spectra, random-walk entropy, affinity exponents, and entropy dimension."""

from ._projdim import (
    ProjdimError,
    affinity_exponent,
    box_dimension,
    cartan,
    entropy_dimension,
    gasket_chart,
    generators,
    lyapunov,
    lyapunov_dimension,
    proj_dist,
    run_cli,
    sample_stationary,
    set_threads,
    singular_values,
    sl2_exponent,
    ul_decompose,
    walk_entropy,
)

__version__ = "0.1.0"

__all__ = [
    "ProjdimError",
    "affinity_exponent",
    "box_dimension",
    "cartan",
    "entropy_dimension",
    "gasket_chart",
    "generators",
    "lyapunov",
    "lyapunov_dimension",
    "proj_dist",
    "run_cli",
    "sample_stationary",
    "set_threads",
    "singular_values",
    "sl2_exponent",
    "ul_decompose",
    "walk_entropy",
]
