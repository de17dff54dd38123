"""Riesz projections of Hill operators with singular potentials."""

from ._core import (
    BoundaryCondition,
    FourierPotential,
    HillError,
    assemble,
    bound_sequences,
    delta_comb,
    eigen_count_in_disc,
    eigenvalues,
    equivalence_ratio,
    first_order_residue,
    lemma_suite,
    mathieu,
    quadrature_vs_residue_check,
    riesz_projection,
    sawtooth,
    spectral_norm,
    sum_abs_B,
    zero_potential,
)

__version__ = "0.1.0"

__all__ = [
    "BoundaryCondition",
    "FourierPotential",
    "HillError",
    "assemble",
    "bound_sequences",
    "delta_comb",
    "eigen_count_in_disc",
    "eigenvalues",
    "equivalence_ratio",
    "first_order_residue",
    "lemma_suite",
    "mathieu",
    "quadrature_vs_residue_check",
    "riesz_projection",
    "sawtooth",
    "spectral_norm",
    "sum_abs_B",
    "zero_potential",
]
