"""Finite-mode laboratory for mean-field bosons and their Bogoliubov spectra."""

from .bogoliubov import (
    BogoliubovSpectrum,
    QuadraticForm,
    depletion,
    diagonalize,
    enumerate_levels,
    fock_representation,
    quadratic_form,
)
from .errors import BogolabError
from .harness import compare_spectra, multi_condensate
from .hartree import HartreeState, energy_and_gradient, find_minimizers, solve_stationary
from .model import (
    ModeProblem,
    build_dimer,
    build_random,
    build_ring,
    check_assumption_c0,
    validate_problem,
)

__version__ = "0.1.0"

__all__ = [
    "compare_spectra",
    "multi_condensate",
    "BogoliubovSpectrum",
    "QuadraticForm",
    "depletion",
    "diagonalize",
    "enumerate_levels",
    "fock_representation",
    "quadratic_form",
    "BogolabError",
    "HartreeState",
    "energy_and_gradient",
    "find_minimizers",
    "solve_stationary",
    "ModeProblem",
    "build_dimer",
    "build_random",
    "build_ring",
    "check_assumption_c0",
    "validate_problem",
]
