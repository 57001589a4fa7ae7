"""Bound states and Green functions of q-deformed hyperbolic potentials.

The deformed functions ``sinh_q x = (e^x - q e^-x)/2``, ``cosh_q x = (e^x + q e^-x)/2``
turn eight exactly solvable hyperbolic potentials into one-parameter families. Every
kind reduces, after the shift ``y = x - ln sqrt(q)`` and a rescaling of its strengths,
to the undeformed problem; the modules here evaluate spectra, wave functions and
Green functions in closed form and check them against a finite-difference oracle.
"""
from .errors import ContractError, DomainError, NumericError, PoleError, QDeformError
from .qhyp import Deformation, coth_q, cosh_q, sinh_q, tanh_q
from .potentials import Kind, PotentialSpec, effective_params, evaluate, reduce_to_shifted
from .spectra import Spectrum, spectrum
from .green import green, pole_scan
from .wavefun import BoundState, bound_state, bound_states
from .catalog import CATALOG, catalog

__version__ = "0.1.0"

__all__ = ["ContractError", "DomainError", "NumericError", "PoleError", "QDeformError",
           "Deformation", "sinh_q", "cosh_q", "tanh_q", "coth_q",
           "Kind", "PotentialSpec", "effective_params", "evaluate", "reduce_to_shifted",
           "Spectrum", "spectrum", "green", "pole_scan",
           "BoundState", "bound_state", "bound_states", "CATALOG", "catalog"]
