"""
Bound states, su(1,1) structure and coherent states of a spin-1/2 particle
on a cosmic-string background with a uniform magnetic field and a
Coulomb-type scalar potential.
"""
from .coherent import CoherentParams, coherent_radial, coherent_spinor, perelomov_fock
from .config import RunConfig, load_config, parse_config
from .exceptions import (
    CosmicDiracError,
    DegenerateTransformError,
    DiscretizationError,
    DomainError,
    NoBoundStateError,
    NormalizationUndefinedError,
    NumericError,
    ParameterError,
    StateError,
    UnsupportedBranchError,
)
from .geometry import build_frame, clifford_residual, spin_connection
from .model import ModelParams, QuantumNumbers, derive
from .ode_oracle import DiscretizationSpec, fd_spectrum, oracle_compare
from .radial import normalize, radial_functions, radial_spinor
from .spectrum import EnergyLevel, energy_level, spectrum_sweep
from .su11 import GeneratorContext, GridFunction, algebra_check, apply_generator

__version__ = "0.1.0"
