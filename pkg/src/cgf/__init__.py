"""Algebraic Coulomb Green function toolkit.

Exact normal-ordered algebra of the four oscillator modes behind the
hydrogen atom, su(1,1) disentangling of the Green-operator exponential, a
truncated-Fock oracle, and the two-atom dispersion coefficient C6.
"""

from .errors import (
    CGFError,
    Degenerate,
    DomainError,
    NonRealResult,
    ParseError,
    PoleHit,
    PoleOnPath,
    QuadratureStall,
    SeriesDivergence,
    SingularSystem,
)
from .hydrogenic import check_closure, generator, p_state, physical_operator, s_state
from .mcgf import ParticleSpec, ProductExpr, build_plan, shift_to_v, tensor
from .scalars import Coefficient, I, ONE, W, ZERO
from .su11 import (
    Branch,
    DisentangledExp,
    FockTruncation,
    closed_form_rx_g_rx,
    disentangle,
    exponent_factor,
    fock_propagator,
    fock_resolvent,
    sandwich,
    sandwich_polynomial,
)
from .text import format_coefficient, format_expr, parse_expr
from .vdw import (
    C6Result,
    VdwConfig,
    angular_multiplicity,
    dipole_coupling,
    first_order_check,
    inner_integral_j,
    j_oracle,
    second_order_energy,
)
from .wick import (
    KetState,
    ModeOp,
    OperatorExpr,
    adjoint,
    apply_to_vacuum,
    commutator,
    mode,
    multiply,
    scalar,
    vacuum_expectation,
)

__version__ = "0.1.0"
