"""Step response of nonlinear spring-dashpot and mass-spring-dashpot systems.

Jump conditions for discontinuous inputs, post-jump relaxation, closed-form
references and the regularized-force convergence study.
"""

from .constitutive import (
    ConstitutiveFn,
    CubicStiffening,
    Custom,
    ExpSaturating,
    Linear,
    SpringDashpotModel,
)
from .dynamics import (
    ForceResponse,
    MassState,
    Trajectory,
    integrate_mass,
    integrate_relaxation,
    mass_rhs,
    relax_rhs,
    solve_force_for_motion,
)
from .errors import (
    ConfigError,
    DomainError,
    NumericalError,
    RangeError,
    SingularityError,
    StepResponseError,
    StiffnessError,
    UnsupportedRegimeError,
)
from .jump import (
    JumpValues,
    lemma1_check,
    mass_jump_values,
    strain_jump_residual,
    strain_jump_stress,
)
from .regularize import SmoothHeaviside, force_experiment, force_general
from .rkf45 import IntegratorConfig
from .signals import SmoothSignal

__version__ = "0.1.0"
