"""Relativistic charged-particle propagation in electromagnetic fields.

Exact closed-form pushes for constant fields, operator-splitting
integrators for non-uniform fields, and independent matrix-exponential /
Runge-Kutta references for validation.  Everything works in scaled
proper time xi = e*tau/(m*c); unit handling lives in the CLI.
"""

from .types import (
    NULL_EPS,
    FieldInvariants,
    FourVelocity,
    ScaledTime,
    SpaceTimePoint,
    UniformField,
    field_invariants,
    is_null_field,
    minkowski_norm,
)
from .exact import (
    boost,
    complex_path_residue,
    displacement_constant,
    push_constant,
    push_constant_complex_path,
    push_parallel,
    rotate,
)
from .oracle import (
    commutator_table,
    generator_matrix,
    matrix_exp,
    push_oracle,
    rk_integrate,
)
from .splitting import (
    SCHEME_NAMES,
    ParticleState,
    SchemeCoefficients,
    integrate,
    scheme,
    split_step_constant,
    step_nonuniform,
)
from .fields import (
    FieldModel,
    GridField,
    LinearGradientModel,
    OutOfGridError,
    UniformModel,
    grid_eval,
    linear_gradient_model,
    load_grid_field,
    save_grid_field,
    uniform_model,
)

__version__ = "0.1.0"

__all__ = [
    "NULL_EPS",
    "FieldInvariants",
    "FourVelocity",
    "ScaledTime",
    "SpaceTimePoint",
    "UniformField",
    "field_invariants",
    "is_null_field",
    "minkowski_norm",
    "boost",
    "complex_path_residue",
    "displacement_constant",
    "push_constant",
    "push_constant_complex_path",
    "push_parallel",
    "rotate",
    "commutator_table",
    "generator_matrix",
    "matrix_exp",
    "push_oracle",
    "rk_integrate",
    "SCHEME_NAMES",
    "ParticleState",
    "SchemeCoefficients",
    "integrate",
    "scheme",
    "split_step_constant",
    "step_nonuniform",
    "FieldModel",
    "GridField",
    "LinearGradientModel",
    "OutOfGridError",
    "UniformModel",
    "grid_eval",
    "linear_gradient_model",
    "load_grid_field",
    "save_grid_field",
    "uniform_model",
]
