"""Operator-splitting steppers.

For constant fields the rotation/boost product approximations; for
non-uniform fields the drift/kick scheme whose kick is the exact
constant-field propagator evaluated with the field frozen at the current
position.  The kick preserves the Minkowski norm exactly at every stage,
whatever the step size.
"""
from __future__ import annotations

from dataclasses import dataclass

from .exact import boost, push_constant, rotate
from .types import FourVelocity, SpaceTimePoint, UniformField


@dataclass(frozen=True)
class SchemeCoefficients:
    """Ordered (drift t_i, kick v_i) stage weights; applied kick-first."""

    name: str
    stages: tuple
    order: int

    def __post_init__(self):
        stages = tuple((float(t), float(v)) for t, v in self.stages)
        object.__setattr__(self, "stages", stages)
        tsum = sum(t for t, _ in stages)
        vsum = sum(v for _, v in stages)
        if abs(tsum - 1.0) > 1e-15 or abs(vsum - 1.0) > 1e-15:
            raise ValueError(
                f"scheme '{self.name}' weights must each sum to 1 "
                f"(got drift {tsum!r}, kick {vsum!r})")


@dataclass(frozen=True)
class ParticleState:
    x: SpaceTimePoint
    u: FourVelocity


_THETA = 1.0 / (2.0 - 2.0 ** (1.0 / 3.0))

_SCHEMES = {
    # kick(1) drift(1): first-order Lie splitting
    "euler_split": SchemeCoefficients("euler_split", ((1.0, 1.0),), 1),
    # kick(1/2) drift(1) kick(1/2)
    "strang_kdk": SchemeCoefficients("strang_kdk", ((1.0, 0.5), (0.0, 0.5)), 2),
    # drift(1/2) kick(1) drift(1/2)
    "strang_dkd": SchemeCoefficients("strang_dkd", ((0.5, 0.0), (0.5, 1.0)), 2),
    # triple-jump fourth order (Forest-Ruth), theta = 1/(2 - 2^(1/3))
    "forest_ruth": SchemeCoefficients(
        "forest_ruth",
        ((0.5 * _THETA, 0.0),
         (0.5 * (1.0 - _THETA), _THETA),
         (0.5 * (1.0 - _THETA), 1.0 - 2.0 * _THETA),
         (0.5 * _THETA, _THETA)),
        4),
}

SCHEME_NAMES = tuple(_SCHEMES)


def scheme(name: str) -> SchemeCoefficients:
    """Look up a splitting scheme by name."""
    try:
        return _SCHEMES[name]
    except KeyError:
        raise ValueError(
            f"unknown scheme '{name}'; choose from {', '.join(_SCHEMES)}") from None


def split_step_constant(u: FourVelocity, field: UniformField, xi: float,
                        s: SchemeCoefficients) -> FourVelocity:
    """One product-approximation step: boost(v_i xi) then rotate(t_i xi) per stage.

    Exact whenever E x B = 0 (the factors commute), any scheme.
    """
    for t_i, v_i in s.stages:
        if v_i != 0.0:
            u = boost(u, field.e_field, v_i * xi)
        if t_i != 0.0:
            u = rotate(u, field.b_field, t_i * xi)
    return u


def step_nonuniform(state: ParticleState, model, dxi: float,
                    s: SchemeCoefficients) -> ParticleState:
    """One drift/kick step with the field frozen at the current position.

    Kicks are exact constant-field pushes, so the Minkowski norm survives
    every stage to rounding; drifts advance all four position components.
    """
    x, u = state.x, state.u
    for t_i, v_i in s.stages:
        if v_i != 0.0:
            u = push_constant(u, model.eval(x), v_i * dxi)
        if t_i != 0.0:
            x = SpaceTimePoint(x.x0 + t_i * dxi * u.u0, x.x + t_i * dxi * u.u)
    return ParticleState(x, u)


def integrate(state: ParticleState, model, xi_end: float, steps: int,
              s: SchemeCoefficients):
    """Fixed-step trajectory; returns all sampled states including endpoints."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    dxi = xi_end / steps
    samples = [state]
    for _ in range(steps):
        state = step_nonuniform(state, model, dxi, s)
        samples.append(state)
    return samples
