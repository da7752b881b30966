"""Shared value types and elementary kinematic quantities.

Everything downstream works in scaled proper time: the fields are stored
pre-multiplied so that xi*|B| is an angle in radians and xi*|E| is a
rapidity.  Unit conversion (charge, mass, c) lives in the CLI only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# A field pair counts as null when kappa <= NULL_EPS * (|E|^2 + |B|^2).
NULL_EPS = 1e-10

# Scaled proper time xi = e*tau/(m*c); plain float everywhere in the core.
ScaledTime = float


def _vec3(v) -> np.ndarray:
    a = np.asarray(v, dtype=float)
    if a.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {a.shape}")
    return a


@dataclass(frozen=True)
class FourVelocity:
    """4-velocity (u0, u): u0 = gamma, u = gamma*beta for a massive particle."""

    u0: float
    u: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "u0", float(self.u0))
        object.__setattr__(self, "u", _vec3(self.u))

    @classmethod
    def rest(cls) -> "FourVelocity":
        return cls(1.0, np.zeros(3))

    @classmethod
    def from_array(cls, a) -> "FourVelocity":
        a = np.asarray(a, dtype=float)
        return cls(a[0], a[1:4])

    def as_array(self) -> np.ndarray:
        return np.concatenate(([self.u0], self.u))


@dataclass(frozen=True)
class SpaceTimePoint:
    """Position 4-vector (x0, x) in xi-scaled units."""

    x0: float
    x: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "x0", float(self.x0))
        object.__setattr__(self, "x", _vec3(self.x))

    @classmethod
    def origin(cls) -> "SpaceTimePoint":
        return cls(0.0, np.zeros(3))

    def as_array(self) -> np.ndarray:
        return np.concatenate(([self.x0], self.x))

    def shifted(self, dx: "SpaceTimePoint") -> "SpaceTimePoint":
        return SpaceTimePoint(self.x0 + dx.x0, self.x + dx.x)


@dataclass(frozen=True)
class UniformField:
    """Constant electromagnetic field patch (E, B) in xi-reciprocal units."""

    e_field: np.ndarray
    b_field: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "e_field", _vec3(self.e_field))
        object.__setattr__(self, "b_field", _vec3(self.b_field))

    @classmethod
    def zero(cls) -> "UniformField":
        return cls(np.zeros(3), np.zeros(3))

    @property
    def magnitude_scale(self) -> float:
        """|E|^2 + |B|^2, the reference scale for the null-field test."""
        return float(self.e_field @ self.e_field + self.b_field @ self.b_field)


@dataclass(frozen=True)
class FieldInvariants:
    """The Lorentz-invariant scalars of a field pair.

    kappa1 = |E|^2 - |B|^2, kappa2 = 2 E.B, kappa = sqrt(kappa1^2 + kappa2^2),
    and the hyperbolic/oscillatory split e_prime, b_prime (both >= 0) with
    e_prime^2 - b_prime^2 = kappa1 and 2 e_prime b_prime = |kappa2|.
    """

    kappa1: float
    kappa2: float
    kappa: float
    e_prime: float
    b_prime: float


def field_invariants(field: UniformField) -> FieldInvariants:
    """Compute the invariant scalars of a constant field.

    e_prime and b_prime come from the real square-root construction
    sqrt(x + i y) = sqrt((|z|+x)/2) + i sign(y) sqrt((|z|-x)/2), keeping
    the nonnegative magnitudes; orientation is carried by kappa2's sign.
    """
    e, b = field.e_field, field.b_field
    kappa1 = float(e @ e - b @ b)
    kappa2 = float(2.0 * (e @ b))
    kappa = math.hypot(kappa1, kappa2)
    # take the sqrt on the side free of cancellation and recover the other
    # from 2 E' B' = |kappa2|
    if kappa1 >= 0.0:
        e_prime = math.sqrt(0.5 * (kappa + kappa1))
        b_prime = 0.5 * abs(kappa2) / e_prime if e_prime > 0.0 else 0.0
    else:
        b_prime = math.sqrt(0.5 * (kappa - kappa1))
        e_prime = 0.5 * abs(kappa2) / b_prime if b_prime > 0.0 else 0.0
    return FieldInvariants(kappa1, kappa2, kappa, e_prime, b_prime)


def minkowski_norm(u: FourVelocity) -> float:
    """u0^2 - |u|^2, the invariant preserved by every propagator here."""
    return float(u.u0 * u.u0 - u.u @ u.u)


def is_null_field(field: UniformField, inv: FieldInvariants | None = None) -> bool:
    """True when kappa vanishes relative to the field magnitude (incl. E=B=0)."""
    if inv is None:
        inv = field_invariants(field)
    return inv.kappa <= NULL_EPS * field.magnitude_scale
