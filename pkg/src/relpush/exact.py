"""Closed-form constant-field propagators for the 4-velocity.

The building blocks are the finite rotation about B, the finite boost
along E, their commuting composition for parallel fields, and the full
explicit solution for an arbitrary constant field.  A literal evaluation
of the commuting complex-factor decomposition is kept as a first-class
cross-check path.
"""
from __future__ import annotations

import math

import numpy as np

from .types import (
    NULL_EPS,
    FieldInvariants,
    FourVelocity,
    SpaceTimePoint,
    UniformField,
    field_invariants,
    is_null_field,
)


def rotate(u: FourVelocity, b_field, xi: float) -> FourVelocity:
    """Finite right-handed rotation of the spatial part about B by angle xi*|B|."""
    b = np.asarray(b_field, dtype=float)
    bmag = float(np.linalg.norm(b))
    if bmag == 0.0 or xi == 0.0:
        return u
    bhat = b / bmag
    ang = xi * bmag
    cross = np.cross(bhat, u.u)
    un = u.u + math.sin(ang) * cross + (1.0 - math.cos(ang)) * np.cross(bhat, cross)
    return FourVelocity(u.u0, un)


def boost(u: FourVelocity, e_field, xi: float) -> FourVelocity:
    """Finite boost along E with rapidity xi*|E| (u0 mixes with E.u)."""
    e = np.asarray(e_field, dtype=float)
    emag = float(np.linalg.norm(e))
    if emag == 0.0 or xi == 0.0:
        return u
    ehat = e / emag
    rap = xi * emag
    ch, sh = math.cosh(rap), math.sinh(rap)
    eu = float(ehat @ u.u)
    u0n = ch * u.u0 - sh * eu
    un = u.u + ehat * ((ch - 1.0) * eu - sh * u.u0)
    return FourVelocity(u0n, un)


def push_parallel(u: FourVelocity, field: UniformField, xi: float) -> FourVelocity:
    """Propagator for parallel (commuting) E and B: boost then rotate.

    Raises ValueError when E x B is not negligible.
    """
    e, b = field.e_field, field.b_field
    cross = np.linalg.norm(np.cross(e, b))
    scale = max(1.0, float(np.linalg.norm(e) * np.linalg.norm(b)))
    if cross > 1e-12 * scale:
        raise ValueError("push_parallel requires parallel fields (E x B = 0)")
    return rotate(boost(u, e, xi), b, xi)


def _generator4(field: UniformField) -> np.ndarray:
    """4x4 matrix M with d(u0,u)/dxi = M (u0,u)."""
    e, b = field.e_field, field.b_field
    m = np.zeros((4, 4))
    m[0, 1:] = -e
    m[1:, 0] = -e
    # spatial block of B x u
    m[1, 2], m[1, 3] = -b[2], b[1]
    m[2, 1], m[2, 3] = b[2], -b[0]
    m[3, 1], m[3, 2] = -b[1], b[0]
    return m


def _push_null(u: FourVelocity, field: UniformField, xi: float) -> FourVelocity:
    # Null field: the generator cubes to zero, so the exponential truncates.
    m = _generator4(field)
    v = u.as_array()
    mv = m @ v
    out = v + xi * mv + 0.5 * xi * xi * (m @ mv)
    return FourVelocity.from_array(out)


def _signed_b_prime(inv: FieldInvariants) -> float:
    # F = e_prime + i*b_signed must square to kappa1 + i*kappa2; for
    # kappa2 < 0 that forces the negative imaginary branch.
    return -inv.b_prime if inv.kappa2 < 0.0 else inv.b_prime


def push_constant(u: FourVelocity, field: UniformField, xi: float) -> FourVelocity:
    """Exact constant-field propagator for an arbitrary initial 4-velocity.

    Uses the explicit closed form built from cosh/sinh of xi*E' and
    cos/sin of xi*B'; falls back to the truncated (exact) series when the
    field is null.  Preserves the Minkowski norm.
    """
    inv = field_invariants(field)
    if is_null_field(field, inv):
        return _push_null(u, field, xi)

    e, b = field.e_field, field.b_field
    k = inv.kappa
    ep = inv.e_prime
    bp = _signed_b_prime(inv)
    ch, sh = math.cosh(xi * ep), math.sinh(xi * ep)
    co, si = math.cos(xi * bp), math.sin(xi * bp)

    half_sum = 0.5 * (ch + co)
    half_dif = 0.5 * (ch - co)
    fdot = field.magnitude_scale / k
    vec_p = (e * (ep * sh + bp * si) + b * (bp * sh - ep * si)) / k
    vec_q = (e * (ep * si - bp * sh) + b * (bp * si + ep * sh)) / k
    poynting = np.cross(e, b) / k
    dyad = (e * (e @ u.u) + b * (b @ u.u)) / k

    u0n = (half_sum + fdot * half_dif) * u.u0 - (vec_p + (ch - co) * poynting) @ u.u
    un = (
        (half_sum - fdot * half_dif) * u.u
        - (vec_p - (ch - co) * poynting) * u.u0
        + np.cross(vec_q, u.u)
        + (ch - co) * dyad
    )
    return FourVelocity(u0n, un)


def _complex_halves(u: FourVelocity, field: UniformField, xi: float,
                    cross_term: bool = True):
    """Apply the two commuting complex factor operators literally.

    Returns the final complex (u0, u).  With cross_term=False the
    i*Fhat x u piece is dropped from both half-steps; that variant is a
    deliberate mutation which breaks Minkowski-norm preservation and
    exists only for the diagnostic test.
    """
    inv = field_invariants(field)
    if is_null_field(field, inv):
        raise ValueError("complex decomposition undefined for a null field; "
                         "use push_constant")
    fvec = field.e_field + 1j * field.b_field
    fnorm = inv.e_prime + 1j * _signed_b_prime(inv)
    fhat = fvec / fnorm

    c = np.cosh(0.5 * xi * fnorm)
    s = np.sinh(0.5 * xi * fnorm)
    u0c = u.u0 + 0j
    uc = u.u.astype(complex)

    # first half: (F/2) boost combined with (-iF/2) rotation
    u0p = c * u0c - s * (fhat @ uc)
    up = c * uc - s * (u0c * fhat)
    if cross_term:
        up = up - s * 1j * np.cross(fhat, uc)

    # conjugate half
    cc, sc, fc = np.conj(c), np.conj(s), np.conj(fhat)
    u0f = cc * u0p - sc * (fc @ up)
    uf = cc * up - sc * (u0p * fc)
    if cross_term:
        uf = uf + sc * 1j * np.cross(fc, up)
    return u0f, uf


def push_constant_complex_path(u: FourVelocity, field: UniformField, xi: float,
                               cross_term: bool = True) -> FourVelocity:
    """Constant-field propagator via the exact complex factorization.

    Cross-check path: the result must be real up to rounding and equal
    push_constant.  Raises ValueError on a null field (Fhat needs F != 0).
    """
    u0f, uf = _complex_halves(u, field, xi, cross_term=cross_term)
    return FourVelocity(u0f.real, uf.real)


def complex_path_residue(u: FourVelocity, field: UniformField, xi: float) -> float:
    """Largest imaginary component left over by the complex factorization."""
    u0f, uf = _complex_halves(u, field, xi)
    return max(abs(u0f.imag), float(np.max(np.abs(uf.imag))))


_TAYLOR_EPS = 1e-6


def _int_cosh(xi: float, a: float) -> float:
    # antiderivative of cosh(s a) over [0, xi], divided form
    if abs(a) <= _TAYLOR_EPS:
        return xi + xi ** 3 * a * a / 6.0
    return math.sinh(xi * a) / a


def _int_sinh(xi: float, a: float) -> float:
    if abs(a) <= _TAYLOR_EPS:
        return a * xi * xi / 2.0 + a ** 3 * xi ** 4 / 24.0
    return (math.cosh(xi * a) - 1.0) / a


def _int_cos(xi: float, a: float) -> float:
    if abs(a) <= _TAYLOR_EPS:
        return xi - xi ** 3 * a * a / 6.0
    return math.sin(xi * a) / a


def _int_sin(xi: float, a: float) -> float:
    if abs(a) <= _TAYLOR_EPS:
        return a * xi * xi / 2.0 - a ** 3 * xi ** 4 / 24.0
    return (1.0 - math.cos(xi * a)) / a


def displacement_constant(u: FourVelocity, field: UniformField,
                          xi: float) -> SpaceTimePoint:
    """Position increment Delta x = integral of u(s) over [0, xi].

    Term-by-term antiderivative of the closed-form velocity; exact
    polynomial integral in the null branch.
    """
    inv = field_invariants(field)
    if is_null_field(field, inv):
        m = _generator4(field)
        v = u.as_array()
        mv = m @ v
        out = xi * v + 0.5 * xi * xi * mv + xi ** 3 / 6.0 * (m @ mv)
        return SpaceTimePoint(out[0], out[1:4])

    e, b = field.e_field, field.b_field
    k = inv.kappa
    ep = inv.e_prime
    bp = _signed_b_prime(inv)
    # same algebra as push_constant with each scalar replaced by its integral
    ch, sh = _int_cosh(xi, ep), _int_sinh(xi, ep)
    co, si = _int_cos(xi, bp), _int_sin(xi, bp)

    half_sum = 0.5 * (ch + co)
    half_dif = 0.5 * (ch - co)
    fdot = field.magnitude_scale / k
    vec_p = (e * (ep * sh + bp * si) + b * (bp * sh - ep * si)) / k
    vec_q = (e * (ep * si - bp * sh) + b * (bp * si + ep * sh)) / k
    poynting = np.cross(e, b) / k
    dyad = (e * (e @ u.u) + b * (b @ u.u)) / k

    dx0 = (half_sum + fdot * half_dif) * u.u0 - (vec_p + (ch - co) * poynting) @ u.u
    dx = (
        (half_sum - fdot * half_dif) * u.u
        - (vec_p - (ch - co) * poynting) * u.u0
        + np.cross(vec_q, u.u)
        + (ch - co) * dyad
    )
    return SpaceTimePoint(dx0, dx)
