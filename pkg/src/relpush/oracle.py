"""Independent brute-force references for validating the closed forms.

Nothing here reuses the exact-solution code: the generator matrix, the
matrix exponential and the RK4 integrator are written from the component
equations directly so they can serve as genuinely independent witnesses.
"""
from __future__ import annotations

import math

import numpy as np

from .types import FourVelocity, SpaceTimePoint, UniformField

# scaling-and-squaring parameters: halve until the 1-norm is below this,
# then run an 18-term Taylor series
_SCALE_LIMIT = 0.5
_TAYLOR_TERMS = 18


def generator_matrix(field: UniformField) -> np.ndarray:
    """4x4 matrix M of the equations of motion, d(u0,u)/dxi = M (u0,u).

    Rows follow du0 = -E.u and du = B x u - E u0.
    """
    ex, ey, ez = field.e_field
    bx, by, bz = field.b_field
    return np.array([
        [0.0, -ex, -ey, -ez],
        [-ex, 0.0, -bz, by],
        [-ey, bz, 0.0, -bx],
        [-ez, -by, bx, 0.0],
    ])


def matrix_exp(m: np.ndarray, xi: float = 1.0) -> np.ndarray:
    """exp(xi*m) by scaling-and-squaring with a truncated Taylor core."""
    a = xi * np.asarray(m, dtype=complex if np.iscomplexobj(m) else float)
    norm = np.linalg.norm(a, 1)
    nsq = 0
    if norm > _SCALE_LIMIT:
        nsq = int(math.ceil(math.log2(norm / _SCALE_LIMIT)))
        a = a / 2.0 ** nsq
    n = a.shape[0]
    eye = np.eye(n, dtype=a.dtype)
    # Horner evaluation of the truncated series
    result = eye + a / _TAYLOR_TERMS
    for k in range(_TAYLOR_TERMS - 1, 0, -1):
        result = eye + (a @ result) / k
    for _ in range(nsq):
        result = result @ result
    return result


def push_oracle(u: FourVelocity, field: UniformField, xi: float) -> FourVelocity:
    """Evolve the 4-velocity by the matrix exponential of the generator."""
    lam = matrix_exp(generator_matrix(field), xi)
    return FourVelocity.from_array(lam @ u.as_array())


def _unit_field(axis: int, electric: bool) -> UniformField:
    v = np.zeros(3)
    v[axis] = 1.0
    if electric:
        return UniformField(v, np.zeros(3))
    return UniformField(np.zeros(3), v)


_EPS = np.zeros((3, 3, 3))
_EPS[0, 1, 2] = _EPS[1, 2, 0] = _EPS[2, 0, 1] = 1.0
_EPS[0, 2, 1] = _EPS[2, 1, 0] = _EPS[1, 0, 2] = -1.0


def commutator_table() -> dict:
    """Max deviation per commutator-relation family of the Lorentz algebra.

    The commutators of the flow matrices carry the opposite sign to the
    differential-operator algebra (the map X -> flow matrix is an
    anti-homomorphism), so the unit-field generators are negated here to
    land in the operator convention.  All entries are integers, so every
    deviation is exactly zero.
    """
    J = [-generator_matrix(_unit_field(i, electric=False)) for i in range(3)]
    K = [-generator_matrix(_unit_field(i, electric=True)) for i in range(3)]
    M = [0.5 * (J[i] + 1j * K[i]) for i in range(3)]
    Mc = [0.5 * (J[i] - 1j * K[i]) for i in range(3)]

    def comm(a, b):
        return a @ b - b @ a

    def dev(mat) -> float:
        return float(np.max(np.abs(mat)))

    def family(lhs, rhs):
        worst = 0.0
        for i in range(3):
            for j in range(3):
                worst = max(worst, dev(lhs(i, j) - rhs(i, j)))
        return worst

    def eps_sum(basis, i, j, sign):
        return sign * sum(_EPS[i, j, k] * basis[k] for k in range(3))

    report = {
        "[J,J]=-eps J": family(lambda i, j: comm(J[i], J[j]),
                               lambda i, j: eps_sum(J, i, j, -1.0)),
        "[J,K]=-eps K": family(lambda i, j: comm(J[i], K[j]),
                               lambda i, j: eps_sum(K, i, j, -1.0)),
        "[K,J]=-eps K": family(lambda i, j: comm(K[i], J[j]),
                               lambda i, j: eps_sum(K, i, j, -1.0)),
        "[K,K]=+eps J": family(lambda i, j: comm(K[i], K[j]),
                               lambda i, j: eps_sum(J, i, j, 1.0)),
        "[M,M]=-eps M": family(lambda i, j: comm(M[i], M[j]),
                               lambda i, j: eps_sum(M, i, j, -1.0)),
        "[M*,M*]=-eps M*": family(lambda i, j: comm(Mc[i], Mc[j]),
                                  lambda i, j: eps_sum(Mc, i, j, -1.0)),
        "[M,M*]=0": family(lambda i, j: comm(M[i], Mc[j]),
                           lambda i, j: np.zeros((4, 4), dtype=complex)),
        "[M*,M]=0": family(lambda i, j: comm(Mc[i], M[j]),
                           lambda i, j: np.zeros((4, 4), dtype=complex)),
    }

    # mixed identity [B.J, E.K] = -(B x E).K on an integer field pair
    bvec = np.array([1.0, 2.0, 3.0])
    evec = np.array([-2.0, 1.0, 4.0])
    bj = sum(bvec[i] * J[i] for i in range(3))
    ek = sum(evec[i] * K[i] for i in range(3))
    target = sum(-np.cross(bvec, evec)[i] * K[i] for i in range(3))
    report["[B.J,E.K]=-(BxE).K"] = dev(comm(bj, ek) - target)
    return report


def rk_integrate(x: SpaceTimePoint, u: FourVelocity, model, xi_end: float,
                 steps: int, record_every: int = 1):
    """Classical RK4 on dx/dxi = u, du/dxi = (-E.u, B x u - E u0).

    Returns a list of (SpaceTimePoint, FourVelocity) samples.  With
    record_every=1 every step is recorded; larger values record every
    k-th step plus the endpoint (keeps long reference runs in memory).
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    h = xi_end / steps

    eval_at = getattr(model, "eval_at", None)
    if eval_at is None:
        def eval_at(x1, x2, x3, _model=model):
            f = _model.eval(SpaceTimePoint(0.0, (x1, x2, x3)))
            return tuple(f.e_field), tuple(f.b_field)

    def deriv(s):
        (ex, ey, ez), (bx, by, bz) = eval_at(s[1], s[2], s[3])
        u0, ux, uy, uz = s[4], s[5], s[6], s[7]
        return (u0, ux, uy, uz,
                -(ex * ux + ey * uy + ez * uz),
                by * uz - bz * uy - ex * u0,
                bz * ux - bx * uz - ey * u0,
                bx * uy - by * ux - ez * u0)

    def record(s, out):
        out.append((SpaceTimePoint(s[0], s[1:4]),
                    FourVelocity(s[4], s[5:8])))

    s = (x.x0, *x.x, u.u0, *u.u)
    samples = []
    record(s, samples)
    h2, h6 = 0.5 * h, h / 6.0
    for n in range(steps):
        k1 = deriv(s)
        k2 = deriv(tuple(si + h2 * ki for si, ki in zip(s, k1)))
        k3 = deriv(tuple(si + h2 * ki for si, ki in zip(s, k2)))
        k4 = deriv(tuple(si + h * ki for si, ki in zip(s, k3)))
        s = tuple(si + h6 * (a + 2.0 * (b + c) + d)
                  for si, a, b, c, d in zip(s, k1, k2, k3, k4))
        if (n + 1) % record_every == 0 or n == steps - 1:
            record(s, samples)
    return samples
