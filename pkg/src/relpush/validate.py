"""Randomized cross-validation suite.

Each check draws seeded random instances and reports the worst relative
deviation.  Deviations are normalized by the magnitude of the quantities
compared: at large rapidity (cosh of order 1e6) double precision cannot
hold absolute 1e-12, but the relative error floor stays near machine
epsilon.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exact import (
    boost,
    complex_path_residue,
    push_constant,
    push_constant_complex_path,
    push_parallel,
    rotate,
)
from .oracle import commutator_table, push_oracle
from .types import FourVelocity, UniformField, is_null_field, minkowski_norm

DEFAULT_TOL = 1e-12


def rel_dev(a: FourVelocity, b: FourVelocity) -> float:
    """Componentwise deviation relative to the larger state magnitude."""
    av, bv = a.as_array(), b.as_array()
    scale = max(1.0, float(np.max(np.abs(av))), float(np.max(np.abs(bv))))
    return float(np.max(np.abs(av - bv))) / scale


def norm_dev(before: FourVelocity, after: FourVelocity) -> float:
    """Minkowski-norm drift relative to the cancellation scale of the output."""
    scale = max(1.0, after.u0 ** 2 + float(after.u @ after.u))
    return abs(minkowski_norm(after) - minkowski_norm(before)) / scale


def _random_state(rng) -> FourVelocity:
    return FourVelocity(rng.uniform(-3, 3), rng.uniform(-3, 3, 3))


def _random_field(rng) -> UniformField:
    return UniformField(rng.uniform(-3, 3, 3), rng.uniform(-3, 3, 3))


def check_oracle_equivalence(rng, count: int) -> float:
    """push_constant against the matrix-exponential oracle."""
    worst = 0.0
    for _ in range(count):
        u, f, xi = _random_state(rng), _random_field(rng), rng.uniform(-3, 3)
        worst = max(worst, rel_dev(push_constant(u, f, xi), push_oracle(u, f, xi)))
    return worst


def check_four_ways(rng, count: int) -> dict:
    """The four special-case reductions of the explicit solution."""
    worst = {"E=0 rotation": 0.0, "B=0 boost": 0.0,
             "parallel": 0.0, "rest complex": 0.0}
    zero = np.zeros(3)
    for _ in range(count):
        u = _random_state(rng)
        xi = rng.uniform(-3, 3)
        e, b = rng.uniform(-3, 3, 3), rng.uniform(-3, 3, 3)

        fb = UniformField(zero, b)
        worst["E=0 rotation"] = max(worst["E=0 rotation"],
                                    rel_dev(push_constant(u, fb, xi),
                                            rotate(u, b, xi)))
        fe = UniformField(e, zero)
        worst["B=0 boost"] = max(worst["B=0 boost"],
                                 rel_dev(push_constant(u, fe, xi),
                                         boost(u, e, xi)))

        n = e / np.linalg.norm(e)
        fp = UniformField(n * rng.uniform(-3, 3), n * rng.uniform(-3, 3))
        worst["parallel"] = max(worst["parallel"],
                                rel_dev(push_constant(u, fp, xi),
                                        push_parallel(u, fp, xi)))

        f = UniformField(e, b)
        if not is_null_field(f):
            rest = FourVelocity.rest()
            worst["rest complex"] = max(
                worst["rest complex"],
                rel_dev(push_constant(rest, f, xi),
                        push_constant_complex_path(rest, f, xi)))
    return worst


_PUSHERS = {
    "rotate": lambda u, f, xi: rotate(u, f.b_field, xi),
    "boost": lambda u, f, xi: boost(u, f.e_field, xi),
    "push_constant": push_constant,
}


def check_norm_preservation(rng, count: int) -> dict:
    """Minkowski-norm drift of every propagator over a random sweep."""
    worst = {name: 0.0 for name in _PUSHERS}
    worst["push_parallel"] = 0.0
    worst["complex path"] = 0.0
    for _ in range(count):
        u, f, xi = _random_state(rng), _random_field(rng), rng.uniform(-3, 3)
        for name, push in _PUSHERS.items():
            worst[name] = max(worst[name], norm_dev(u, push(u, f, xi)))
        n = f.e_field / np.linalg.norm(f.e_field)
        fp = UniformField(n * rng.uniform(-3, 3), n * rng.uniform(-3, 3))
        worst["push_parallel"] = max(worst["push_parallel"],
                                     norm_dev(u, push_parallel(u, fp, xi)))
        if not is_null_field(f):
            worst["complex path"] = max(
                worst["complex path"],
                norm_dev(u, push_constant_complex_path(u, f, xi)))
    return worst


def check_complex_residue(rng, count: int) -> float:
    """Imaginary leftovers of the complex factorization on non-null fields."""
    worst = 0.0
    done = 0
    while done < count:
        f = _random_field(rng)
        if is_null_field(f):
            continue
        u, xi = _random_state(rng), rng.uniform(-3, 3)
        residue = complex_path_residue(u, f, xi)
        out = push_constant_complex_path(u, f, xi)
        scale = max(1.0, abs(out.u0), float(np.max(np.abs(out.u))))
        worst = max(worst, residue / scale)
        done += 1
    return worst


@dataclass(frozen=True)
class CheckResult:
    name: str
    deviation: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.deviation <= self.tol


def run_all(seed: int, count: int, tol: float = DEFAULT_TOL):
    """Run the whole suite on `count` seeded instances per check."""
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    results = [CheckResult("oracle equivalence",
                           check_oracle_equivalence(rng, count), tol)]
    for name, dev in check_four_ways(rng, count).items():
        results.append(CheckResult(f"four checks / {name}", dev, tol))
    for name, dev in check_norm_preservation(rng, count).items():
        results.append(CheckResult(f"norm preservation / {name}", dev, tol))
    results.append(CheckResult("complex-path residue",
                               check_complex_residue(rng, count), tol))
    results.append(CheckResult("commutator table",
                               max(commutator_table().values()), tol))
    return results
