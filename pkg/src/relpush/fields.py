"""Spatially varying field sources for the non-uniform integrator.

Models are immutable and pure: eval(x) depends on the spatial part of x
only (static fields).  Concrete models also expose a float-tuple fast
path eval_at(x1, x2, x3) used by the RK reference loop.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol, runtime_checkable

import numpy as np

from .types import SpaceTimePoint, UniformField

_AXES = "xyz"


@runtime_checkable
class FieldModel(Protocol):
    def eval(self, x: SpaceTimePoint) -> UniformField: ...


class OutOfGridError(ValueError):
    """Position outside the tabulated grid; carries the offending axis."""

    def __init__(self, axis: int, value: float, lo: float, hi: float):
        self.axis = axis
        super().__init__(
            f"position component {_AXES[axis]}={value:g} outside grid range "
            f"[{lo:g}, {hi:g}]")


@dataclass(frozen=True)
class UniformModel:
    field: UniformField

    def eval(self, x: SpaceTimePoint) -> UniformField:
        return self.field

    def eval_at(self, x1: float, x2: float, x3: float):
        return tuple(self.field.e_field), tuple(self.field.b_field)


@dataclass(frozen=True)
class LinearGradientModel:
    """base + J.(x - origin), componentwise for E and B."""

    base: UniformField
    jacobian_e: np.ndarray
    jacobian_b: np.ndarray
    origin: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "jacobian_e",
                           np.asarray(self.jacobian_e, dtype=float).reshape(3, 3))
        object.__setattr__(self, "jacobian_b",
                           np.asarray(self.jacobian_b, dtype=float).reshape(3, 3))
        object.__setattr__(self, "origin",
                           np.asarray(self.origin, dtype=float).reshape(3))

    def eval(self, x: SpaceTimePoint) -> UniformField:
        d = x.x - self.origin
        return UniformField(self.base.e_field + self.jacobian_e @ d,
                            self.base.b_field + self.jacobian_b @ d)

    def eval_at(self, x1: float, x2: float, x3: float):
        d = (x1 - self.origin[0], x2 - self.origin[1], x3 - self.origin[2])
        je, jb = self.jacobian_e, self.jacobian_b
        e = self.base.e_field
        b = self.base.b_field
        return (
            (e[0] + je[0, 0] * d[0] + je[0, 1] * d[1] + je[0, 2] * d[2],
             e[1] + je[1, 0] * d[0] + je[1, 1] * d[1] + je[1, 2] * d[2],
             e[2] + je[2, 0] * d[0] + je[2, 1] * d[1] + je[2, 2] * d[2]),
            (b[0] + jb[0, 0] * d[0] + jb[0, 1] * d[1] + jb[0, 2] * d[2],
             b[1] + jb[1, 0] * d[0] + jb[1, 1] * d[1] + jb[1, 2] * d[2],
             b[2] + jb[2, 0] * d[0] + jb[2, 1] * d[1] + jb[2, 2] * d[2]),
        )


def uniform_model(field: UniformField) -> UniformModel:
    return UniformModel(field)


def linear_gradient_model(base: UniformField, jacobian_e, jacobian_b,
                          origin=(0.0, 0.0, 0.0)) -> LinearGradientModel:
    return LinearGradientModel(base, jacobian_e, jacobian_b, origin)


@dataclass(frozen=True)
class GridField:
    """Regular grid of field samples with trilinear interpolation.

    e_samples/b_samples have shape (nx, ny, nz, 3), node [i,j,k] sitting
    at origin + spacing*(i,j,k).
    """

    origin: np.ndarray
    spacing: np.ndarray
    dims: tuple
    e_samples: np.ndarray
    b_samples: np.ndarray

    def __post_init__(self):
        origin = np.asarray(self.origin, dtype=float).reshape(3)
        spacing = np.asarray(self.spacing, dtype=float).reshape(3)
        dims = tuple(int(d) for d in self.dims)
        if any(d < 2 for d in dims):
            raise ValueError("grid needs at least 2 nodes per axis")
        if np.any(spacing <= 0.0):
            raise ValueError("grid spacing must be strictly positive")
        shape = dims + (3,)
        es = np.asarray(self.e_samples, dtype=float).reshape(shape)
        bs = np.asarray(self.b_samples, dtype=float).reshape(shape)
        object.__setattr__(self, "origin", origin)
        object.__setattr__(self, "spacing", spacing)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "e_samples", es)
        object.__setattr__(self, "b_samples", bs)

    def eval(self, x: SpaceTimePoint) -> UniformField:
        return grid_eval(self, x)

    def eval_at(self, x1: float, x2: float, x3: float):
        f = grid_eval(self, SpaceTimePoint(0.0, (x1, x2, x3)))
        return tuple(f.e_field), tuple(f.b_field)


def grid_eval(g: GridField, x: SpaceTimePoint) -> UniformField:
    """Trilinear interpolation at the spatial part of x (x0 ignored).

    Raises OutOfGridError outside [origin, origin + spacing*(dims-1)];
    no extrapolation.
    """
    p = (x.x - g.origin) / g.spacing
    # tolerate rounding right at the boundary
    slack = 1e-12
    for axis in range(3):
        if p[axis] < -slack or p[axis] > g.dims[axis] - 1 + slack:
            lo = g.origin[axis]
            hi = g.origin[axis] + g.spacing[axis] * (g.dims[axis] - 1)
            raise OutOfGridError(axis, float(x.x[axis]), lo, hi)
    idx = np.clip(np.floor(p).astype(int), 0, np.array(g.dims) - 2)
    f = p - idx
    i, j, k = idx
    fx, fy, fz = f

    def interp(samples):
        c00 = samples[i, j, k] * (1 - fx) + samples[i + 1, j, k] * fx
        c10 = samples[i, j + 1, k] * (1 - fx) + samples[i + 1, j + 1, k] * fx
        c01 = samples[i, j, k + 1] * (1 - fx) + samples[i + 1, j, k + 1] * fx
        c11 = samples[i, j + 1, k + 1] * (1 - fx) + samples[i + 1, j + 1, k + 1] * fx
        c0 = c00 * (1 - fy) + c10 * fy
        c1 = c01 * (1 - fy) + c11 * fy
        return c0 * (1 - fz) + c1 * fz

    return UniformField(interp(g.e_samples), interp(g.b_samples))


def load_grid_field(path) -> GridField:
    """Read the plain-text grid format.

    Header lines 'dims nx ny nz', 'origin ox oy oz', 'spacing sx sy sz'
    (any order), then nx*ny*nz node records of six whitespace-separated
    scalars Ex Ey Ez Bx By Bz, x index varying fastest.  '#' starts a
    comment.
    """
    header = {}
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if parts[0] in ("dims", "origin", "spacing"):
                header[parts[0]] = [float(v) for v in parts[1:4]]
            else:
                rows.append([float(v) for v in parts])
    for key in ("dims", "origin", "spacing"):
        if key not in header:
            raise ValueError(f"grid file missing '{key}' header line")
    nx, ny, nz = (int(v) for v in header["dims"])
    data = np.asarray(rows, dtype=float)
    if data.shape != (nx * ny * nz, 6):
        raise ValueError(
            f"grid file has {data.shape[0]} records of width "
            f"{0 if data.size == 0 else data.shape[1]}; "
            f"expected {nx * ny * nz} records of 6 values")
    # x-fastest on disk -> index order [i, j, k]
    cube = data.reshape(nz, ny, nx, 6).transpose(2, 1, 0, 3)
    return GridField(header["origin"], header["spacing"], (nx, ny, nz),
                     cube[..., 0:3], cube[..., 3:6])


def save_grid_field(g: GridField, path) -> None:
    """Write a GridField in the plain-text format read by load_grid_field."""
    nx, ny, nz = g.dims
    with open(path, "w") as fh:
        fh.write(f"dims {nx} {ny} {nz}\n")
        fh.write("origin " + " ".join(f"{v:.17g}" for v in g.origin) + "\n")
        fh.write("spacing " + " ".join(f"{v:.17g}" for v in g.spacing) + "\n")
        for k in range(nz):
            for j in range(ny):
                for i in range(nx):
                    vals = np.concatenate((g.e_samples[i, j, k],
                                           g.b_samples[i, j, k]))
                    fh.write(" ".join(f"{v:.17g}" for v in vals) + "\n")
