import numpy as np
import pytest

from relpush import (
    GridField,
    OutOfGridError,
    SpaceTimePoint,
    UniformField,
    grid_eval,
    linear_gradient_model,
    load_grid_field,
    save_grid_field,
    uniform_model,
)


def _pt(x, y, z, x0=0.0):
    return SpaceTimePoint(x0, (x, y, z))


def test_uniform_model_constant_everywhere():
    f = UniformField((1, 2, 3), (4, 5, 6))
    m = uniform_model(f)
    a = m.eval(_pt(0, 0, 0))
    b = m.eval(_pt(9, -3, 2, x0=7.0))
    assert np.array_equal(a.e_field, b.e_field)
    assert np.array_equal(a.b_field, f.b_field)


def test_zero_uniform_model():
    m = uniform_model(UniformField.zero())
    out = m.eval(_pt(1, 2, 3))
    assert not out.e_field.any() and not out.b_field.any()


def test_gradient_zero_jacobians_is_uniform():
    base = UniformField((1, 0, 0), (0, 1, 0))
    m = linear_gradient_model(base, np.zeros((3, 3)), np.zeros((3, 3)))
    out = m.eval(_pt(3, -1, 5))
    assert np.array_equal(out.e_field, base.e_field)
    assert np.array_equal(out.b_field, base.b_field)


def test_gradient_linear_map():
    g = 0.25
    m = linear_gradient_model(UniformField.zero(), np.zeros((3, 3)),
                              np.diag([0.0, 0.0, g]))
    out = m.eval(SpaceTimePoint(0.0, (0, 0, 1)))
    assert out.b_field == pytest.approx([0, 0, g], abs=1e-15)


def test_gradient_symmetry_about_origin():
    base = UniformField((0.5, -0.2, 0.1), (0.3, 0.7, -0.4))
    rng = np.random.default_rng(1)
    m = linear_gradient_model(base, rng.uniform(-1, 1, (3, 3)),
                              rng.uniform(-1, 1, (3, 3)))
    for _ in range(20):
        p = rng.uniform(-2, 2, 3)
        plus = m.eval(SpaceTimePoint(0.0, p))
        minus = m.eval(SpaceTimePoint(0.0, -p))
        assert plus.e_field + minus.e_field == pytest.approx(
            2 * base.e_field, abs=1e-13)
        assert plus.b_field + minus.b_field == pytest.approx(
            2 * base.b_field, abs=1e-13)


def test_gradient_affine_identity():
    base = UniformField((0.5, -0.2, 0.1), (0.3, 0.7, -0.4))
    rng = np.random.default_rng(2)
    m = linear_gradient_model(base, rng.uniform(-1, 1, (3, 3)),
                              rng.uniform(-1, 1, (3, 3)))
    a, b = rng.uniform(-2, 2, 3), rng.uniform(-2, 2, 3)
    lhs = m.eval(SpaceTimePoint(0, a)).e_field + m.eval(SpaceTimePoint(0, b)).e_field
    rhs = m.eval(SpaceTimePoint(0, a + b)).e_field + base.e_field
    assert lhs == pytest.approx(rhs, abs=1e-13)


def _linear_grid(dims=(4, 5, 3), origin=(-1.0, 0.0, 0.5),
                 spacing=(0.5, 0.25, 1.0)):
    # node samples of an affine field: trilinear interpolation is exact
    nx, ny, nz = dims
    es = np.zeros(dims + (3,))
    bs = np.zeros(dims + (3,))
    for i in range(nx):
        for j in range(ny):
            for k in range(nz):
                p = np.array(origin) + np.array(spacing) * (i, j, k)
                es[i, j, k] = [1 + 0.2 * p[0], -0.5 * p[1], p[2] - p[0]]
                bs[i, j, k] = [0.3 * p[2], 0.1 + p[0], -p[1]]
    return GridField(origin, spacing, dims, es, bs)


def test_grid_reproduces_nodes():
    g = _linear_grid()
    for (i, j, k) in [(0, 0, 0), (3, 4, 2), (1, 2, 1)]:
        p = g.origin + g.spacing * np.array([i, j, k])
        out = grid_eval(g, SpaceTimePoint(0.0, p))
        assert out.e_field == pytest.approx(g.e_samples[i, j, k], abs=1e-14)
        assert out.b_field == pytest.approx(g.b_samples[i, j, k], abs=1e-14)


def test_grid_exact_on_affine_field():
    g = _linear_grid()
    rng = np.random.default_rng(3)
    lo = g.origin
    hi = g.origin + g.spacing * (np.array(g.dims) - 1)
    for _ in range(100):
        p = rng.uniform(lo, hi)
        out = grid_eval(g, SpaceTimePoint(0.0, p))
        expected_e = [1 + 0.2 * p[0], -0.5 * p[1], p[2] - p[0]]
        expected_b = [0.3 * p[2], 0.1 + p[0], -p[1]]
        assert out.e_field == pytest.approx(expected_e, abs=1e-13)
        assert out.b_field == pytest.approx(expected_b, abs=1e-13)


def test_grid_cell_center_average():
    rng = np.random.default_rng(4)
    es = rng.uniform(-1, 1, (2, 2, 2, 3))
    bs = rng.uniform(-1, 1, (2, 2, 2, 3))
    g = GridField((0, 0, 0), (1, 1, 1), (2, 2, 2), es, bs)
    out = grid_eval(g, SpaceTimePoint(0.0, (0.5, 0.5, 0.5)))
    assert out.e_field == pytest.approx(es.reshape(8, 3).mean(axis=0), abs=1e-14)
    assert out.b_field == pytest.approx(bs.reshape(8, 3).mean(axis=0), abs=1e-14)


def test_grid_out_of_bounds_names_axis():
    g = _linear_grid()
    with pytest.raises(OutOfGridError, match="y="):
        grid_eval(g, SpaceTimePoint(0.0, (-0.5, 5.0, 1.0)))
    with pytest.raises(OutOfGridError, match="x="):
        grid_eval(g, SpaceTimePoint(0.0, (-2.0, 0.5, 1.0)))


def test_grid_continuous_across_faces():
    g = _linear_grid()
    # interior face at x-index 1
    xf = g.origin[0] + g.spacing[0]
    scale = max(np.max(np.abs(g.e_samples)), np.max(np.abs(g.b_samples)))
    left = grid_eval(g, SpaceTimePoint(0.0, (xf - 1e-9, 0.6, 1.2)))
    right = grid_eval(g, SpaceTimePoint(0.0, (xf + 1e-9, 0.6, 1.2)))
    assert np.max(np.abs(left.e_field - right.e_field)) <= 1e-6 * scale
    assert np.max(np.abs(left.b_field - right.b_field)) <= 1e-6 * scale


def test_grid_constructor_validation():
    with pytest.raises(ValueError):
        GridField((0, 0, 0), (1, 1, 1), (1, 2, 2), np.zeros((1, 2, 2, 3)),
                  np.zeros((1, 2, 2, 3)))
    with pytest.raises(ValueError):
        GridField((0, 0, 0), (1, 0.0, 1), (2, 2, 2), np.zeros((2, 2, 2, 3)),
                  np.zeros((2, 2, 2, 3)))


def test_grid_file_round_trip(tmp_path):
    g = _linear_grid()
    path = tmp_path / "field.grid"
    save_grid_field(g, path)
    back = load_grid_field(path)
    assert back.dims == g.dims
    assert np.array_equal(back.origin, g.origin)
    assert np.array_equal(back.spacing, g.spacing)
    assert np.array_equal(back.e_samples, g.e_samples)
    assert np.array_equal(back.b_samples, g.b_samples)


def test_grid_file_x_fastest_order(tmp_path):
    path = tmp_path / "tiny.grid"
    lines = ["dims 2 2 2", "origin 0 0 0", "spacing 1 1 1"]
    # node value encodes its (i, j, k) so the order is observable
    for k in range(2):
        for j in range(2):
            for i in range(2):
                lines.append(f"{i} {j} {k} 0 0 0")
    path.write_text("\n".join(lines) + "\n")
    g = load_grid_field(path)
    assert g.e_samples[1, 0, 1] == pytest.approx([1, 0, 1])
    assert g.e_samples[0, 1, 0] == pytest.approx([0, 1, 0])


def test_grid_file_errors(tmp_path):
    path = tmp_path / "bad.grid"
    path.write_text("dims 2 2 2\nspacing 1 1 1\n" + "0 0 0 0 0 0\n" * 8)
    with pytest.raises(ValueError, match="origin"):
        load_grid_field(path)
    path.write_text("dims 2 2 2\norigin 0 0 0\nspacing 1 1 1\n"
                    + "0 0 0 0 0 0\n" * 5)
    with pytest.raises(ValueError, match="records"):
        load_grid_field(path)
