"""End-to-end acceptance suite: one test (and one printed line) per criterion."""
import csv

import numpy as np
import pytest

from relpush import (
    FourVelocity,
    ParticleState,
    SpaceTimePoint,
    UniformField,
    commutator_table,
    integrate,
    linear_gradient_model,
    minkowski_norm,
    push_constant,
    push_constant_complex_path,
    rk_integrate,
    scheme,
    split_step_constant,
)
from relpush.cli import CSV_COLUMNS, main
from relpush.validate import (
    check_complex_residue,
    check_four_ways,
    check_norm_preservation,
    check_oracle_equivalence,
    norm_dev,
    rel_dev,
)

TOL = 1e-12


def report(criterion, detail, ok):
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}")
    assert ok


def test_criterion_1_oracle_equivalence():
    dev = check_oracle_equivalence(np.random.default_rng(1), 10_000)
    report(1, f"oracle equivalence max dev {dev:.3e} <= {TOL:g}", dev <= TOL)


def test_criterion_2_four_checks():
    devs = check_four_ways(np.random.default_rng(2), 1000)
    worst = max(devs.values())
    detail = ", ".join(f"{k}={v:.2e}" for k, v in devs.items())
    report(2, f"four checks: {detail}", worst <= TOL)


def test_criterion_3_norm_preservation_and_mutation():
    devs = check_norm_preservation(np.random.default_rng(3), 10_000)
    worst = max(devs.values())
    u = FourVelocity(1.5, (0.5, -0.8, 0.6))
    f = UniformField((0.7, -0.2, 0.1), (0.3, 0.5, -0.9))
    broken = push_constant_complex_path(u, f, 1.3, cross_term=False)
    violation = abs(minkowski_norm(broken) - minkowski_norm(u))
    report(3, f"norm drift {worst:.3e} <= {TOL:g}; "
              f"mutation violates by {violation:.3e} > 1e-6",
           worst <= TOL and violation > 1e-6)


def test_criterion_4_complex_reality():
    dev = check_complex_residue(np.random.default_rng(4), 1000)
    report(4, f"imaginary residue {dev:.3e} <= {TOL:g}", dev <= TOL)


def test_criterion_5_null_field_exactness():
    f = UniformField((1, 0, 0), (0, 1, 0))
    worst = 0.0
    for xi in (0.5, 1.0, 2.0):
        out = push_constant(FourVelocity.rest(), f, xi).as_array()
        expected = np.array([1 + xi**2 / 2, -xi, 0.0, xi**2 / 2])
        worst = max(worst, np.max(np.abs(out - expected)))
    report(5, f"null-field polynomial max dev {worst:.3e} <= 1e-14",
           worst <= 1e-14)


def test_criterion_6_commutator_table():
    worst = max(commutator_table().values())
    report(6, f"commutator deviations max {worst:g} == 0", worst == 0.0)


def _constant_field_slope(name, steps_list):
    u = FourVelocity(1.2, (0.2, -0.3, 0.4))
    f = UniformField((0.3, -0.2, 0.1), (0.2, 0.4, -0.3))
    truth = push_constant(u, f, 1.0)
    s = scheme(name)
    errs = []
    for n in steps_list:
        v = u
        for _ in range(n):
            v = split_step_constant(v, f, 1.0 / n, s)
        errs.append(max(rel_dev(v, truth), 1e-300))
    return -np.polyfit(np.log2(steps_list), np.log2(errs), 1)[0]


def test_criterion_7_convergence_orders():
    cases = [
        ("euler_split", 1.0, 0.1, [64, 128, 256, 512, 1024]),
        ("strang_kdk", 2.0, 0.1, [16, 32, 64, 128, 256]),
        ("strang_dkd", 2.0, 0.1, [16, 32, 64, 128, 256]),
        ("forest_ruth", 4.0, 0.2, [8, 16, 32, 64]),
    ]
    ok = True
    details = []
    for name, expected, tol, steps in cases:
        slope = _constant_field_slope(name, steps)
        details.append(f"{name}={slope:.3f}")
        ok = ok and abs(slope - expected) <= tol
    report(7, "slopes " + ", ".join(details), ok)


def test_criterion_8_nonuniform_second_order():
    model = linear_gradient_model(
        UniformField((0.1, 0, 0), (0, 0, 1.0)), np.zeros((3, 3)),
        [[0, 0, 0.2], [0, 0, 0], [0, 0, 0]])
    x0 = SpaceTimePoint.origin()
    u0 = FourVelocity(np.sqrt(1.3), (0.5, 0.2, 0.1))
    tx, tu = rk_integrate(x0, u0, model, 1.0, 1_000_000,
                          record_every=1_000_000)[-1]
    steps_list = [32, 64, 128, 256, 512]
    errs = []
    worst_norm = 0.0
    for n in steps_list:
        samples = integrate(ParticleState(x0, u0), model, 1.0, n,
                            scheme("strang_kdk"))
        for st in samples:
            worst_norm = max(worst_norm, norm_dev(u0, st.u))
        end = samples[-1]
        errs.append(max(np.max(np.abs(end.u.as_array() - tu.as_array())),
                        np.max(np.abs(end.x.as_array() - tx.as_array()))))
    slope = -np.polyfit(np.log2(steps_list), np.log2(errs), 1)[0]
    report(8, f"gradient-field slope {slope:.3f} (2 +/- 0.1), "
              f"per-step norm drift {worst_norm:.2e} <= {TOL:g}",
           abs(slope - 2.0) <= 0.1 and worst_norm <= TOL)


def test_criterion_9_group_inverse_linearity():
    rng = np.random.default_rng(9)
    worst_group = worst_inverse = worst_linear = 0.0
    for _ in range(1000):
        u = FourVelocity(rng.uniform(-3, 3), rng.uniform(-3, 3, 3))
        v = FourVelocity(rng.uniform(-3, 3), rng.uniform(-3, 3, 3))
        f = UniformField(rng.uniform(-3, 3, 3), rng.uniform(-3, 3, 3))
        xi1, xi2 = rng.uniform(-1.5, 1.5, 2)
        a, b = rng.uniform(-2, 2, 2)
        # composition precision is set by the largest state passed through
        mid = push_constant(u, f, xi1)
        mid_scale = max(1.0, np.max(np.abs(mid.as_array())))
        once = push_constant(u, f, xi1 + xi2)
        twice = push_constant(mid, f, xi2)
        gscale = max(mid_scale, np.max(np.abs(once.as_array())))
        worst_group = max(worst_group,
                          np.max(np.abs(once.as_array() - twice.as_array()))
                          / gscale)
        back = push_constant(mid, f, -xi1)
        worst_inverse = max(worst_inverse,
                            np.max(np.abs(back.as_array() - u.as_array()))
                            / mid_scale)
        mix = FourVelocity(a * u.u0 + b * v.u0, a * u.u + b * v.u)
        lhs = push_constant(mix, f, xi1).as_array()
        rhs = (a * push_constant(u, f, xi1).as_array()
               + b * push_constant(v, f, xi1).as_array())
        scale = max(1.0, np.max(np.abs(lhs)), np.max(np.abs(rhs)))
        worst_linear = max(worst_linear, np.max(np.abs(lhs - rhs)) / scale)
    worst = max(worst_group, worst_inverse, worst_linear)
    report(9, f"group {worst_group:.2e}, inverse {worst_inverse:.2e}, "
              f"linearity {worst_linear:.2e}", worst <= TOL)


def test_criterion_10_cli_contract(tmp_path, capsys):
    out_path = tmp_path / "t.csv"
    ok = main(["traj", "--bfield", "0,0,1", "--u0", "1.5", "--u", "1,0,0",
               "--tau", "1", "--steps", "8", "--out", str(out_path)]) == 0
    with open(out_path) as fh:
        rows = list(csv.DictReader(fh))
    ok = ok and list(rows[0]) == list(CSV_COLUMNS)

    # charge-sign flip reverses the rotation sense
    code_a = main(["push", "--bfield", "0,0,1", "--u0", "5", "--u", "1,0,0",
                   "--tau", str(np.pi / 2)])
    out_a = capsys.readouterr().out
    code_b = main(["push", "--charge", "1", "--bfield", "0,0,1", "--u0", "5",
                   "--u", "1,0,0", "--tau", str(np.pi / 2)])
    out_b = capsys.readouterr().out
    ua = [float(v) for v in out_a.split("u       = ")[1].splitlines()[0].split()]
    ub = [float(v) for v in out_b.split("u       = ")[1].splitlines()[0].split()]
    flip = (code_a == 0 and code_b == 0
            and ua == pytest.approx([0, 1, 0], abs=1e-13)
            and ub == pytest.approx([0, -1, 0], abs=1e-13))

    exit_ok = (main(["validate", "--count", "0"]) == 2
               and main(["validate", "--count", "20", "--tol", "1e-30"]) == 1
               and main(["validate", "--count", "20"]) == 0)
    capsys.readouterr()
    report(10, f"csv schema ok={ok}, charge flip ok={flip}, "
               f"exit codes ok={exit_ok}", ok and flip and exit_ok)
