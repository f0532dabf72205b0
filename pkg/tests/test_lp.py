import io
import random
from fractions import Fraction as F

import pytest

from spherepref.geometry import EXACT, FLOAT
from spherepref.lp import (
    EQ,
    GE,
    INFEASIBLE,
    LE,
    OPTIMAL,
    UNBOUNDED,
    Constraint,
    LinearProgram,
    solve,
)


def activity(coeffs, x):
    return sum(a * v for a, v in zip(coeffs, x))


def assert_primal_feasible(lp, out):
    for con in lp.constraints:
        act = activity(con.coeffs, out.primal)
        if con.relation == LE:
            assert act <= con.rhs
        elif con.relation == GE:
            assert act >= con.rhs
        else:
            assert act == con.rhs
    if lp.bounds:
        for j, (lo, hi) in enumerate(lp.bounds):
            if lo is not None:
                assert out.primal[j] >= lo
            if hi is not None:
                assert out.primal[j] <= hi


def assert_duality(lp, out):
    """Exact strong duality, dual signs, and complementary slackness."""
    bounds = lp.bounds or ((None, None),) * len(lp.objective)
    dual_obj = sum(out.duals[i] * con.rhs for i, con in enumerate(lp.constraints))
    for j, (lo, hi) in enumerate(bounds):
        lo_dual, hi_dual = out.bound_duals[j]
        if lo not in (None, 0):
            dual_obj += lo_dual * lo
        if hi is not None:
            dual_obj += hi_dual * hi
    assert dual_obj == out.objective_value
    for i, con in enumerate(lp.constraints):
        if con.relation == LE:
            assert out.duals[i] >= 0
        elif con.relation == GE:
            assert out.duals[i] <= 0
        act = activity(con.coeffs, out.primal)
        assert out.duals[i] * (act - con.rhs) == 0


def assert_farkas_valid(lp, out):
    """The returned weights combine the rows into a contradiction."""
    bounds = lp.bounds or ((None, None),) * len(lp.objective)
    for i, con in enumerate(lp.constraints):
        if con.relation == LE:
            assert out.farkas[i] >= 0
        elif con.relation == GE:
            assert out.farkas[i] <= 0
    combined_rhs = sum(out.farkas[i] * con.rhs for i, con in enumerate(lp.constraints))
    for j, (lo, hi) in enumerate(bounds):
        lo_w, hi_w = out.farkas_bounds[j]
        combined = sum(out.farkas[i] * con.coeffs[j] for i, con in enumerate(lp.constraints))
        combined += lo_w + hi_w
        if lo is not None and lo == 0:
            assert combined >= 0
        else:
            assert combined == 0
        if lo not in (None, 0):
            assert lo_w <= 0
            combined_rhs += lo_w * lo
        if hi is not None:
            assert hi_w >= 0
            combined_rhs += hi_w * hi
    assert combined_rhs < 0


def test_maximize_margin_unit_box():
    lp = LinearProgram((1,), (Constraint((1,), LE, 1),), bounds=((0, None),))
    out = solve(lp)
    assert out.status == OPTIMAL
    assert out.primal == (1,)
    assert out.objective_value == 1


def test_contradictory_rows_certificate():
    lp = LinearProgram((1,), (Constraint((1,), LE, 1), Constraint((1,), GE, 2)))
    out = solve(lp)
    assert out.status == INFEASIBLE
    # the certificate must combine both rows
    assert out.farkas[0] > 0 and out.farkas[1] < 0
    assert_farkas_valid(lp, out)


def test_small_polytope_optimum():
    lp = LinearProgram(
        (1, 1),
        (Constraint((1, 1), LE, 3),),
        bounds=((0, 2), (0, 2)),
    )
    out = solve(lp)
    assert out.status == OPTIMAL
    assert out.objective_value == 3
    # oracle: enumerate the polytope's vertices
    vertices = [(0, 0), (2, 0), (0, 2), (2, 1), (1, 2)]
    assert max(x + y for x, y in vertices) == 3
    assert_primal_feasible(lp, out)
    assert_duality(lp, out)


def test_unbounded():
    assert solve(LinearProgram((1,), ())).status == UNBOUNDED
    lp = LinearProgram((1, 0), (Constraint((0, 1), LE, 1),), bounds=((0, None), (None, None)))
    assert solve(lp).status == UNBOUNDED


def test_contradictory_bounds_rejected():
    with pytest.raises(ValueError):
        LinearProgram((1,), (), bounds=(((2, 1)),))


def test_dimension_mismatch_rejected():
    with pytest.raises(ValueError):
        LinearProgram((1, 2), (Constraint((1,), LE, 1),))


def test_determinism():
    rng = random.Random(0)
    cons = tuple(
        Constraint(tuple(F(rng.randint(-5, 5)) for _ in range(3)), rng.choice([LE, GE, EQ]), F(rng.randint(-3, 5)))
        for _ in range(6)
    )
    lp = LinearProgram((F(1), F(-2), F(3)), cons, bounds=((-2, 2), (-2, 2), (-2, 2)))
    runs = [solve(lp) for _ in range(3)]
    assert all(r == runs[0] for r in runs)


def test_debug_dump_is_tsv():
    buf = io.StringIO()
    lp = LinearProgram(
        (1, 1),
        (Constraint((1, 1), LE, 3),),
        bounds=((0, 2), (0, 2)),
    )
    solve(lp, debug=buf)
    lines = buf.getvalue().splitlines()
    assert any(line.startswith("#") for line in lines)
    data_lines = [l for l in lines if not l.startswith("#")]
    assert data_lines and all("\t" in l for l in data_lines)


def _random_lp(rng):
    nv = rng.randint(1, 4)
    nc = rng.randint(1, 5)
    obj = tuple(F(rng.randint(-6, 6), rng.choice([1, 2, 3])) for _ in range(nv))
    cons = tuple(
        Constraint(
            tuple(F(rng.randint(-6, 6), rng.choice([1, 2])) for _ in range(nv)),
            rng.choice([LE, LE, GE, EQ]),
            F(rng.randint(-6, 6)),
        )
        for _ in range(nc)
    )
    bounds = []
    for _ in range(nv):
        r = rng.random()
        if r < 0.3:
            bounds.append((0, None))
        elif r < 0.5:
            bounds.append((rng.randint(-3, 0), rng.randint(0, 3)))
        elif r < 0.7:
            bounds.append((None, rng.randint(0, 3)))
        else:
            bounds.append((None, None))
    return LinearProgram(obj, cons, tuple(bounds))


def test_random_instances_exact_certificates():
    rng = random.Random(20240)
    seen = {OPTIMAL: 0, INFEASIBLE: 0, UNBOUNDED: 0}
    for _ in range(150):
        lp = _random_lp(rng)
        out = solve(lp)
        seen[out.status] += 1
        if out.status == OPTIMAL:
            assert_primal_feasible(lp, out)
            assert_duality(lp, out)
        elif out.status == INFEASIBLE:
            assert_farkas_valid(lp, out)
    # the generator must exercise all three outcomes
    assert all(v > 0 for v in seen.values()), seen


def test_random_instances_agree_with_scipy():
    scipy_opt = pytest.importorskip("scipy.optimize")
    import numpy as np

    rng = random.Random(77)
    status_map = {0: OPTIMAL, 2: INFEASIBLE, 3: UNBOUNDED}
    for _ in range(100):
        lp = _random_lp(rng)
        out = solve(lp)
        a_ub, b_ub, a_eq, b_eq = [], [], [], []
        for con in lp.constraints:
            row = [float(v) for v in con.coeffs]
            if con.relation == LE:
                a_ub.append(row)
                b_ub.append(float(con.rhs))
            elif con.relation == GE:
                a_ub.append([-v for v in row])
                b_ub.append(-float(con.rhs))
            else:
                a_eq.append(row)
                b_eq.append(float(con.rhs))
        res = scipy_opt.linprog(
            [-float(v) for v in lp.objective],
            A_ub=np.array(a_ub) if a_ub else None,
            b_ub=np.array(b_ub) if b_ub else None,
            A_eq=np.array(a_eq) if a_eq else None,
            b_eq=np.array(b_eq) if b_eq else None,
            bounds=[
                (None if lo is None else float(lo), None if hi is None else float(hi))
                for lo, hi in lp.bounds
            ],
            method="highs",
        )
        ref = status_map.get(res.status)
        if ref is None:
            continue
        assert out.status == ref
        if ref == OPTIMAL:
            assert float(out.objective_value) == pytest.approx(-res.fun, abs=1e-7, rel=1e-7)


def test_float_mode_agrees_on_separated_instances():
    rng = random.Random(43)
    for _ in range(60):
        lp = _random_lp(rng)
        exact = solve(lp, mode=EXACT)
        if exact.status == OPTIMAL and abs(exact.objective_value) < F(1, 10**6):
            continue  # only separated instances are promised to agree
        approx = solve(lp, mode=FLOAT)
        assert approx.status == exact.status
        if exact.status == OPTIMAL:
            assert float(approx.objective_value) == pytest.approx(float(exact.objective_value), rel=1e-6, abs=1e-6)
