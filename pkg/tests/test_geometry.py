import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from spherepref.geometry import (
    DimensionMismatch,
    add,
    dot,
    is_exact,
    norm,
    project_out,
    sq_norm,
    sub,
    to_exact,
)

rationals = st.fractions(min_value=-8, max_value=8, max_denominator=16)


def vec3(draw_from=rationals):
    return st.tuples(draw_from, draw_from, draw_from)


def test_dot_examples():
    assert dot((1, 0, 0), (0, 1, 0)) == 0
    assert dot((1, 1, 1), (1, 1, 1)) == 3
    assert dot((2, -1, 3), (1, 4, -2)) == -8


def test_dot_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        dot((1, 2), (1, 2, 3))


def test_sq_norm_examples():
    assert sq_norm((0, 0, 0)) == 0
    assert sq_norm((3, 4, 0)) == 25
    assert sq_norm((F(1, 2), F(1, 3), 0)) == F(13, 36)


def test_project_out_examples():
    assert project_out((1, 1, 0), [(1, 0, 0)]) == (0, 1, 0)
    assert project_out((1, 0, 0), [(1, 0, 0)]) == (0, 0, 0)
    assert project_out((1, 2, 3), [(1, 0, 0), (0, 1, 0)]) == (0, 0, 3)


def test_project_out_skips_zero_basis_vectors():
    assert project_out((1, 2, 3), [(0, 0, 0)]) == (1, 2, 3)


def test_project_out_dependent_basis_exact():
    v = (F(3, 7), F(-2, 5), F(1, 2))
    basis = [(1, 1, 0), (2, 2, 0), (0, 1, 1)]  # second is dependent
    r = project_out(v, basis)
    for b in basis:
        assert dot(r, b) == 0


@given(vec3(), vec3(), vec3(), rationals, rationals)
def test_dot_symmetric_bilinear(a, b, c, s, t):
    assert dot(a, b) == dot(b, a)
    lhs = dot(tuple(s * a[i] + t * b[i] for i in range(3)), c)
    assert lhs == s * dot(a, c) + t * dot(b, c)


@given(vec3(), st.lists(vec3(), min_size=1, max_size=3))
def test_project_out_orthogonal_exact(v, basis):
    r = project_out(v, basis)
    for b in basis:
        assert dot(r, b) == 0


@given(vec3(), vec3())
def test_pythagoras_for_orthogonal_parts(a, b):
    # make b orthogonal to a, then the squares add
    b = project_out(b, [a])
    assert dot(a, b) == 0
    assert sq_norm(add(a, b)) == sq_norm(a) + sq_norm(b)


def test_project_out_float_residual_bound():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.choice([3, 4, 6])
        v = tuple(rng.uniform(-1, 1) for _ in range(n))
        basis = [tuple(rng.uniform(-1, 1) for _ in range(n)) for _ in range(rng.randint(1, 3))]
        r = project_out(v, basis)
        for b in basis:
            assert abs(dot(r, b)) <= 1e-12 * max(1e-30, norm(v) * norm(b))


def test_project_out_float_near_dependent_basis():
    # nearly parallel basis vectors must not wreck the residual bound
    x = (1.0, 0.5, -0.25, 0.125)
    y = tuple(xi + 1e-10 * zi for xi, zi in zip(x, (0.3, -0.7, 0.2, 0.9)))
    v = (0.2, -0.4, 0.6, 0.8)
    r = project_out(v, [x, y])
    for b in (x, y):
        assert abs(dot(r, b)) <= 1e-12 * norm(v) * norm(b)


def test_exactness_helpers():
    assert is_exact((1, F(1, 2)))
    assert not is_exact((1, 0.5))
    assert to_exact((0.5, 1)) == (F(1, 2), 1)
    assert sub((1, 2, 3), (3, 2, 1)) == (-2, 0, 2)
