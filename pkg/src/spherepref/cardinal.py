"""Quadratic + linear decomposition of a utility with endogenous orthogonality.

A continuous utility U with U(0) = 0 that is status-quo independent and
eventually linear splits uniquely as U = f + g with f(x) = S(x, x) for a
symmetric bilinear form S and g linear. The even part is recovered through

    f(x) = (U(z + x) - U(z))/2 + (U(z - x) - U(z))/2,

which is independent of the status quo z inside the family; polarization on
the coordinate basis then yields S entrywise, and g falls out as U - f on
the axes. A reconstruction residual over a probe grid guards against
utilities outside the family, which are reported instead of silently fitted.

S induces the endogenous orthogonality: x and z count as orthogonal for U
when S(x, z) = 0, and on such pairs U is additive.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .axioms import AxiomReport
from .geometry import EXACT, FLOAT, DimensionMismatch, Scalar, Vec, add, basis_vector, dot, neg, scale, sub, zeros

# Reconstruction residual above RESIDUAL_REL*(1 + max |U|) rejects the oracle.
RESIDUAL_REL = 1e-6
_PROBE_SEED = 20230 * 2 + 1  # fixed; decompose must be deterministic
_N_RANDOM_PROBES = 32


class NotQuadraticLinear(ValueError):
    """The oracle's reconstruction residual exceeds the acceptance threshold."""

    def __init__(self, residual, threshold):
        super().__init__(
            f"utility is not quadratic + linear: residual {residual} exceeds {threshold}"
        )
        self.residual = residual
        self.threshold = threshold


@dataclass(frozen=True)
class UtilityOracle:
    """A utility function on R^n with U(0) = 0."""

    dim: int
    fn: Callable[[Vec], Scalar]
    name: str = "utility"

    def __call__(self, x: Vec) -> Scalar:
        if len(x) != self.dim:
            raise DimensionMismatch(f"dimension mismatch: {self.dim} vs {len(x)}")
        return self.fn(x)


def utility_oracle(fn: Callable[[Vec], Scalar], dim: int, auto_shift: bool = False, name: str = "utility") -> UtilityOracle:
    """Wrap a function as a UtilityOracle, enforcing U(0) = 0.

    With auto_shift the constant fn(0) is subtracted; otherwise a nonzero
    value at the origin is an error.
    """
    v0 = fn(zeros(dim))
    if auto_shift and v0 != 0:
        base = fn
        return UtilityOracle(dim, lambda x: base(x) - v0, name=name)
    if isinstance(v0, float):
        if abs(v0) > 1e-12:
            raise ValueError(f"utility at the origin is {v0}, not 0")
    elif v0 != 0:
        raise ValueError(f"utility at the origin is {v0}, not 0")
    return UtilityOracle(dim, fn, name=name)


def coefficient_oracle(matrix: Sequence[Sequence[Scalar]], linear: Vec, name: str = "coefficient") -> UtilityOracle:
    """Oracle for U(x) = x^T A x + b.x; exact whenever the data is exact."""
    a = tuple(tuple(row) for row in matrix)
    b = tuple(linear)
    n = len(b)
    if len(a) != n or any(len(row) != n for row in a):
        raise DimensionMismatch("coefficient matrix shape does not match the linear part")

    def fn(x: Vec) -> Scalar:
        quad = 0
        for i in range(n):
            xi = x[i]
            if xi:
                row = a[i]
                quad += xi * sum(row[j] * x[j] for j in range(n))
        return quad + dot(b, x)

    return UtilityOracle(n, fn, name=name)


def cubic_utility(dim: int) -> UtilityOracle:
    """Built-in rejection fixture: U(x) = x1^3 + x2 (x1^3 alone when n = 1)."""
    if dim < 2:
        return UtilityOracle(dim, lambda x: x[0] ** 3, name="cubic1")
    return UtilityOracle(dim, lambda x: x[0] ** 3 + x[1], name="cubic1")


BUILTIN_UTILITIES = {"cubic1": cubic_utility}


@dataclass(frozen=True)
class QuadLinDecomposition:
    """Symmetric bilinear matrix, linear coefficients, and the residual."""

    bilinear: tuple  # n x n, symmetric by construction
    linear: Vec
    residual: Scalar

    @property
    def dim(self) -> int:
        return len(self.linear)

    def quadratic_form(self, x: Vec, z: Vec) -> Scalar:
        """Evaluate x^T S z."""
        if len(x) != self.dim or len(z) != self.dim:
            raise DimensionMismatch("dimension mismatch in quadratic form")
        total = 0
        for i in range(self.dim):
            xi = x[i]
            if xi:
                row = self.bilinear[i]
                total += xi * sum(row[j] * z[j] for j in range(self.dim))
        return total

    def evaluate(self, x: Vec) -> Scalar:
        return self.quadratic_form(x, x) + dot(self.linear, x)

    def to_dict(self) -> dict:
        from .formats import scalar_to_json, vec_to_json

        return {
            "S": [vec_to_json(row) for row in self.bilinear],
            "g": vec_to_json(self.linear),
            "residual": scalar_to_json(self.residual),
        }


def _halve(v: Scalar) -> Scalar:
    return v / 2 if isinstance(v, float) else Fraction(v, 2)


def _quarter(v: Scalar) -> Scalar:
    return v / 4 if isinstance(v, float) else Fraction(v, 4)


def extract_f(u: UtilityOracle, x: Vec, z: Vec) -> Scalar:
    """Even part of U around z: (U(z+x) - U(z))/2 + (U(z-x) - U(z))/2."""
    return _halve(u(add(z, x)) + u(sub(z, x)) - 2 * u(z))


def _probe_grid(dim: int, probe_z: Sequence[Vec]) -> list:
    points = [tuple(p) for p in probe_z]
    points.append(zeros(dim))
    for i in range(dim):
        ei = basis_vector(dim, i)
        points += [ei, neg(ei), scale(2, ei)]
        for j in range(i + 1, dim):
            ej = basis_vector(dim, j)
            points += [add(ei, ej), sub(ei, ej)]
    rng = random.Random(_PROBE_SEED)
    for _ in range(_N_RANDOM_PROBES):
        points.append(tuple(Fraction(rng.randint(-16, 16), 8) for _ in range(dim)))
    return points


def decompose(
    u: UtilityOracle,
    probe_z: Optional[Sequence[Vec]] = None,
    residual_rel: float = RESIDUAL_REL,
) -> QuadLinDecomposition:
    """Recover (S, g) from the oracle, or reject it as NotQuadraticLinear.

    The first probe is the reference status quo for the even part; S comes
    from polarization on the coordinate axes, S[i][j] = (f(e_i + e_j) -
    f(e_i - e_j))/4, and g[i] = U(e_i) - f(e_i). The residual is the largest
    reconstruction error |U(x) - (x^T S x + g.x)| over the probe grid and
    must stay within residual_rel*(1 + max |U|) for the oracle to be inside
    the family. Probe points are rational, so exact oracles decompose with
    residual exactly zero.
    """
    n = u.dim
    if probe_z is None or len(probe_z) == 0:
        probe_z = [zeros(n)]
    z0 = tuple(probe_z[0])

    def f(x: Vec) -> Scalar:
        return extract_f(u, x, z0)

    s_rows = [[0] * n for _ in range(n)]
    for i in range(n):
        ei = basis_vector(n, i)
        s_rows[i][i] = _quarter(f(scale(2, ei)))
        for j in range(i + 1, n):
            ej = basis_vector(n, j)
            sij = _quarter(f(add(ei, ej)) - f(sub(ei, ej)))
            s_rows[i][j] = sij
            s_rows[j][i] = sij
    bilinear = tuple(tuple(row) for row in s_rows)
    linear = tuple(u(basis_vector(n, i)) - f(basis_vector(n, i)) for i in range(n))
    dec = QuadLinDecomposition(bilinear, linear, 0)

    residual: Scalar = 0
    peak: Scalar = 0
    for x in _probe_grid(n, probe_z):
        value = u(x)
        err = abs(value - dec.evaluate(x))
        if err > residual:
            residual = err
        if abs(value) > peak:
            peak = abs(value)
    threshold = residual_rel * (1 + peak)
    if residual > threshold:
        raise NotQuadraticLinear(residual, threshold)
    return QuadLinDecomposition(bilinear, linear, residual)


def check_status_quo_independence(
    u: UtilityOracle,
    trials: int,
    rng_seed: int = 0,
    tol: float = 1e-9,
    mode: str = FLOAT,
    radius: float = 1.0,
) -> AxiomReport:
    """Verify that the even part does not depend on the status quo.

    Per trial: one direction x and several status quos; the spread of
    extract_f across the status quos must stay within tol relative to the
    largest value (exactly zero in exact mode).
    """
    if trials < 2:
        raise ValueError("trials must be at least 2")
    from .axioms import sample_vector

    rng = random.Random(rng_seed)
    violations = 0
    first = None
    for _ in range(trials):
        x = sample_vector(rng, u.dim, mode, radius)
        quos = [zeros(u.dim)] + [sample_vector(rng, u.dim, mode, radius) for _ in range(3)]
        values = [extract_f(u, x, z) for z in quos]
        spread = max(values) - min(values)
        if mode == EXACT:
            bad = spread != 0
        else:
            bad = float(spread) > tol * (1.0 + max(abs(float(v)) for v in values))
        if bad:
            violations += 1
            if first is None:
                hi = values.index(max(values))
                lo = values.index(min(values))
                first = {"x": x, "w": quos[hi], "w2": quos[lo], "spread": spread}
    return AxiomReport("status_quo_independence", trials, violations, first)


@dataclass(frozen=True)
class LineSearch:
    """Budget for the eventual-linearity root search."""

    directions: int = 16
    max_radius: float = 1024.0
    bisect_steps: int = 80
    tol: float = 1e-9
    seed: int = 0


def check_eventual_linearity(
    u: UtilityOracle,
    x: Vec,
    y: Vec,
    search: LineSearch = LineSearch(),
) -> Optional[Vec]:
    """Search for a status quo where symmetric differences add up.

    The defect h(w) = [U(w+x+y) - U(w-x-y)] - [U(w+x) - U(w-x)] -
    [U(w+y) - U(w-y)] is evaluated at the origin and along random lines
    with doubling radii; a sign change is refined by bisection. Returns a
    root within tolerance, or None when the budget is exhausted (which is
    a report of failure to find one, not a proof of absence).
    """
    n = u.dim
    sx, sy, sxy = tuple(x), tuple(y), add(x, y)

    def defect(w: Vec) -> tuple:
        values = (
            u(add(w, sxy)),
            u(sub(w, sxy)),
            u(add(w, sx)),
            u(sub(w, sx)),
            u(add(w, sy)),
            u(sub(w, sy)),
        )
        h = (values[0] - values[1]) - (values[2] - values[3]) - (values[4] - values[5])
        # the relative term only absorbs float cancellation noise; it must
        # never grow fast enough to wave through a genuinely nonzero defect
        cut = search.tol + 1e-12 * max(abs(float(v)) for v in values)
        return h, cut

    def accepted(w: Vec):
        h, cut = defect(w)
        return abs(float(h)) <= cut

    origin = zeros(n)
    if accepted(origin):
        return origin

    rng = random.Random(search.seed)
    for _ in range(search.directions):
        direction = tuple(rng.gauss(0.0, 1.0) for _ in range(n))
        for sign in (1.0, -1.0):
            prev_t = 0.0
            prev_h = defect(origin)[0]
            t = 1.0
            while t <= search.max_radius:
                w = scale(sign * t, direction)
                h, cut = defect(w)
                if abs(float(h)) <= cut:
                    return w
                if float(prev_h) * float(h) < 0:
                    root = _bisect_defect(defect, direction, sign, prev_t, t, search.bisect_steps)
                    if root is not None:
                        return root
                prev_t, prev_h = t, h
                t *= 2.0
    return None


def _bisect_defect(defect, direction: Vec, sign: float, lo: float, hi: float, steps: int) -> Optional[Vec]:
    h_lo = float(defect(scale(sign * lo, direction))[0])
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        w = scale(sign * mid, direction)
        h, cut = defect(w)
        if abs(float(h)) <= cut:
            return w
        if h_lo * float(h) < 0:
            hi = mid
        else:
            lo, h_lo = mid, float(h)
    return None


def u_orthogonal(dec: QuadLinDecomposition, x: Vec, z: Vec, tol: float = 1e-9) -> bool:
    """Endogenous orthogonality: |x^T S z| within tol."""
    return abs(dec.quadratic_form(x, z)) <= tol
