"""Self-contained simplex solver over exact rationals, with a float fallback.

Problems are maximizations of a linear objective subject to ``<=``, ``=`` and
``>=`` rows plus optional per-variable bounds. The solver is a two-phase
dense-tableau primal simplex with Bland's anti-cycling rule, so identical
inputs always produce identical outcomes. In exact mode every tableau entry
is a ``fractions.Fraction`` and verdicts carry no tolerance at all.

Conventions on the reported multipliers (for a maximization):

* ``duals[i]`` is the multiplier of constraint i at the optimum. It is >= 0
  for a ``<=`` row, <= 0 for a ``>=`` row, and free for ``=``. Together with
  the bound multipliers it satisfies strong duality and complementary
  slackness, exactly in exact mode.
* ``farkas[i]`` (present when infeasible) are weights with the same sign
  conventions such that the weighted combination of all rows cancels every
  variable that is free, is >= 0 on variables bounded below by zero, and has
  a strictly negative combined right-hand side: a proof that no feasible
  point exists.

A lower bound of exactly zero is handled natively (nonnegative column);
any other bound is materialized as an explicit row and participates in the
multiplier accounting through ``bound_duals`` / ``farkas_bounds``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .geometry import EXACT, FLOAT, DimensionMismatch, Scalar, Vec, dot

LE = "<="
EQ = "="
GE = ">="

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_MAX_ITER = 100_000
_FLOAT_TOL = 1e-9
_FEAS_TOL = 1e-7


@dataclass(frozen=True)
class Constraint:
    coeffs: Vec
    relation: str
    rhs: Scalar

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if self.relation not in (LE, EQ, GE):
            raise ValueError(f"unknown relation {self.relation!r}")


@dataclass(frozen=True)
class LinearProgram:
    """Maximize objective . x subject to constraints and optional bounds."""

    objective: Vec
    constraints: tuple
    bounds: Optional[tuple] = None  # per variable: (lower | None, upper | None)

    def __post_init__(self):
        object.__setattr__(self, "objective", tuple(self.objective))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        n = len(self.objective)
        for con in self.constraints:
            if len(con.coeffs) != n:
                raise DimensionMismatch(
                    f"constraint has {len(con.coeffs)} coefficients, expected {n}"
                )
        if self.bounds is not None:
            object.__setattr__(self, "bounds", tuple(tuple(b) for b in self.bounds))
            if len(self.bounds) != n:
                raise DimensionMismatch(
                    f"{len(self.bounds)} bounds for {n} variables"
                )
            for lo, hi in self.bounds:
                if lo is not None and hi is not None and lo > hi:
                    raise ValueError(f"contradictory bounds: {lo} > {hi}")


@dataclass(frozen=True)
class LpOutcome:
    status: str
    primal: Optional[Vec] = None
    objective_value: Optional[Scalar] = None
    duals: Optional[Vec] = None
    bound_duals: Optional[tuple] = None  # per variable: (lower dual, upper dual)
    farkas: Optional[Vec] = None
    farkas_bounds: Optional[tuple] = None


def _pivot(T: list, rhs: list, basis: list, r: int, c: int) -> None:
    row = T[r]
    piv = row[c]
    if piv != 1:
        for j in range(len(row)):
            if row[j]:
                row[j] = row[j] / piv
        rhs[r] = rhs[r] / piv
        row[c] = piv / piv  # exact one of the right type
    for i in range(len(T)):
        if i == r:
            continue
        f = T[i][c]
        if f:
            ri = T[i]
            for j in range(len(row)):
                if row[j]:
                    ri[j] = ri[j] - f * row[j]
            ri[c] = 0 * f  # kill rounding residue in float mode
            rhs[i] = rhs[i] - f * rhs[r]
    basis[r] = c


def _reduced_costs(T: list, basis: list, costs: list) -> list:
    rc = list(costs)
    for i, b in enumerate(basis):
        cb = costs[b]
        if cb:
            row = T[i]
            for j in range(len(rc)):
                if row[j]:
                    rc[j] = rc[j] - cb * row[j]
    return rc


def _dump_tableau(fh, label: str, T: list, rhs: list, basis: list) -> None:
    fh.write(f"# {label}\n")
    for i, row in enumerate(T):
        cells = [str(basis[i])] + [str(v) for v in row] + [str(rhs[i])]
        fh.write("\t".join(cells) + "\n")


def _run_simplex(T, rhs, basis, costs, banned, tol, debug, label) -> str:
    """Bland-rule pivoting until optimal or unbounded."""
    ncols = len(costs)
    for _ in range(_MAX_ITER):
        rc = _reduced_costs(T, basis, costs)
        enter = -1
        for j in range(ncols):
            if not banned[j] and rc[j] > tol:
                enter = j
                break
        if enter < 0:
            return OPTIMAL
        best = None
        for i in range(len(T)):
            a = T[i][enter]
            if a > tol:
                key = (rhs[i] / a, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return UNBOUNDED
        _pivot(T, rhs, basis, best[1], enter)
        if debug is not None:
            _dump_tableau(debug, f"{label} pivot -> col {enter}", T, rhs, basis)
    raise RuntimeError("simplex iteration limit exceeded")


def solve(lp: LinearProgram, mode: str = EXACT, debug=None) -> LpOutcome:
    """Solve a LinearProgram; see the module docstring for the contract.

    ``mode`` selects the arithmetic: EXACT converts every datum to Fraction
    (floats convert verbatim), FLOAT converts to float and uses small pivot
    tolerances. ``debug`` may be a writable text stream receiving one TSV
    tableau snapshot per pivot.
    """
    if mode == EXACT:
        conv = Fraction
        tol = 0
    elif mode == FLOAT:
        conv = float
        tol = _FLOAT_TOL
    else:
        raise ValueError(f"unknown arithmetic mode: {mode!r}")

    nvars = len(lp.objective)
    objective = [conv(v) for v in lp.objective]
    bounds = lp.bounds if lp.bounds is not None else ((None, None),) * nvars

    # Variable kinds: a zero lower bound becomes a plain nonnegative column;
    # everything else stays a free (split) variable with bound rows.
    nonneg = [b[0] is not None and b[0] == 0 for b in bounds]

    # Row list: user constraints first, then materialized bound rows.
    rows: list = []  # (coeffs over original vars, relation, rhs, origin)
    for i, con in enumerate(lp.constraints):
        rows.append(([conv(v) for v in con.coeffs], con.relation, conv(con.rhs), ("con", i)))
    for j, (lo, hi) in enumerate(bounds):
        ej = [conv(0)] * nvars
        ej[j] = conv(1)
        if lo is not None and not nonneg[j]:
            rows.append((list(ej), GE, conv(lo), ("lo", j)))
        if hi is not None:
            rows.append((list(ej), LE, conv(hi), ("hi", j)))

    # Structural columns: one per nonnegative variable, two per free one.
    colmap: list = []
    struct: list = []  # (var index, +1 | -1)
    for j in range(nvars):
        if nonneg[j]:
            colmap.append((len(struct),))
            struct.append((j, 1))
        else:
            colmap.append((len(struct), len(struct) + 1))
            struct.append((j, 1))
            struct.append((j, -1))
    ns = len(struct)

    # Orient to <= / = and normalize right-hand sides to be nonnegative.
    m = len(rows)
    oriented: list = []  # (structvec, rhs, slack sign, needs artificial, row sign)
    for coeffs, rel, rhs_v, origin in rows:
        sign = 1
        if rel == GE:
            coeffs = [-v for v in coeffs]
            rhs_v = -rhs_v
            rel = LE
            sign = -sign
        if rhs_v < 0:
            coeffs = [-v for v in coeffs]
            rhs_v = -rhs_v
            sign = -sign
            rel = GE if rel == LE else EQ
        svec = [conv(0)] * ns
        for k, (j, s) in enumerate(struct):
            svec[k] = coeffs[j] if s > 0 else -coeffs[j]
        slack = 1 if rel == LE else (-1 if rel == GE else 0)
        oriented.append((svec, rhs_v, slack, rel != LE, sign, origin))

    n_slack = sum(1 for o in oriented if o[2] != 0)
    n_art = sum(1 for o in oriented if o[3])
    ncols = ns + n_slack + n_art

    T: list = []
    rhs: list = []
    basis: list = []
    idcol: list = []
    artificial = [False] * ncols
    s_at = ns
    a_at = ns + n_slack
    for svec, b, slack, needs_art, sign, origin in oriented:
        row = svec + [conv(0)] * (ncols - ns)
        if slack != 0:
            row[s_at] = conv(slack)
            s_col = s_at
            s_at += 1
        if needs_art:
            row[a_at] = conv(1)
            artificial[a_at] = True
            basis.append(a_at)
            idcol.append(a_at)
            a_at += 1
        else:
            basis.append(s_col)
            idcol.append(s_col)
        T.append(row)
        rhs.append(b)

    row_sign = [o[4] for o in oriented]
    origins = [o[5] for o in oriented]
    never = [False] * ncols

    def _extract_multipliers(costs: list) -> list:
        rc = _reduced_costs(T, basis, costs)
        return [row_sign[i] * (costs[idcol[i]] - rc[idcol[i]]) for i in range(m)]

    def _split_multipliers(y: list):
        con_part = [conv(0)] * len(lp.constraints)
        lo_part = [conv(0)] * nvars
        hi_part = [conv(0)] * nvars
        for i, (kind, idx) in enumerate(origins):
            if kind == "con":
                con_part[idx] = y[i]
            elif kind == "lo":
                lo_part[idx] = y[i]
            else:
                hi_part[idx] = y[i]
        return tuple(con_part), tuple(zip(lo_part, hi_part))

    # Phase 1: drive the artificial columns to zero.
    if n_art:
        costs1 = [conv(0)] * ncols
        for j in range(ncols):
            if artificial[j]:
                costs1[j] = conv(-1)
        status = _run_simplex(T, rhs, basis, costs1, never, tol, debug, "phase1")
        if status != OPTIMAL:  # pragma: no cover - phase 1 is always bounded
            raise RuntimeError("phase 1 terminated abnormally")
        value1 = sum(costs1[basis[i]] * rhs[i] for i in range(m))
        infeas_cut = 0 if mode == EXACT else -_FEAS_TOL * (1 + max(map(abs, rhs), default=0))
        if value1 < infeas_cut:
            w = _extract_multipliers(costs1)
            farkas, farkas_bounds = _split_multipliers(w)
            return LpOutcome(INFEASIBLE, farkas=farkas, farkas_bounds=farkas_bounds)
        # Pivot leftover artificials out of the basis where possible.
        for i in range(m):
            if artificial[basis[i]]:
                for j in range(ncols):
                    if not artificial[j] and (T[i][j] if mode == EXACT else abs(T[i][j]) > tol):
                        _pivot(T, rhs, basis, i, j)
                        break

    # Phase 2: the real objective over structural columns.
    costs2 = [conv(0)] * ncols
    for k, (j, s) in enumerate(struct):
        costs2[k] = objective[j] if s > 0 else -objective[j]
    banned = list(artificial)
    status = _run_simplex(T, rhs, basis, costs2, banned, tol, debug, "phase2")
    if status == UNBOUNDED:
        return LpOutcome(UNBOUNDED)

    values = [conv(0)] * ncols
    for i, b in enumerate(basis):
        values[b] = rhs[i]
    primal = [conv(0)] * nvars
    for k, (j, s) in enumerate(struct):
        primal[j] = primal[j] + (values[k] if s > 0 else -values[k])
    y = _extract_multipliers(costs2)
    duals, bound_duals = _split_multipliers(y)
    return LpOutcome(
        OPTIMAL,
        primal=tuple(primal),
        objective_value=dot(tuple(objective), tuple(primal)),
        duals=duals,
        bound_duals=bound_duals,
    )
