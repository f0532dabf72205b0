"""Rationalizability of finite comparison data by a spherical preference.

The data is a pair of finite relations over points of R^n: ``weak`` pairs
(x, y) meaning x is at least as good as y, and ``strict`` pairs meaning x is
better. A spherical utility c*(x.x) + d.x rationalizes the data exactly when

    c*(x.x - y.y) + d.(x - y) >= 0   for every weak pair,
    c*(x.x - y.y) + d.(x - y) >  0   for every strict pair.

Strictness is decided by an epsilon-maximization: the system is positively
homogeneous in (c, d), so after boxing the coefficients into [-1, 1] a strict
solution exists iff the optimal common margin is positive. The converse
route is :func:`certificate_lp`: nonnegative weights on the observations
summing to one whose weighted quadratic terms and weighted difference
vectors both cancel, with positive mass on the strict side, certify that no
spherical preference fits. The two routes are exact-arithmetic LPs and must
agree on every dataset; each negative verdict carries its certificate.

Class-restricted variants force the sign of c (zero for linear, negative
for Euclidean, positive for anti-Euclidean) through the same margin trick;
their certificates carry one extra weight for the sign restriction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import lp
from .geometry import EXACT, DimensionMismatch, Scalar, Vec, dot, sub
from .preference import Ordering, SphericalParams, compare, utility

RESTRICT_LINEAR = "linear"
RESTRICT_EUCLIDEAN = "euclidean"
RESTRICT_ANTI_EUCLIDEAN = "anti_euclidean"
_RESTRICTIONS = (RESTRICT_LINEAR, RESTRICT_EUCLIDEAN, RESTRICT_ANTI_EUCLIDEAN)

_SMALL_DIM_NOTE = (
    "dimension < 3: the axiomatic characterization of spherical preferences "
    "requires n >= 3; this verdict tests the parametric family directly"
)

# Float-mode margin below which an epsilon optimum counts as zero.
_FLOAT_MARGIN = 1e-9

# Above this many observation rows the margin LP is solved by row
# generation: solve on a subset, add violated rows, repeat. The verdict and
# margin are those of the full program (a point feasible for every row at
# the subset's optimal margin is optimal for the whole program, since adding
# rows can only lower the optimum); only the solve order changes.
_ROWGEN_THRESHOLD = 120
_ROWGEN_INITIAL = 80
_ROWGEN_BATCH = 60


@dataclass(frozen=True)
class ObservationSet:
    """Finite weak and strict comparison data over points of R^n."""

    dimension: int
    weak: tuple
    strict: tuple

    def __post_init__(self):
        object.__setattr__(self, "weak", tuple((tuple(x), tuple(y)) for x, y in self.weak))
        object.__setattr__(self, "strict", tuple((tuple(x), tuple(y)) for x, y in self.strict))
        for x, y in self.weak + self.strict:
            if len(x) != self.dimension or len(y) != self.dimension:
                raise DimensionMismatch(
                    f"observation of dimension {len(x)}x{len(y)} in data of dimension {self.dimension}"
                )

    def __len__(self) -> int:
        return len(self.weak) + len(self.strict)

    def to_exact(self) -> "ObservationSet":
        conv = lambda v: tuple(Fraction(c) for c in v)  # noqa: E731
        return ObservationSet(
            self.dimension,
            tuple((conv(x), conv(y)) for x, y in self.weak),
            tuple((conv(x), conv(y)) for x, y in self.strict),
        )

    def labels(self) -> list:
        return [f"weak:{i}" for i in range(len(self.weak))] + [
            f"strict:{i}" for i in range(len(self.strict))
        ]

    def pairs(self) -> list:
        return list(self.weak) + list(self.strict)

    def to_dict(self) -> dict:
        from .formats import vec_to_json

        return {
            "dimension": self.dimension,
            "weak": [{"better": vec_to_json(x), "worse": vec_to_json(y)} for x, y in self.weak],
            "strict": [{"better": vec_to_json(x), "worse": vec_to_json(y)} for x, y in self.strict],
        }

    @staticmethod
    def from_dict(doc: dict) -> "ObservationSet":
        from .formats import vec_from_json

        def pairs(items):
            return tuple((vec_from_json(p["better"]), vec_from_json(p["worse"])) for p in items)

        return ObservationSet(int(doc["dimension"]), pairs(doc.get("weak", [])), pairs(doc.get("strict", [])))


@dataclass(frozen=True)
class CertificateSearch:
    """Outcome of the dual search: maximal strict mass and an optimizer.

    ``p_mass`` is the largest total weight placeable on the strict side
    (plus the restriction weight, for restricted searches) subject to the
    cancellation equalities; the data is rationalizable iff it is zero.
    """

    p_mass: Scalar
    weights: Optional[dict]  # label -> weight, when p_mass > 0 is achievable
    restriction_weight: Optional[Scalar] = None


@dataclass(frozen=True)
class RationalizabilityVerdict:
    rationalizable: bool
    witness: Optional[SphericalParams] = None
    epsilon: Optional[Scalar] = None
    certificate: Optional[dict] = None
    p_mass: Optional[Scalar] = None
    restriction: Optional[str] = None
    restriction_weight: Optional[Scalar] = None
    note: Optional[str] = None

    def to_dict(self) -> dict:
        from .formats import scalar_to_json

        doc = {"rationalizable": self.rationalizable}
        if self.witness is not None:
            doc["witness"] = self.witness.to_dict()
        if self.epsilon is not None:
            doc["epsilon"] = scalar_to_json(self.epsilon)
        if self.certificate is not None:
            doc["certificate"] = {k: scalar_to_json(v) for k, v in self.certificate.items()}
        if self.p_mass is not None:
            doc["p_mass"] = scalar_to_json(self.p_mass)
        if self.restriction is not None:
            doc["restriction"] = self.restriction
        if self.restriction_weight is not None:
            doc["restriction_weight"] = scalar_to_json(self.restriction_weight)
        if self.note is not None:
            doc["note"] = self.note
        return doc


def _pair_row(x: Vec, y: Vec):
    """Coefficients (x.x - y.y, x - y) of one observation's inequality."""
    return dot(x, x) - dot(y, y), sub(x, y)


def rationalize(
    data: ObservationSet,
    restriction: Optional[str] = None,
    mode: str = EXACT,
    float_margin: float = _FLOAT_MARGIN,
) -> RationalizabilityVerdict:
    """Decide rationalizability, returning a witness or a certificate.

    Builds the margin LP over variables (c, u_1..u_n, eps): maximize eps
    subject to weak rows >= 0, strict rows >= eps, the box |c|, |u_i| <= 1,
    0 <= eps <= 1, and the class restriction if any. The data is
    rationalizable (within the class) iff the optimum is positive; then the
    optimal (c, u) is returned as a witness. Otherwise the certificate
    search runs and its optimizer is attached. In float mode an optimum
    below ``float_margin`` counts as zero; exact mode ignores it.
    """
    if restriction is not None and restriction not in _RESTRICTIONS:
        raise ValueError(f"unknown restriction {restriction!r}")
    if mode == EXACT:
        data = data.to_exact()
    n = data.dimension
    ncoef = n + 1  # c plus u
    eps_col = ncoef

    pair_rows = []
    for x, y in data.weak:
        q, v = _pair_row(x, y)
        pair_rows.append((q,) + v + (0,))
    for x, y in data.strict:
        q, v = _pair_row(x, y)
        pair_rows.append((q,) + v + (-1,))

    always = []
    c_bounds = (-1, 1)
    if restriction == RESTRICT_LINEAR:
        c_bounds = (0, 0)
    elif restriction == RESTRICT_EUCLIDEAN:
        # c <= -eps
        always.append(lp.Constraint((1,) + (0,) * n + (1,), lp.LE, 0))
    elif restriction == RESTRICT_ANTI_EUCLIDEAN:
        # c >= eps
        always.append(lp.Constraint((1,) + (0,) * n + (-1,), lp.GE, 0))

    bounds = (c_bounds,) + ((-1, 1),) * n + ((0, 1),)
    objective = (0,) * ncoef + (1,)

    def solve_with(active: list) -> lp.LpOutcome:
        cons = tuple(lp.Constraint(pair_rows[i], lp.GE, 0) for i in active) + tuple(always)
        outcome = lp.solve(lp.LinearProgram(objective, cons, bounds), mode=mode)
        if outcome.status != lp.OPTIMAL:  # pragma: no cover - 0 is always feasible
            raise RuntimeError(f"margin LP terminated with status {outcome.status}")
        return outcome

    total = len(pair_rows)
    if total <= _ROWGEN_THRESHOLD:
        outcome = solve_with(list(range(total)))
    else:
        active = list(range(_ROWGEN_INITIAL))
        in_active = set(active)
        while True:
            outcome = solve_with(active)
            sol = outcome.primal
            violated = [
                i
                for i in range(total)
                if i not in in_active and dot(pair_rows[i], sol) < 0
            ]
            if not violated:
                break
            for i in violated[:_ROWGEN_BATCH]:
                active.append(i)
                in_active.add(i)

    eps = outcome.primal[eps_col]
    margin_cut = 0 if mode == EXACT else float_margin
    note = _SMALL_DIM_NOTE if n < 3 else None
    if eps > margin_cut:
        witness = SphericalParams(outcome.primal[0], outcome.primal[1 : 1 + n])
        return RationalizabilityVerdict(
            True,
            witness=witness,
            epsilon=eps,
            restriction=restriction,
            note=note,
        )
    search = _certificate_search(data, restriction, mode=mode, float_margin=float_margin)
    if search.weights is None:  # pragma: no cover - duality guarantees a witness
        raise RuntimeError("margin LP found no strict solution but no certificate exists")
    return RationalizabilityVerdict(
        False,
        epsilon=eps,
        certificate=search.weights,
        p_mass=search.p_mass,
        restriction=restriction,
        restriction_weight=search.restriction_weight,
        note=note,
    )


def rationalize_restricted(data: ObservationSet, restriction: str, mode: str = EXACT) -> RationalizabilityVerdict:
    """Rationalizability within one class of the family; see rationalize."""
    if restriction not in _RESTRICTIONS:
        raise ValueError(f"unknown restriction {restriction!r}")
    return rationalize(data, restriction=restriction, mode=mode)


def certificate_lp(data: ObservationSet, mode: str = EXACT) -> CertificateSearch:
    """Maximize strict mass over cancelling observation weights.

    Independent converse route to :func:`rationalize`: over nonnegative
    weights lambda on the observations with total mass one, subject to
    sum(lambda * (x.x - y.y)) = 0 and sum(lambda * (x - y)) = 0, maximize
    the mass on strict observations. The data is rationalizable iff the
    optimum is zero (an infeasible search counts as zero).
    """
    return _certificate_search(data, None, mode=mode)


def _certificate_search(
    data: ObservationSet,
    restriction: Optional[str],
    mode: str,
    float_margin: float = _FLOAT_MARGIN,
) -> CertificateSearch:
    if mode == EXACT:
        data = data.to_exact()
    n = data.dimension
    pairs = data.pairs()
    k = len(pairs)
    has_mu = restriction in (RESTRICT_EUCLIDEAN, RESTRICT_ANTI_EUCLIDEAN)
    nvars = k + (1 if has_mu else 0)

    rows = [_pair_row(x, y) for x, y in pairs]

    mass = [1] * k + ([1] if has_mu else [])
    constraints = [lp.Constraint(tuple(mass), lp.EQ, 1)]
    if restriction != RESTRICT_LINEAR:
        quad = [q for q, _ in rows]
        if restriction == RESTRICT_EUCLIDEAN:
            quad.append(-1)
        elif restriction == RESTRICT_ANTI_EUCLIDEAN:
            quad.append(1)
        constraints.append(lp.Constraint(tuple(quad), lp.EQ, 0))
    for i in range(n):
        coord = [v[i] for _, v in rows] + ([0] if has_mu else [])
        constraints.append(lp.Constraint(tuple(coord), lp.EQ, 0))

    objective = [0] * len(data.weak) + [1] * len(data.strict) + ([1] if has_mu else [])
    program = lp.LinearProgram(
        objective=tuple(objective),
        constraints=tuple(constraints),
        bounds=((0, None),) * nvars,
    )
    outcome = lp.solve(program, mode=mode)
    if outcome.status == lp.INFEASIBLE:
        return CertificateSearch(p_mass=0, weights=None)
    if outcome.status != lp.OPTIMAL:  # pragma: no cover - the simplex is bounded
        raise RuntimeError(f"certificate LP terminated with status {outcome.status}")
    zero_cut = 0 if mode == EXACT else float_margin
    if outcome.objective_value <= zero_cut:
        return CertificateSearch(p_mass=outcome.objective_value, weights=None)
    labels = data.labels()
    weights = {labels[i]: outcome.primal[i] for i in range(k) if outcome.primal[i] != 0}
    mu = outcome.primal[k] if has_mu else None
    return CertificateSearch(
        p_mass=outcome.objective_value,
        weights=weights,
        restriction_weight=mu,
    )


def verify_witness(data: ObservationSet, params: SphericalParams) -> bool:
    """Exact re-check: weak pairs weakly higher utility, strict pairs strictly."""
    data = data.to_exact()
    p = SphericalParams(Fraction(params.c), tuple(Fraction(v) for v in params.d))
    for x, y in data.weak:
        if utility(p, x) - utility(p, y) < 0:
            return False
    for x, y in data.strict:
        if utility(p, x) - utility(p, y) <= 0:
            return False
    return True


def verify_certificate(
    data: ObservationSet,
    weights: dict,
    restriction: Optional[str] = None,
    restriction_weight: Optional[Scalar] = None,
) -> bool:
    """Exact re-check of a negative verdict's certificate.

    Unrestricted: weights lie in the simplex over the observations, place
    positive mass on the strict side, and cancel both the quadratic terms
    and the difference vectors. Restricted searches relax the quadratic
    cancellation by the sign restriction's weight.
    """
    data = data.to_exact()
    labels = data.labels()
    pairs = data.pairs()
    mu = Fraction(restriction_weight) if restriction_weight is not None else Fraction(0)
    lam = []
    for lbl in labels:
        w = weights.get(lbl, 0)
        w = Fraction(w)
        if w < 0:
            return False
        lam.append(w)
    if sum(lam) + (mu if restriction in (RESTRICT_EUCLIDEAN, RESTRICT_ANTI_EUCLIDEAN) else 0) != 1:
        return False
    strict_mass = sum(lam[len(data.weak) :]) + mu
    if strict_mass <= 0:
        return False
    quad = Fraction(0)
    vec = [Fraction(0)] * data.dimension
    for w, (x, y) in zip(lam, pairs):
        q, v = _pair_row(x, y)
        quad += w * q
        for i in range(data.dimension):
            vec[i] += w * v[i]
    if any(vec):
        return False
    if restriction is None and quad != 0:
        return False
    if restriction == RESTRICT_EUCLIDEAN and quad != mu:
        return False
    if restriction == RESTRICT_ANTI_EUCLIDEAN and quad != -mu:
        return False
    return True


def generate_dataset(
    params: SphericalParams,
    count: int,
    rng_seed: int,
    radius: Scalar = 2,
) -> ObservationSet:
    """Sample comparison data consistent with the given parameters.

    Pairs are drawn uniformly from a rational grid inside the box of the
    given radius; strict comparisons enter the strict relation oriented by
    the preference, exact ties enter the weak relation in both orientations.
    The output is rationalizable by construction.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    if radius <= 0:
        raise ValueError("radius must be positive")
    rng = random.Random(rng_seed)
    n = params.dim
    p = SphericalParams(Fraction(params.c), tuple(Fraction(v) for v in params.d))
    den = 8
    span = max(1, round(float(radius) * den))
    weak = []
    strict = []
    for _ in range(count):
        x = tuple(Fraction(rng.randint(-span, span), den) for _ in range(n))
        y = tuple(Fraction(rng.randint(-span, span), den) for _ in range(n))
        order = compare(p, x, y)
        if order is Ordering.BETTER:
            strict.append((x, y))
        elif order is Ordering.WORSE:
            strict.append((y, x))
        else:
            weak.append((x, y))
            weak.append((y, x))
    return ObservationSet(n, tuple(weak), tuple(strict))
