"""Vector kernels over exact rationals or binary floats.

Vectors are plain tuples. Entries are ``int``/``fractions.Fraction`` in exact
mode or ``float`` in float mode; arithmetic follows the entry types, so one
set of functions serves both modes. Comparisons that feed yes/no decisions
(rationalizability) are run in exact mode so no tolerance is involved.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction, float]
Vec = tuple

EXACT = "exact"
FLOAT = "float"

# Float-mode projection residual target: |dot(result, b)| <= PROJ_TOL*|v||b|.
PROJ_TOL = 1e-12


class DimensionMismatch(ValueError):
    """Two vectors of different lengths were combined."""


def _same_dim(a: Sequence, b: Sequence) -> None:
    if len(a) != len(b):
        raise DimensionMismatch(f"dimension mismatch: {len(a)} vs {len(b)}")


def dot(a: Vec, b: Vec) -> Scalar:
    """Inner product sum(a_i * b_i); exact when entries are rational."""
    _same_dim(a, b)
    s = 0
    for i in range(len(a)):
        s += a[i] * b[i]
    return s


def sq_norm(a: Vec) -> Scalar:
    """Squared Euclidean norm dot(a, a); no square root is taken."""
    s = 0
    for x in a:
        s += x * x
    return s


def add(a: Vec, b: Vec) -> Vec:
    _same_dim(a, b)
    return tuple(a[i] + b[i] for i in range(len(a)))


def sub(a: Vec, b: Vec) -> Vec:
    _same_dim(a, b)
    return tuple(a[i] - b[i] for i in range(len(a)))


def scale(alpha: Scalar, a: Vec) -> Vec:
    return tuple(alpha * x for x in a)


def neg(a: Vec) -> Vec:
    return tuple(-x for x in a)


def zeros(n: int) -> Vec:
    return (0,) * n


def basis_vector(n: int, i: int, one: Scalar = 1) -> Vec:
    return tuple(one if j == i else 0 for j in range(n))


def is_zero(a: Vec) -> bool:
    return all(x == 0 for x in a)


def is_exact(a: Iterable[Scalar]) -> bool:
    """True when no entry is a binary float."""
    return all(not isinstance(x, float) for x in a)


def to_exact(a: Vec) -> Vec:
    """Convert entries to rationals; floats convert verbatim (dyadic)."""
    return tuple(x if isinstance(x, (int, Fraction)) else Fraction(x) for x in a)


def to_float(a: Vec) -> Vec:
    return tuple(float(x) for x in a)


def norm(a: Vec) -> float:
    """Euclidean length as a float (float-mode helper)."""
    return math.sqrt(float(sq_norm(a)))


def normalize(a: Vec) -> Vec:
    """Unit vector along a, in float arithmetic."""
    n = norm(a)
    if n == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return tuple(float(x) / n for x in a)


def orthogonalize(basis: Sequence[Vec]) -> list[Vec]:
    """Gram-Schmidt an arbitrary list of vectors, dropping dependent ones.

    Exact mode keeps classical unnormalized Gram-Schmidt so all entries stay
    rational (no square roots). Float mode runs modified Gram-Schmidt with
    normalization and one re-orthogonalization pass.
    """
    exact = all(is_exact(b) for b in basis)
    ortho: list[Vec] = []
    for b in basis:
        if len(basis) > 1:
            _same_dim(b, basis[0])
        w = b
        for u in ortho:
            uu = dot(u, u)
            coeff = dot(w, u) / uu
            w = tuple(w[i] - coeff * u[i] for i in range(len(w)))
        if exact:
            if not is_zero(w):
                ortho.append(w)
            continue
        # Second pass kills the residual components left by rounding.
        for u in ortho:
            coeff = dot(w, u)
            w = tuple(w[i] - coeff * u[i] for i in range(len(w)))
        wn = norm(w)
        if wn > 1e-13 * max(1.0, norm(b)):
            ortho.append(tuple(x / wn for x in w))
    return ortho


def project_out(v: Vec, basis: Sequence[Vec]) -> Vec:
    """Remove from v its orthogonal projection onto span(basis).

    The result is orthogonal to every basis vector: exactly in exact mode,
    and within PROJ_TOL*|v||b| per vector in float mode. Zero basis entries
    are skipped (the span is unchanged).
    """
    for b in basis:
        _same_dim(v, b)
    ortho = orthogonalize([b for b in basis if not is_zero(b)])
    r = v
    for u in ortho:
        coeff = dot(r, u) / dot(u, u)
        r = tuple(r[i] - coeff * u[i] for i in range(len(r)))
    if not is_exact(v) or any(not is_exact(u) for u in ortho):
        for u in ortho:
            coeff = dot(r, u) / dot(u, u)
            r = tuple(r[i] - coeff * u[i] for i in range(len(r)))
    return r
