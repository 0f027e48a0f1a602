"""Toric models of integer constraint matrices and their vanishing ideals.

The parametrization map sends positive parameters through the monomials of
an integer matrix; the toric ideal is recovered over the integers via a
lattice kernel basis and saturation by the product of the coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from operator import index as as_int
from typing import Sequence

import numpy as np

from .errors import SizeLimitError
from .ratpoly import LEX, Polynomial, buchberger

__all__ = [
    "ConstraintMatrix",
    "DistributionVector",
    "LatticeBasis",
    "BinomialGenerators",
    "MembershipReport",
    "check_ones_in_rowspan",
    "toric_param",
    "apply_monomial_lift",
    "integer_kernel_basis",
    "toric_ideal_generators",
    "verify_model_membership",
]

MAX_IDEAL_ALPHABET = 10


@dataclass(frozen=True)
class ConstraintMatrix:
    """Integer d x m matrix; row i is the i-th constraint function on 1..m."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        try:
            rows = tuple(tuple(as_int(v) for v in row) for row in self.rows)
        except TypeError as exc:
            raise ValueError("matrix entries must be integers") from exc
        if len(rows) < 1:
            raise ValueError("need at least one constraint row")
        widths = {len(r) for r in rows}
        if len(widths) != 1:
            raise ValueError("ragged rows")
        if len(rows[0]) < 2:
            raise ValueError("alphabet size must be at least 2")
        object.__setattr__(self, "rows", rows)

    @property
    def d(self) -> int:
        return len(self.rows)

    @property
    def m(self) -> int:
        return len(self.rows[0])

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.rows)

    def to_array(self) -> np.ndarray:
        return np.array(self.rows, dtype=float)


@dataclass(frozen=True)
class DistributionVector:
    """Point of the probability simplex; float or exact rational entries."""

    probs: tuple

    def __post_init__(self) -> None:
        probs = tuple(self.probs)
        if not probs:
            raise ValueError("empty distribution")
        if any(x < 0 for x in probs):
            raise ValueError("negative probability")
        total = sum(probs)
        if all(isinstance(x, (int, Fraction)) for x in probs):
            if total != 1:
                raise ValueError(f"exact distribution sums to {total}, not 1")
        elif abs(float(total) - 1.0) > 1e-12:
            raise ValueError(f"distribution sums to {float(total)!r}, not 1")
        object.__setattr__(self, "probs", probs)

    @property
    def exact(self) -> bool:
        return all(isinstance(x, (int, Fraction)) for x in self.probs)

    def as_floats(self) -> tuple[float, ...]:
        return tuple(float(x) for x in self.probs)

    def __len__(self) -> int:
        return len(self.probs)

    def __iter__(self):
        return iter(self.probs)

    def __getitem__(self, j):
        return self.probs[j]


@dataclass(frozen=True)
class LatticeBasis:
    """Basis of the integer kernel of a constraint matrix."""

    vectors: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)


@dataclass(frozen=True)
class BinomialGenerators:
    """Generators of a toric ideal; every element is a monic binomial."""

    binomials: tuple[Polynomial, ...]

    def __len__(self) -> int:
        return len(self.binomials)

    def __iter__(self):
        return iter(self.binomials)


@dataclass(frozen=True)
class MembershipReport:
    member: bool
    max_residual: float
    residuals: tuple[float, ...]


def _rational_echelon_consistent(matrix: list[list[Fraction]]) -> bool:
    """Row-reduce an augmented rational system; True when it is consistent."""
    rows = [row[:] for row in matrix]
    ncols = len(rows[0]) - 1
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return all(any(row[:ncols]) or not row[ncols] for row in rows)


def check_ones_in_rowspan(matrix: ConstraintMatrix) -> bool:
    """Is the all-ones row a rational combination of the matrix rows?"""
    augmented = [
        [Fraction(matrix.rows[i][j]) for i in range(matrix.d)] + [Fraction(1)]
        for j in range(matrix.m)
    ]
    return _rational_echelon_consistent(augmented)


def toric_param(matrix: ConstraintMatrix, theta: Sequence, h: Sequence | None = None) -> DistributionVector:
    """Normalized monomial parametrization ``p_j = h_j * prod_i theta_i^a_ij / Z``.

    Exact when ``theta`` and ``h`` are rational; float otherwise.  All
    parameters must be strictly positive.
    """
    if len(theta) != matrix.d:
        raise ValueError("theta length does not match matrix rows")
    if any(not t > 0 for t in theta):
        raise ValueError("theta must be strictly positive")
    if h is None:
        h = [1] * matrix.m
    if len(h) != matrix.m:
        raise ValueError("weight length does not match alphabet size")
    if any(not w > 0 for w in h):
        raise ValueError("weights must be strictly positive")
    if all(isinstance(x, (int, Fraction)) for x in (*theta, *h)):
        theta = [Fraction(t) for t in theta]
        h = [Fraction(w) for w in h]
    else:
        theta = [float(t) for t in theta]
        h = [float(w) for w in h]
    weights = []
    for j in range(matrix.m):
        w = h[j]
        for i in range(matrix.d):
            e = matrix.rows[i][j]
            if e:
                w = w * theta[i] ** e
        weights.append(w)
    total = sum(weights)
    return DistributionVector(tuple(w / total for w in weights))


def apply_monomial_lift(matrix: ConstraintMatrix, u: Sequence[int]) -> tuple[int, ...]:
    """Image ``A @ u`` of an integer vector under the matrix, exactly."""
    if len(u) != matrix.m:
        raise ValueError("vector length does not match alphabet size")
    u = tuple(as_int(v) for v in u)
    return tuple(sum(row[j] * u[j] for j in range(matrix.m)) for row in matrix.rows)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: returns (g, x, y) with x*a + y*b == g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def integer_kernel_basis(matrix: ConstraintMatrix) -> LatticeBasis:
    """Basis of ``{u integer : A u = 0}`` via unimodular column reduction.

    The count of basis vectors equals ``m - rank(A)``.
    """
    d, m = matrix.d, matrix.m
    work = [list(row) for row in matrix.rows]
    tracker = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    col = 0
    for r in range(d):
        if col == m:
            break
        pivot = next((c for c in range(col, m) if work[r][c]), None)
        if pivot is None:
            continue
        if pivot != col:
            for mat in (work, tracker):
                for row in mat:
                    row[col], row[pivot] = row[pivot], row[col]
        for c in range(col + 1, m):
            b = work[r][c]
            if b == 0:
                continue
            a = work[r][col]
            g, x, y = _xgcd(a, b)
            pa, pb = a // g, b // g
            for mat in (work, tracker):
                for row in mat:
                    u, v = row[col], row[c]
                    row[col] = x * u + y * v
                    row[c] = -pb * u + pa * v
        if work[r][col] < 0:
            for mat in (work, tracker):
                for row in mat:
                    row[col] = -row[col]
        col += 1

    vectors = []
    for c in range(col, m):
        vec = tuple(tracker[i][c] for i in range(m))
        if any(sum(row[j] * vec[j] for j in range(m)) for row in matrix.rows):
            raise AssertionError("kernel reduction produced a non-kernel column")
        lead = next(v for v in vec if v)
        if lead < 0:
            vec = tuple(-v for v in vec)
        vectors.append(vec)
    return LatticeBasis(tuple(vectors))


def toric_ideal_generators(matrix: ConstraintMatrix) -> BinomialGenerators:
    """Reduced generators of the toric ideal in variables ``p1..pm``.

    Builds the lattice-basis binomials, then saturates by the coordinate
    product: adjoin an auxiliary variable ``w`` with ``w*p1*...*pm - 1`` and
    eliminate it from a lex basis with ``w`` most significant.
    """
    if matrix.m > MAX_IDEAL_ALPHABET:
        raise SizeLimitError(
            f"alphabet size {matrix.m} exceeds the exact-ideal limit {MAX_IDEAL_ALPHABET}"
        )
    basis = integer_kernel_basis(matrix)
    pvars = tuple(f"p{j + 1}" for j in range(matrix.m))
    if not basis.vectors:
        return BinomialGenerators(())

    wvars = ("w",) + pvars
    gens = []
    for u in basis.vectors:
        plus = (0,) + tuple(max(v, 0) for v in u)
        minus = (0,) + tuple(max(-v, 0) for v in u)
        gens.append(Polynomial(wvars, {plus: 1, minus: -1}))
    gens.append(Polynomial(wvars, {(1,) + (1,) * matrix.m: 1, (0,) * (matrix.m + 1): -1}))

    gb = buchberger(gens, LEX)
    kept = []
    for g in gb.basis:
        if all(exps[0] == 0 for exps in g.terms):
            kept.append(Polynomial(pvars, {exps[1:]: c for exps, c in g.terms.items()}))
    return BinomialGenerators(tuple(kept))


def verify_model_membership(p: Sequence, matrix: ConstraintMatrix, tol: float = 1e-9) -> MembershipReport:
    """Evaluate every toric-ideal generator at ``p`` and compare against ``tol``."""
    point = [float(x) for x in p]
    if len(point) != matrix.m:
        raise ValueError("distribution length does not match alphabet size")
    generators = toric_ideal_generators(matrix)
    residuals = tuple(abs(float(g.evaluate(point))) for g in generators)
    max_residual = max(residuals, default=0.0)
    return MembershipReport(max_residual <= tol, max_residual, residuals)
