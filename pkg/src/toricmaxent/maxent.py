"""Maximum-entropy and minimum-divergence fitting over finite alphabets.

Numeric fitting runs in floating point: generalized iterative scaling and a
damped Newton iteration on the dual.  The algebraic path builds exact
polynomial systems whose positive roots are the fitted parameters after the
exponential change of variables, and solves them with the in-package
Groebner engine plus exact univariate root isolation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import (
    InfeasibleMomentsError,
    RankDeficiencyError,
    SizeLimitError,
    UnsupportedStructureError,
)
from .ratpoly import LEX, MonomialOrder, Polynomial, buchberger, laurent_clear
from .toric import ConstraintMatrix, DistributionVector

__all__ = [
    "DEFAULT_TOL",
    "SampleData",
    "MaxEntProblem",
    "FitResult",
    "PolySystem",
    "shannon_entropy",
    "kl_divergence",
    "model_distribution",
    "moments",
    "sample_sums",
    "direct_system",
    "dual_system",
    "dual_objective",
    "fit_numeric",
    "fit_algebraic",
    "solve_algebraic",
]

DEFAULT_TOL = 1e-10
DIVERGENCE_BOUND = 40.0
GIS_MAX_ITER = 10_000
NEWTON_MAX_ITER = 100
MAX_SOLVE_VARIABLES = 3
MAX_SOLVE_DEGREE = 8
ROOT_WIDTH = Fraction(1, 10**12)


@dataclass(frozen=True)
class SampleData:
    """Observed symbols (1-based values in 1..m) with their constraint sums."""

    observations: tuple[int, ...]
    count: int
    sums: tuple[int, ...]


@dataclass(frozen=True)
class MaxEntProblem:
    """A constraint matrix with either moment targets or raw samples.

    ``prior`` holds positive reference weights (unit weights when omitted;
    only their ratios matter).  ``theta_names`` names the parameters of the
    polynomial systems, default ``t1..td``.
    """

    matrix: ConstraintMatrix
    targets: tuple | None = None
    samples: SampleData | None = None
    prior: tuple | None = None
    theta_names: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if (self.targets is None) == (self.samples is None):
            raise ValueError("provide exactly one of targets or samples")
        if self.targets is not None:
            targets = tuple(self.targets)
            if len(targets) != self.matrix.d:
                raise ValueError("target length does not match constraint count")
            object.__setattr__(self, "targets", targets)
        if self.prior is not None:
            prior = tuple(self.prior)
            if len(prior) != self.matrix.m:
                raise ValueError("prior length does not match alphabet size")
            if any(not w > 0 for w in prior):
                raise ValueError("prior weights must be strictly positive")
            object.__setattr__(self, "prior", prior)
        names = self.theta_names
        if names is None:
            names = tuple(f"t{i + 1}" for i in range(self.matrix.d))
        else:
            names = tuple(names)
            if len(names) != self.matrix.d:
                raise ValueError("need one parameter name per constraint")
        object.__setattr__(self, "theta_names", names)

    @classmethod
    def from_targets(cls, matrix: ConstraintMatrix, targets: Sequence, prior: Sequence | None = None) -> "MaxEntProblem":
        return cls(matrix, targets=tuple(targets), prior=None if prior is None else tuple(prior))

    @classmethod
    def from_samples(cls, matrix: ConstraintMatrix, observations: Sequence[int], prior: Sequence | None = None) -> "MaxEntProblem":
        data = sample_sums(observations, matrix)
        return cls(matrix, samples=data, prior=None if prior is None else tuple(prior))

    @property
    def d(self) -> int:
        return self.matrix.d

    @property
    def m(self) -> int:
        return self.matrix.m

    def target_values(self) -> tuple:
        """Moment targets; exact fractions ``sums/count`` in empirical mode."""
        if self.targets is not None:
            return self.targets
        data = self.samples
        return tuple(Fraction(s, data.count) for s in data.sums)


@dataclass(frozen=True)
class FitResult:
    """Fitted multipliers and distribution.

    ``xi`` are the exponential-family parameters (``p_j`` proportional to
    ``h_j * exp(-sum_i xi_i t_i(j))``); ``xi_empirical`` is ``xi / N`` when
    the fit came from samples.
    """

    xi: tuple[float, ...]
    p: DistributionVector
    log_z: float
    residual: float
    iterations: int
    solver: str
    xi_empirical: tuple[float, ...] | None = None


@dataclass(frozen=True)
class PolySystem:
    """Polynomial stationarity system in the fitted parameters.

    ``equations`` are ordinary polynomials (denominators cleared).  Dual
    systems also carry the raw Laurent ``gradient`` and the Laurent
    ``objective`` they differentiate.  ``provenance`` is one of ``direct``,
    ``dual``, ``dual-empirical``.
    """

    equations: tuple[Polynomial, ...]
    provenance: str
    gradient: tuple[Polynomial, ...] | None = None
    objective: Polynomial | None = None

    def __post_init__(self) -> None:
        if self.provenance not in ("direct", "dual", "dual-empirical"):
            raise ValueError(f"unknown provenance {self.provenance!r}")
        if not self.equations:
            raise ValueError("empty system")
        names = self.equations[0].vars
        for eq in self.equations:
            if eq.vars != names:
                raise ValueError("equations over different variable lists")

    @property
    def variables(self) -> tuple[str, ...]:
        return self.equations[0].vars


def shannon_entropy(p: Sequence) -> float:
    """Entropy ``-sum p_j ln p_j`` in nats, with ``0 ln 0 = 0``."""
    total = 0.0
    for x in p:
        x = float(x)
        if x < 0:
            raise ValueError("negative probability")
        if x > 0:
            total -= x * math.log(x)
    return total


def kl_divergence(p: Sequence, h: Sequence) -> float:
    """Divergence ``sum p_j ln(p_j / h_j)``; requires ``h > 0`` on the support of ``p``."""
    if len(p) != len(h):
        raise ValueError("distributions have different lengths")
    total = 0.0
    for x, y in zip(p, h):
        x, y = float(x), float(y)
        if x < 0:
            raise ValueError("negative probability")
        if x > 0:
            if y <= 0:
                raise ValueError("reference must be positive wherever p is")
            total += x * math.log(x / y)
    return total


def _prior_floats(matrix: ConstraintMatrix, prior: Sequence | None) -> np.ndarray:
    if prior is None:
        return np.ones(matrix.m)
    h = np.array([float(w) for w in prior])
    if h.shape != (matrix.m,):
        raise ValueError("prior length does not match alphabet size")
    if np.any(h <= 0):
        raise ValueError("prior weights must be strictly positive")
    return h


def model_distribution(
    matrix: ConstraintMatrix, xi: Sequence[float], prior: Sequence | None = None
) -> tuple[DistributionVector, float]:
    """Exponential-family distribution for multipliers ``xi``.

    Returns ``(p, log_z)`` where ``p_j = h_j exp(-sum_i xi_i t_i(j)) / Z``
    and ``log_z = ln Z``; the normalizer is computed with max-subtraction
    and never cached.
    """
    arr = matrix.to_array()
    xi = np.asarray([float(v) for v in xi])
    if xi.shape != (matrix.d,):
        raise ValueError("xi length does not match constraint count")
    h = _prior_floats(matrix, prior)
    logw = np.log(h) - xi @ arr
    peak = logw.max()
    w = np.exp(logw - peak)
    total = w.sum()
    log_z = float(peak + math.log(total))
    p = w / total
    return DistributionVector(tuple(p.tolist())), log_z


def moments(matrix: ConstraintMatrix, p: Sequence) -> tuple[float, ...]:
    """Constraint expectations ``A @ p``."""
    vec = np.asarray([float(x) for x in p])
    if vec.shape != (matrix.m,):
        raise ValueError("distribution length does not match alphabet size")
    return tuple(float(v) for v in matrix.to_array() @ vec)


def sample_sums(observations: Sequence[int], matrix: ConstraintMatrix) -> SampleData:
    """Exact integer constraint sums of a sample of symbols from 1..m."""
    obs = tuple(int(o) for o in observations)
    if not obs:
        raise ValueError("empty sample")
    for o in obs:
        if not 1 <= o <= matrix.m:
            raise ValueError(f"observation {o} outside 1..{matrix.m}")
    sums = tuple(sum(row[o - 1] for o in obs) for row in matrix.rows)
    return SampleData(obs, len(obs), sums)


def _exact_weights(matrix: ConstraintMatrix, prior: Sequence | None) -> list[Fraction]:
    if prior is None:
        return [Fraction(1)] * matrix.m
    if len(prior) != matrix.m:
        raise ValueError("prior length does not match alphabet size")
    weights = [Fraction(w) for w in prior]
    if any(w <= 0 for w in weights):
        raise ValueError("prior weights must be strictly positive")
    return weights


def direct_system(
    matrix: ConstraintMatrix,
    targets: Sequence,
    prior: Sequence | None = None,
    theta_names: Sequence[str] | None = None,
) -> PolySystem:
    """Moment-matching system in the primal parameters ``theta_k = exp(-xi_k)``.

    Equation i collects ``h_j (t_i(j) - T_i) prod_k theta_k^t_k(j)`` over the
    alphabet; targets may be any rationals.  Denominators are cleared, so the
    equations are ordinary and their positive roots are exactly the fitted
    parameters.
    """
    d, m = matrix.d, matrix.m
    T = [Fraction(t) for t in targets]
    if len(T) != d:
        raise ValueError("target length does not match constraint count")
    h = _exact_weights(matrix, prior)
    names = tuple(theta_names) if theta_names is not None else tuple(f"t{i + 1}" for i in range(d))
    equations = []
    for i in range(d):
        terms: dict[tuple[int, ...], Fraction] = {}
        for j in range(m):
            exps = matrix.column(j)
            coeff = h[j] * (matrix.rows[i][j] - T[i])
            acc = terms.get(exps, Fraction(0)) + coeff
            if acc:
                terms[exps] = acc
            else:
                terms.pop(exps, None)
        raw = Polynomial(names, terms, laurent=True)
        _, cleared = laurent_clear(raw)
        equations.append(cleared)
    return PolySystem(tuple(equations), "direct")


def dual_system(
    matrix: ConstraintMatrix,
    targets,
    prior: Sequence | None = None,
    theta_names: Sequence[str] | None = None,
) -> PolySystem:
    """Stationarity system of the Laurent dual objective.

    With integer targets the objective is ``sum_j h_j prod_i theta_i^(T_i -
    t_i(j))`` in ``theta_i = exp(xi_i)``.  Passing :class:`SampleData`
    instead builds the empirical variant with exponents ``sigma_i - N
    t_i(j)`` in ``theta_i = exp(xi_i / N)``, which needs no integrality of
    the moment targets.  Equations are the cleared partials; the raw Laurent
    gradient and objective ride along.
    """
    d, m = matrix.d, matrix.m
    h = _exact_weights(matrix, prior)
    names = tuple(theta_names) if theta_names is not None else tuple(f"t{i + 1}" for i in range(d))

    if isinstance(targets, SampleData):
        if len(targets.sums) != d:
            raise ValueError("sample sums do not match constraint count")
        provenance = "dual-empirical"

        def exponents(j: int) -> tuple[int, ...]:
            return tuple(targets.sums[i] - targets.count * matrix.rows[i][j] for i in range(d))

    else:
        T = [Fraction(t) for t in targets]
        if len(T) != d:
            raise ValueError("target length does not match constraint count")
        if any(t.denominator != 1 for t in T):
            raise ValueError(
                "dual integer mode needs integer targets; build the system "
                "from samples for the empirical variant"
            )
        T = [int(t) for t in T]
        provenance = "dual"

        def exponents(j: int) -> tuple[int, ...]:
            return tuple(T[i] - matrix.rows[i][j] for i in range(d))

    terms: dict[tuple[int, ...], Fraction] = {}
    for j in range(m):
        exps = exponents(j)
        acc = terms.get(exps, Fraction(0)) + h[j]
        if acc:
            terms[exps] = acc
        else:
            terms.pop(exps, None)
    objective = Polynomial(names, terms, laurent=True)
    gradient = tuple(objective.differentiate(k) for k in range(d))
    cleared = tuple(laurent_clear(g)[1] for g in gradient)
    return PolySystem(cleared, provenance, gradient=gradient, objective=objective)


def dual_objective(system: PolySystem, theta: Sequence) -> float:
    """Value of the Laurent dual objective at a positive point."""
    if system.objective is None:
        raise ValueError("system carries no dual objective")
    if any(not t > 0 for t in theta):
        raise ValueError("theta must be strictly positive")
    return float(system.objective.evaluate([float(t) for t in theta]))


def _fit_gis(arr, h, targets, tol, max_iter):
    d, m = arr.shape
    mins = arr.min(axis=1)
    shifted = arr - mins[:, None]
    shifted_targets = targets - mins
    col_sums = shifted.sum(axis=0)
    cap = col_sums.max()

    log_h = np.log(h)
    if cap == 0.0:
        # all constraint rows constant: the model is just the prior
        p = h / h.sum()
        if np.max(np.abs(arr @ p - targets)) > tol:
            raise InfeasibleMomentsError("constant constraints conflict with their targets")
        return np.zeros(d), 0

    active = shifted.max(axis=1) > 0
    if np.any(~active & (np.abs(shifted_targets) > tol)):
        raise InfeasibleMomentsError("constant constraint row conflicts with its target")
    if np.any(shifted_targets[active] <= 0):
        raise InfeasibleMomentsError("target on or outside the moment polytope")
    slack = cap - col_sums
    use_slack = slack.max() > 0
    slack_target = cap - shifted_targets.sum()
    if use_slack and slack_target <= 0:
        raise InfeasibleMomentsError("target on or outside the moment polytope")

    eta = np.zeros(d)
    eta_slack = 0.0
    for iteration in range(1, max_iter + 1):
        logw = log_h + eta @ shifted + eta_slack * slack
        logw -= logw.max()
        w = np.exp(logw)
        p = w / w.sum()
        if np.max(np.abs(arr @ p - targets)) <= tol:
            return eta_slack - eta, iteration - 1
        current = shifted @ p
        if np.any(current[active] <= 0):
            raise InfeasibleMomentsError("iterative scaling collapsed onto a face")
        eta[active] += np.log(shifted_targets[active] / current[active]) / cap
        if use_slack:
            slack_mean = float(slack @ p)
            if slack_mean <= 0:
                raise InfeasibleMomentsError("iterative scaling collapsed onto a face")
            eta_slack += math.log(slack_target / slack_mean) / cap
        if np.max(np.abs(eta_slack - eta)) > DIVERGENCE_BOUND:
            raise InfeasibleMomentsError("multipliers diverged; moments are not attainable")
    raise InfeasibleMomentsError(f"iterative scaling did not converge in {max_iter} iterations")


def _fit_newton(arr, h, targets, tol, max_iter):
    d, m = arr.shape
    log_h = np.log(h)

    def distribution(xi):
        logw = log_h - xi @ arr
        peak = logw.max()
        w = np.exp(logw - peak)
        total = w.sum()
        return w / total, float(peak + math.log(total))

    xi = np.zeros(d)
    p, log_z = distribution(xi)
    for iteration in range(max_iter):
        mom = arr @ p
        gap = mom - targets
        if np.max(np.abs(gap)) <= tol:
            return xi, iteration
        centered = arr - mom[:, None]
        cov = (centered * p) @ centered.T
        try:
            step = np.linalg.solve(cov, gap)
        except np.linalg.LinAlgError:
            step = None
        if step is None or not np.all(np.isfinite(step)):
            # singular at the start means dependent rows; later singularity
            # comes from the mass collapsing onto a face of the polytope
            if iteration == 0:
                raise RankDeficiencyError(
                    "singular moment covariance; remove dependent constraints"
                )
            raise InfeasibleMomentsError("multipliers diverged; moments are not attainable")
        value = log_z + float(xi @ targets)
        slope = float(gap @ step)
        alpha = 1.0
        while True:
            trial = xi + alpha * step
            trial_p, trial_log_z = distribution(trial)
            if trial_log_z + float(trial @ targets) <= value - 1e-4 * alpha * slope:
                break
            alpha *= 0.5
            if alpha < 2**-30:
                break
        xi, p, log_z = trial, trial_p, trial_log_z
        if np.max(np.abs(xi)) > DIVERGENCE_BOUND:
            raise InfeasibleMomentsError("multipliers diverged; moments are not attainable")
    raise InfeasibleMomentsError(f"Newton iteration did not converge in {max_iter} iterations")


def fit_numeric(
    problem: MaxEntProblem,
    solver: str = "newton",
    tol: float = DEFAULT_TOL,
    max_iter: int | None = None,
) -> FitResult:
    """Fit the multipliers numerically.

    Parameters
    ----------
    problem : MaxEntProblem
        Constraints plus targets or samples.
    solver : str
        ``"gis"`` for generalized iterative scaling (features are shifted
        nonnegative and padded with a slack feature so their sum is
        constant), or ``"newton"`` for a damped Newton iteration using the
        feature covariance as Jacobian with backtracking on the dual value.
    tol : float
        Convergence threshold on the max-norm moment residual.
    max_iter : int, optional
        Iteration cap; defaults to 10000 for GIS and 100 for Newton.

    Raises
    ------
    InfeasibleMomentsError
        When the iteration diverges or the cap is reached, which diagnoses
        targets on or outside the moment polytope.
    RankDeficiencyError
        When the covariance is singular from the start (dependent rows).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    arr = problem.matrix.to_array()
    h = _prior_floats(problem.matrix, problem.prior)
    targets = np.array([float(t) for t in problem.target_values()])
    if solver == "gis":
        xi, iterations = _fit_gis(arr, h, targets, tol, max_iter or GIS_MAX_ITER)
    elif solver == "newton":
        xi, iterations = _fit_newton(arr, h, targets, tol, max_iter or NEWTON_MAX_ITER)
    else:
        raise ValueError(f"unknown solver {solver!r}")
    return _package_fit(problem, np.asarray(xi), iterations, solver)


def _package_fit(problem, xi, iterations, solver) -> FitResult:
    p, log_z = model_distribution(problem.matrix, xi, problem.prior)
    targets = np.array([float(t) for t in problem.target_values()])
    residual = float(np.max(np.abs(problem.matrix.to_array() @ np.asarray(p.as_floats()) - targets)))
    xi_empirical = None
    if problem.samples is not None:
        xi_empirical = tuple(float(v) / problem.samples.count for v in xi)
    return FitResult(
        xi=tuple(float(v) for v in xi),
        p=p,
        log_z=log_z,
        residual=residual,
        iterations=iterations,
        solver=solver,
        xi_empirical=xi_empirical,
    )


def fit_algebraic(problem: MaxEntProblem) -> FitResult:
    """Fit by solving the direct polynomial system exactly.

    Builds the moment-matching system with exact rational targets, takes its
    positive roots, and maps the unique solution back through
    ``xi_k = -ln theta_k``.
    """
    targets = [Fraction(t) for t in problem.target_values()]
    system = direct_system(problem.matrix, targets, problem.prior, problem.theta_names)
    solutions = solve_algebraic(system)
    if not solutions:
        raise InfeasibleMomentsError("direct system has no positive solution")
    theta = solutions[0]
    xi = np.array([-math.log(float(t)) for t in theta])
    return _package_fit(problem, xi, 0, "groebner")


# ---------------------------------------------------------------------------
# exact univariate real-root isolation (Sturm chains + rational bisection)


def _upoly_trim(c: list[Fraction]) -> list[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _upoly_eval(c: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for coeff in reversed(c):
        acc = acc * x + coeff
    return acc


def _upoly_derivative(c: Sequence[Fraction]) -> list[Fraction]:
    return [i * c[i] for i in range(1, len(c))]


def _upoly_rem(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    r = _upoly_trim(list(a))
    db, lead = len(b) - 1, b[-1]
    while r and len(r) - 1 >= db:
        shift = len(r) - 1 - db
        factor = r[-1] / lead
        for i in range(db + 1):
            r[shift + i] -= factor * b[i]
        r.pop()  # the top coefficient cancels exactly
        _upoly_trim(r)
    return r


def _upoly_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    a, b = _upoly_trim(list(a)), _upoly_trim(list(b))
    while b:
        a, b = b, _upoly_rem(a, b)
    if a:
        lead = a[-1]
        a = [v / lead for v in a]
    return a


def _sturm_chain(c: Sequence[Fraction]) -> list[list[Fraction]]:
    chain = [_upoly_trim(list(c)), _upoly_trim(_upoly_derivative(c))]
    while chain[-1]:
        nxt = [-v for v in _upoly_rem(chain[-2], chain[-1])]
        chain.append(_upoly_trim(nxt))
    chain.pop()
    return chain


def _sign_changes(chain, x: Fraction) -> int:
    signs = []
    for poly in chain:
        v = _upoly_eval(poly, x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational with smallest denominator in ``[lo, hi]``, for 0 < lo <= hi."""
    whole = lo.numerator // lo.denominator
    if whole == lo:
        return lo
    if whole + 1 <= hi:
        return Fraction(whole + 1)
    tail = _simplest_between(1 / (hi - whole), 1 / (lo - whole))
    return whole + 1 / tail


def _positive_real_roots(coeffs: Sequence[Fraction], width: Fraction = ROOT_WIDTH) -> list[Fraction]:
    """All positive real roots, as exact rationals within ``width`` of the truth.

    Rational roots of moderate denominator are recovered exactly: once an
    isolating interval has shrunk below ``width``, the smallest-denominator
    rational inside it is tested and returned when it is a genuine root.
    """
    c = _upoly_trim([Fraction(v) for v in coeffs])
    if not c:
        raise ValueError("zero polynomial has every point as a root")
    while c[0] == 0:  # roots at zero are not positive; strip them
        c.pop(0)
    if len(c) == 1:
        return []
    square_free = c
    gcd = _upoly_gcd(c, _upoly_derivative(c))
    if len(gcd) > 1:
        square_free = _upoly_quotient(c, gcd)

    bound = Fraction(1) + max(abs(v) for v in square_free[:-1]) / abs(square_free[-1])
    hi = bound + 1
    while _upoly_eval(square_free, hi) == 0:
        hi += 1
    chain = _sturm_chain(square_free)

    def count(lo: Fraction, hi: Fraction) -> int:
        return _sign_changes(chain, lo) - _sign_changes(chain, hi)

    def split_point(lo: Fraction, hi: Fraction) -> Fraction:
        mid = (lo + hi) / 2
        step = (hi - lo) / 4
        while _upoly_eval(square_free, mid) == 0:
            mid += step
            step /= 2
        return mid

    isolated: list[tuple[Fraction, Fraction]] = []
    stack = [(Fraction(0), hi, count(Fraction(0), hi))]
    while stack:
        lo, hi_, k = stack.pop()
        if k == 0:
            continue
        if k == 1:
            isolated.append((lo, hi_))
            continue
        mid = split_point(lo, hi_)
        left = count(lo, mid)
        stack.append((lo, mid, left))
        stack.append((mid, hi_, k - left))

    roots = []
    for lo, hi_ in isolated:
        lo_sign = 1 if _upoly_eval(square_free, lo) > 0 else -1
        exact = None
        while hi_ - lo > width:
            mid = (lo + hi_) / 2
            value = _upoly_eval(square_free, mid)
            if value == 0:
                exact = mid
                break
            if (1 if value > 0 else -1) == lo_sign:
                lo = mid
            else:
                hi_ = mid
        if exact is None and lo > 0:
            candidate = _simplest_between(lo, hi_)
            if _upoly_eval(square_free, candidate) == 0:
                exact = candidate
        roots.append(exact if exact is not None else (lo + hi_) / 2)
    roots.sort()
    return roots


def _upoly_quotient(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    r = _upoly_trim(list(a))
    db, lead = len(b) - 1, b[-1]
    q = [Fraction(0)] * max(len(r) - db, 0)
    while r and len(r) - 1 >= db:
        shift = len(r) - 1 - db
        factor = r[-1] / lead
        q[shift] = factor
        for i in range(db + 1):
            r[shift + i] -= factor * b[i]
        r.pop()
        _upoly_trim(r)
    return _upoly_trim(q)


def solve_algebraic(system: PolySystem, order: MonomialOrder | None = None) -> list[tuple[Fraction, ...]]:
    """Positive real solutions of a cleared polynomial system, exactly isolated.

    Computes a lex Groebner basis, requires a triangular result (a univariate
    eliminant in the least significant variable, every other variable entering
    linearly), isolates the eliminant's positive roots by Sturm bisection in
    exact rational arithmetic to width 1e-12, and back-substitutes.  Roots hit
    exactly stay exact rationals.

    Raises :class:`UnsupportedStructureError` when the basis is not triangular
    (callers fall back to numeric fitting) and :class:`SizeLimitError` beyond
    3 variables or total degree 8.
    """
    equations = [eq for eq in system.equations if eq.terms]
    if not equations:
        raise UnsupportedStructureError("system is identically zero")
    if any(any(e < 0 for exps in eq.terms for e in exps) for eq in equations):
        raise ValueError("Laurent input; clear denominators first")
    names = equations[0].vars
    n = len(names)
    if n > MAX_SOLVE_VARIABLES:
        raise SizeLimitError(f"{n} variables exceeds the exact-solve limit {MAX_SOLVE_VARIABLES}")
    degree = max(eq.total_degree() for eq in equations)
    if degree > MAX_SOLVE_DEGREE:
        raise SizeLimitError(f"total degree {degree} exceeds the exact-solve limit {MAX_SOLVE_DEGREE}")

    if order is None:
        order = MonomialOrder("lex", tuple(range(n)))
    if order.kind != "lex":
        raise UnsupportedStructureError("triangular back-substitution needs a lex order")

    gb = buchberger(equations, order)
    basis = gb.basis
    if any(g.total_degree() == 0 for g in basis):
        return []  # a nonzero constant generates the unit ideal: no solutions

    pure: dict[int, Polynomial] = {}
    for g in basis:
        exps, _ = g.leading_term(order)
        support = [k for k, e in enumerate(exps) if e]
        if len(support) == 1:
            pure.setdefault(support[0], g)
    if set(pure) != set(range(n)):
        raise UnsupportedStructureError("system is not zero-dimensional")

    significance = list(order.priority) if order.priority is not None else list(range(n))
    last = significance[-1]
    eliminant = pure[last]
    if any(e for exps in eliminant.terms for k, e in enumerate(exps) if k != last):
        raise UnsupportedStructureError("eliminant mixes variables")
    for v in significance[:-1]:
        exps, _ = pure[v].leading_term(order)
        if exps[v] != 1:
            raise UnsupportedStructureError(
                f"variable {names[v]} enters nonlinearly; fall back to numeric fitting"
            )

    deg = max(exps[last] for exps in eliminant.terms)
    coeffs = [Fraction(0)] * (deg + 1)
    for exps, coeff in eliminant.terms.items():
        coeffs[exps[last]] = coeff
    root_values = _positive_real_roots(coeffs)

    solutions = []
    for root in root_values:
        values: dict[int, Fraction] = {last: root}
        good = True
        for v in reversed(significance[:-1]):
            g = pure[v]
            lead_exps, lead_coeff = g.leading_term(order)
            tail = Fraction(0)
            for exps, coeff in g.terms.items():
                if exps == lead_exps:
                    continue
                term = coeff
                for k, e in enumerate(exps):
                    if e:
                        term *= values[k] ** e
                tail += term
            value = -tail / lead_coeff
            if not value > 0:
                good = False
                break
            values[v] = value
        if good and root > 0:
            solutions.append(tuple(values[k] for k in range(n)))
    solutions.sort()
    return solutions
