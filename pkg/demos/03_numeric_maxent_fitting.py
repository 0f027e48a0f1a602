"""Fitting maximum-entropy models numerically.

The running example: a six-sided die whose long-run average is 4.5 rather
than the fair 3.5.  Among all distributions with that mean, we want the one
with maximal Shannon entropy.
"""

import time
from fractions import Fraction

from toricmaxent import (
    ConstraintMatrix,
    InfeasibleMomentsError,
    MaxEntProblem,
    fit_numeric,
    kl_divergence,
    model_distribution,
    moments,
    shannon_entropy,
)

dice = ConstraintMatrix([[1, 2, 3, 4, 5, 6]])
problem = MaxEntProblem.from_targets(dice, [Fraction(9, 2)])

print("target mean: 4.5 on faces 1..6")
print()

for solver in ("gis", "newton"):
    start = time.perf_counter()
    fit = fit_numeric(problem, solver=solver)
    elapsed = time.perf_counter() - start
    print(f"[{solver}] {fit.iterations} iterations, {elapsed * 1000:.1f} ms")
    print(f"  xi       = {fit.xi[0]:.12f}")
    print(f"  p        =", " ".join(f"{v:.4f}" for v in fit.p.as_floats()))
    print(f"  mean     = {moments(dice, list(fit.p))[0]:.12f}")
    print(f"  residual = {fit.residual:.2e}")
    print(f"  entropy  = {shannon_entropy(list(fit.p)):.6f}")
    print()

# The fitted exponent tilts the uniform distribution geometrically:
# p_j is proportional to exp(-xi * j), so one number controls the slope.
fit = fit_numeric(problem)
ratios = [b / a for a, b in zip(fit.p.as_floats(), fit.p.as_floats()[1:])]
print("consecutive ratios p[j+1]/p[j]:", " ".join(f"{r:.6f}" for r in ratios))

# A prior reweights the objective from entropy to divergence-from-prior.
# With the prior already satisfying the constraint, nothing moves.
prior_problem = MaxEntProblem.from_targets(
    ConstraintMatrix([[1, 2, 3]]), [Fraction(7, 3)], prior=[1, 2, 3]
)
fit = fit_numeric(prior_problem)
print("\nprior-matching fit: xi =", round(fit.xi[0], 12), " p =", fit.p.as_floats())
print("divergence from prior:", kl_divergence(list(fit.p), [1 / 6, 2 / 6, 3 / 6]))

# Raw observations work too; targets become sample means.
sampled = MaxEntProblem.from_samples(ConstraintMatrix([[1, 2]]), [1, 1, 1, 2])
fit = fit_numeric(sampled)
print("\nfrom samples [1,1,1,2]: p =", fit.p.as_floats())
print("scaled empirical exponent:", fit.xi_empirical)

# Targets outside the convex hull of the feature values cannot be matched.
try:
    fit_numeric(MaxEntProblem.from_targets(dice, [Fraction(13, 2)]))
except InfeasibleMomentsError as exc:
    print("\ntarget 6.5 rejected:", exc)

# model_distribution exposes the family itself: any exponent vector gives
# a member of the family together with its log normalizer.
p, log_z = model_distribution(dice, [0.0])
print("\nzero exponent recovers the fair die:", p.as_floats(), " logZ =", log_z)
