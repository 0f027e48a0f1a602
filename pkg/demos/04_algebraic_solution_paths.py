"""Solving moment problems exactly instead of iteratively.

With integer feature values and rational targets, the stationarity
conditions of the entropy problem are polynomial equations with rational
coefficients.  Small instances can then be solved exactly: isolate real
roots with Sturm chains, keep the positive ones, and read off the
distribution in closed form.
"""

import math
from fractions import Fraction

from toricmaxent import (
    ConstraintMatrix,
    MaxEntProblem,
    direct_system,
    dual_objective,
    dual_system,
    fit_algebraic,
    fit_numeric,
    poly_to_text,
    sample_sums,
    solve_algebraic,
    toric_param,
)

matrix = ConstraintMatrix([[0, 1, 2]])

print("--- direct route ---")
for target in (Fraction(1), Fraction(1, 2)):
    system = direct_system(matrix, [target])
    print(f"\ntarget {target}: cleared equation", poly_to_text(system.equations[0]))
    solutions = solve_algebraic(system)
    for sol in solutions:
        theta = sol[0]
        p = toric_param(matrix, [theta])
        if theta.denominator < 1000:
            print(f"  theta = {theta} (exact)  ->  p =", [str(v) for v in p])
        else:
            print(f"  theta = {float(theta):.12f} (isolated to 1e-12)  ->  p =",
                  [f"{v:.10f}" for v in p.as_floats()])

# theta = 1 comes back exactly, and with it the exactly uniform answer.
# The second target has an irrational solution, so the root is a rational
# approximation accurate to 1e-12 and the distribution inherits that.

print("\n--- agreement with the iterative fit ---")
problem = MaxEntProblem.from_targets(matrix, [Fraction(1, 2)])
exact = fit_algebraic(problem)
numeric = fit_numeric(problem)
print("algebraic xi:", exact.xi[0])
print("newton    xi:", numeric.xi[0])
print("difference:  ", abs(exact.xi[0] - numeric.xi[0]))

print("\n--- dual route ---")
# For integer targets the dual objective is a Laurent polynomial in the
# exponentiated multiplier.  Its stationary point solves the same problem.
system = dual_system(ConstraintMatrix([[0, 1, 2, 3]]), [Fraction(2)])
print("objective:", poly_to_text(system.objective))
print("gradient: ", poly_to_text(system.gradient[0]))
print("cleared:  ", poly_to_text(system.equations[0]))
((root,),) = solve_algebraic(system)
print("stationary point:", float(root))
fit = fit_numeric(MaxEntProblem.from_targets(ConstraintMatrix([[0, 1, 2, 3]]), [Fraction(2)]))
print("exp(fitted xi): ", math.exp(fit.xi[0]))
print("objective value:", dual_objective(system, [float(root)]))

print("\n--- empirical dual from raw counts ---")
# Sample sums are integers, so observed data always yields a Laurent
# system even when the sample mean is fractional.
obs_matrix = ConstraintMatrix([[1, 2]])
data = sample_sums([1, 1, 1, 2], obs_matrix)
print("observations:", data.observations, " sample sum:", data.sums[0])
system = dual_system(obs_matrix, data)
print("objective:", poly_to_text(system.objective))
print("cleared:  ", poly_to_text(system.equations[0]))
((root,),) = solve_algebraic(system)
print("root:", float(root), " (fourth root of 3:", 3 ** 0.25, ")")
# Undo the sample-size scaling to recover the model parameter.
theta = float(root) ** (-data.count)
p = toric_param(obs_matrix, [theta])
print("recovered distribution:", p.as_floats())
