"""Tour of the exact polynomial layer: arithmetic, orders, division, bases.

Everything here runs over exact rationals, so every printed identity holds
bit for bit, not just to rounding error.
"""

from fractions import Fraction

from toricmaxent import (
    GREVLEX,
    LEX,
    Polynomial,
    buchberger,
    laurent_clear,
    multivariate_divide,
    parse_poly,
    poly_to_text,
)

print("=" * 60)
print(" Exact polynomial algebra")
print("=" * 60)

# Polynomials are sparse maps from exponent vectors to rationals.
# The text grammar is the quickest way to build them.
vars = ("x", "y")
f = parse_poly("x^2*y + x*y^2 + y^2", vars)
g1 = parse_poly("x*y - 1", vars)
g2 = parse_poly("y^2 - 1", vars)

print("\nf  =", poly_to_text(f))
print("g1 =", poly_to_text(g1))
print("g2 =", poly_to_text(g2))

# Division by several polynomials at once: f = q1*g1 + q2*g2 + r,
# and no term of r is divisible by a leading term of g1 or g2.
quotients, remainder = multivariate_divide(f, [g1, g2], LEX)
print("\ndividing f by [g1, g2] under lex:")
for q, name in zip(quotients, ("q1", "q2")):
    print(f"  {name} =", poly_to_text(q))
print("  r  =", poly_to_text(remainder))

recombined = quotients[0] * g1 + quotients[1] * g2 + remainder
print("  q1*g1 + q2*g2 + r == f ?", recombined == f)

# The remainder depends on the divisor list and the monomial order.
# A Groebner basis removes that ambiguity: remainders become canonical.
gb = buchberger([g1, g2], LEX)
print("\nreduced basis of <g1, g2> under lex:")
for b in gb.basis:
    print("  ", poly_to_text(b, LEX))
print("normal form of f:", poly_to_text(gb.normal_form(f), LEX))
print("f - nf(f) reduces to zero?", gb.reduces_to_zero(f - gb.normal_form(f)))

# Monomial orders change which term leads.  Total degree wins under
# grevlex, leftmost variable wins under lex.
h = parse_poly("x^2 + y^3", vars)
print("\nh =", poly_to_text(h, LEX), "(lex view)")
print("h =", poly_to_text(h, GREVLEX), "(grevlex view)")
print("lex leading term:    ", h.leading_term(LEX))
print("grevlex leading term:", h.leading_term(GREVLEX))

# Laurent polynomials allow negative exponents.  Clearing multiplies by
# the smallest monomial that makes every exponent nonnegative, which is
# how the fitting layer turns rational stationarity conditions into
# ordinary polynomial equations.
lp = Polynomial(("t",), {(1,): 1, (-1,): 1}, laurent=True)
shift, cleared = laurent_clear(lp)
print("\nLaurent input:   ", poly_to_text(lp))
print("cleared by t^%d:  %s" % (shift[0], poly_to_text(cleared)))

# Coefficients stay exact through every operation.
p = parse_poly("1/3*x + 1/7", vars)
q = p * 21
print("\n21 * (", poly_to_text(p), ") =", poly_to_text(q))
print("value at x=2, y=0:", q.evaluate([Fraction(2), Fraction(0)]))
