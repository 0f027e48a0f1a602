"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial is a map from integer exponent vectors to nonzero Fraction
coefficients, tagged with a shared variable list.  A ``laurent`` flag admits
negative exponents; division and Buchberger work in the ordinary ring and
reject Laurent input, which callers first push through :func:`laurent_clear`.

Example::

    >>> x = Polynomial.variable(("x", "y"), "x")
    >>> y = Polynomial.variable(("x", "y"), "y")
    >>> poly_to_text((x + y) * (x - y))
    'x^2 - y^2'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

__all__ = [
    "Exponents",
    "MonomialOrder",
    "LEX",
    "GREVLEX",
    "order_compare",
    "Polynomial",
    "multivariate_divide",
    "normal_form",
    "s_polynomial",
    "GroebnerBasis",
    "buchberger",
    "laurent_clear",
    "poly_to_text",
    "parse_poly",
]

Exponents = tuple[int, ...]


@dataclass(frozen=True)
class MonomialOrder:
    """Total multiplicative order on exponent vectors.

    ``priority`` permutes variable indices; position 0 is the most
    significant variable.  ``None`` means the natural order 0, 1, 2, ...
    """

    kind: str = "grevlex"
    priority: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("lex", "grevlex"):
            raise ValueError(f"unknown monomial order kind: {self.kind!r}")
        if self.priority is not None:
            perm = tuple(self.priority)
            if sorted(perm) != list(range(len(perm))):
                raise ValueError("priority must be a permutation of 0..n-1")
            object.__setattr__(self, "priority", perm)

    def arrange(self, exps: Sequence[int]) -> Exponents:
        """Reorder ``exps`` so that index 0 is the most significant variable."""
        if self.priority is None:
            return tuple(exps)
        if len(self.priority) != len(exps):
            raise ValueError("priority length does not match exponent vector")
        return tuple(exps[i] for i in self.priority)

    def key(self, exps: Sequence[int]):
        """Sort key: monomials compare the same way their keys do."""
        arranged = self.arrange(exps)
        if self.kind == "lex":
            return arranged
        return (sum(arranged), tuple(-e for e in reversed(arranged)))


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def order_compare(a: Sequence[int], b: Sequence[int], order: MonomialOrder) -> int:
    """Compare exponent vectors; returns -1, 0 or 1 (cmp convention)."""
    if len(a) != len(b):
        raise ValueError("exponent vectors have different lengths")
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


class Polynomial:
    """Sparse polynomial with exact rational coefficients.

    Value-semantic: construction canonicalizes (zero coefficients dropped,
    coefficients normalized to ``Fraction``) and no method mutates an
    existing instance.  Two polynomials are equal when their variable lists
    and term maps coincide; the ``laurent`` flag marks ring membership and
    does not enter equality.
    """

    __slots__ = ("vars", "terms", "laurent")

    def __init__(
        self,
        vars: Sequence[str],
        terms: Mapping[Sequence[int], object] | None = None,
        laurent: bool = False,
    ) -> None:
        names = tuple(vars)
        if not names:
            raise ValueError("need at least one variable")
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        clean: dict[Exponents, Fraction] = {}
        for raw_exps, raw_coeff in (terms or {}).items():
            exps = tuple(int(e) for e in raw_exps)
            if len(exps) != len(names):
                raise ValueError("exponent vector length does not match variables")
            if not laurent and any(e < 0 for e in exps):
                raise ValueError("negative exponent outside Laurent mode")
            coeff = Fraction(raw_coeff)
            if coeff:
                clean[exps] = coeff
        self.vars = names
        self.terms = clean
        self.laurent = bool(laurent)

    @classmethod
    def _raw(cls, vars: tuple[str, ...], terms: dict[Exponents, Fraction], laurent: bool) -> "Polynomial":
        # internal fast path: caller guarantees canonical terms
        p = object.__new__(cls)
        p.vars = vars
        p.terms = terms
        p.laurent = laurent
        return p

    @classmethod
    def zero(cls, vars: Sequence[str], laurent: bool = False) -> "Polynomial":
        return cls(vars, {}, laurent)

    @classmethod
    def constant(cls, vars: Sequence[str], value, laurent: bool = False) -> "Polynomial":
        names = tuple(vars)
        return cls(names, {(0,) * len(names): value}, laurent)

    @classmethod
    def monomial(cls, vars: Sequence[str], exps: Sequence[int], coeff=1, laurent: bool = False) -> "Polynomial":
        return cls(vars, {tuple(exps): coeff}, laurent)

    @classmethod
    def variable(cls, vars: Sequence[str], name: str) -> "Polynomial":
        names = tuple(vars)
        idx = names.index(name)
        exps = tuple(1 if k == idx else 0 for k in range(len(names)))
        return cls(names, {exps: 1})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.vars != self.vars:
                raise ValueError("polynomials are over different variable lists")
            return other
        return Polynomial.constant(self.vars, other, self.laurent)

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            acc = terms.get(exps, 0) + coeff
            if acc:
                terms[exps] = acc
            else:
                terms.pop(exps, None)
        return Polynomial._raw(self.vars, terms, self.laurent or other.laurent)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.vars, {e: -c for e, c in self.terms.items()}, self.laurent)

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            coeff = Fraction(other)
            if not coeff:
                return Polynomial.zero(self.vars, self.laurent)
            return Polynomial._raw(self.vars, {e: c * coeff for e, c in self.terms.items()}, self.laurent)
        other = self._coerce(other)
        terms: dict[Exponents, Fraction] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                exps = tuple(x + y for x, y in zip(ea, eb))
                acc = terms.get(exps, 0) + ca * cb
                if acc:
                    terms[exps] = acc
                else:
                    terms.pop(exps, None)
        return Polynomial._raw(self.vars, terms, self.laurent or other.laurent)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = Polynomial.constant(self.vars, 1, self.laurent)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def evaluate(self, point: Sequence) -> object:
        """Evaluate at ``point``; exact for rational inputs, float otherwise.

        Negative exponents at zero raise ``ZeroDivisionError``.
        """
        if len(point) != len(self.vars):
            raise ValueError("point length does not match variables")
        total = 0
        for exps, coeff in self.terms.items():
            value = coeff
            for x, e in zip(point, exps):
                if e:
                    value = value * x**e
            total = total + value
        return total

    def total_degree(self) -> int:
        """Maximum over terms of the exponent sum; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def leading_term(self, order: MonomialOrder) -> tuple[Exponents, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=order.key)
        return exps, self.terms[exps]

    def monic(self, order: MonomialOrder) -> "Polynomial":
        _, lead = self.leading_term(order)
        if lead == 1:
            return self
        return Polynomial._raw(self.vars, {e: c / lead for e, c in self.terms.items()}, self.laurent)

    def differentiate(self, var_index: int) -> "Polynomial":
        """Partial derivative with respect to the variable at ``var_index``."""
        if not 0 <= var_index < len(self.vars):
            raise ValueError("variable index out of range")
        terms = {}
        for exps, coeff in self.terms.items():
            e = exps[var_index]
            if e == 0:
                continue
            shifted = exps[:var_index] + (e - 1,) + exps[var_index + 1 :]
            terms[shifted] = coeff * e
        return Polynomial._raw(self.vars, terms, self.laurent)

    def __str__(self) -> str:
        return poly_to_text(self)

    def __repr__(self) -> str:
        return f"<Polynomial {poly_to_text(self)}>"


def _divides(a: Exponents, b: Exponents) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mono_times(p: Polynomial, coeff: Fraction, exps: Exponents) -> Iterable[tuple[Exponents, Fraction]]:
    for e, c in p.terms.items():
        yield tuple(x + y for x, y in zip(e, exps)), c * coeff


def _divide_impl(f, divisors, order, want_quotients):
    lead = [g.leading_term(order) for g in divisors]
    quotients = [dict() for _ in divisors] if want_quotients else None
    remainder: dict[Exponents, Fraction] = {}
    work = dict(f.terms)
    while work:
        exps = max(work, key=order.key)
        coeff = work[exps]
        for i, (g_exps, g_coeff) in enumerate(lead):
            if _divides(g_exps, exps):
                q_exps = tuple(a - b for a, b in zip(exps, g_exps))
                q_coeff = coeff / g_coeff
                if want_quotients:
                    quotients[i][q_exps] = quotients[i].get(q_exps, 0) + q_coeff
                for t_exps, t_coeff in _mono_times(divisors[i], q_coeff, q_exps):
                    acc = work.get(t_exps, 0) - t_coeff
                    if acc:
                        work[t_exps] = acc
                    else:
                        work.pop(t_exps, None)
                break
        else:
            remainder[exps] = coeff
            del work[exps]
    rem = Polynomial._raw(f.vars, remainder, False)
    if not want_quotients:
        return rem
    qs = [Polynomial._raw(f.vars, {e: c for e, c in q.items() if c}, False) for q in quotients]
    return qs, rem


def _check_division_args(f, divisors):
    if not divisors:
        raise ValueError("empty divisor list")
    if f.laurent or any(g.laurent for g in divisors):
        raise ValueError("Laurent input; clear denominators first")
    for g in divisors:
        if g.vars != f.vars:
            raise ValueError("divisor over a different variable list")
        if not g.terms:
            raise ValueError("zero divisor")


def multivariate_divide(
    f: Polynomial, divisors: Sequence[Polynomial], order: MonomialOrder
) -> tuple[list[Polynomial], Polynomial]:
    """Divide ``f`` by an ordered list of divisors.

    Returns ``(quotients, remainder)`` with ``f == sum(q*g) + remainder``
    exactly, and no remainder term divisible by any divisor's leading term.
    """
    divisors = list(divisors)
    _check_division_args(f, divisors)
    return _divide_impl(f, divisors, order, True)


def normal_form(f: Polynomial, divisors: Sequence[Polynomial], order: MonomialOrder) -> Polynomial:
    """Remainder of ``f`` on division by ``divisors`` (quotients discarded)."""
    divisors = list(divisors)
    _check_division_args(f, divisors)
    return _divide_impl(f, divisors, order, False)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    """S-polynomial: cancel the leading terms of ``f`` and ``g`` against their lcm."""
    if f.vars != g.vars:
        raise ValueError("polynomials are over different variable lists")
    (fe, fc), (ge, gc) = f.leading_term(order), g.leading_term(order)
    lcm = tuple(max(a, b) for a, b in zip(fe, ge))
    terms = dict(_mono_times(f, 1 / fc, tuple(l - a for l, a in zip(lcm, fe))))
    for exps, coeff in _mono_times(g, 1 / gc, tuple(l - b for l, b in zip(lcm, ge))):
        acc = terms.get(exps, 0) - coeff
        if acc:
            terms[exps] = acc
        else:
            terms.pop(exps, None)
    return Polynomial._raw(f.vars, terms, False)


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis: monic elements, no element's term divisible
    by another element's leading term, sorted ascending by leading term."""

    basis: tuple[Polynomial, ...]
    order: MonomialOrder

    def normal_form(self, f: Polynomial) -> Polynomial:
        if not self.basis:
            return f
        return normal_form(f, self.basis, self.order)

    def reduces_to_zero(self, f: Polynomial) -> bool:
        if not f.terms:
            return True
        return not self.normal_form(f).terms


def buchberger(generators: Sequence[Polynomial], order: MonomialOrder) -> GroebnerBasis:
    """Buchberger's algorithm with the normal selection strategy.

    Pairs are taken by smallest leading-term lcm; the coprime-lcm and chain
    criteria prune pairs before any reduction.  The returned basis is fully
    inter-reduced.
    """
    gens = [g for g in generators if g.terms]
    if any(g.laurent and any(e < 0 for exps in g.terms for e in exps) for g in gens):
        raise ValueError("Laurent input; clear denominators first")
    if not gens:
        return GroebnerBasis((), order)
    vars0 = gens[0].vars
    for g in gens:
        if g.vars != vars0:
            raise ValueError("generators over different variable lists")

    basis: list[Polynomial] = []
    lead: list[Exponents] = []
    for g in gens:
        m = g.monic(order)
        if m not in basis:
            basis.append(m)
            lead.append(m.leading_term(order)[0])

    pairs = {(i, j) for j in range(len(basis)) for i in range(j)}

    def lcm_of(i: int, j: int) -> Exponents:
        return tuple(max(a, b) for a, b in zip(lead[i], lead[j]))

    while pairs:
        i, j = min(pairs, key=lambda ij: order.key(lcm_of(*ij)))
        pairs.remove((i, j))
        lcm = lcm_of(i, j)
        if lcm == tuple(a + b for a, b in zip(lead[i], lead[j])):
            continue  # coprime leading terms: S-polynomial reduces to zero
        chain = False
        for k in range(len(basis)):
            if k in (i, j) or not _divides(lead[k], lcm):
                continue
            ik = (min(i, k), max(i, k))
            jk = (min(j, k), max(j, k))
            if ik not in pairs and jk not in pairs:
                chain = True
                break
        if chain:
            continue
        s = s_polynomial(basis[i], basis[j], order)
        r = _divide_impl(s, basis, order, False) if s.terms else s
        if r.terms:
            r = r.monic(order)
            basis.append(r)
            lead.append(r.leading_term(order)[0])
            t = len(basis) - 1
            pairs.update((k, t) for k in range(t))

    # minimalize: strike elements whose leading term another's divides
    keep = []
    for i in range(len(basis)):
        redundant = False
        for j in range(len(basis)):
            if i == j:
                continue
            if _divides(lead[j], lead[i]) and (lead[j] != lead[i] or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(i)

    # tail-reduce every survivor against the others
    reduced = []
    kept = [basis[i] for i in keep]
    for idx, g in enumerate(kept):
        others = kept[:idx] + kept[idx + 1 :]
        r = _divide_impl(g, others, order, False) if others else g
        reduced.append(r.monic(order))

    reduced.sort(key=lambda p: order.key(p.leading_term(order)[0]))
    return GroebnerBasis(tuple(reduced), order)


def laurent_clear(f: Polynomial) -> tuple[Exponents, Polynomial]:
    """Multiply through by the smallest monomial making all exponents nonnegative.

    Returns ``(multiplier, g)`` where ``multiplier[k]`` is the power of the
    k-th variable applied and ``g`` is the ordinary polynomial.  Positive
    points keep their zero/nonzero status since the multiplier never
    vanishes on the open orthant.
    """
    n = len(f.vars)
    if not f.terms:
        return (0,) * n, Polynomial.zero(f.vars)
    shift = tuple(
        max(0, -min(exps[k] for exps in f.terms)) for k in range(n)
    )
    if not any(shift):
        return shift, Polynomial._raw(f.vars, dict(f.terms), False)
    terms = {
        tuple(e + s for e, s in zip(exps, shift)): coeff for exps, coeff in f.terms.items()
    }
    return shift, Polynomial._raw(f.vars, terms, False)


def poly_to_text(f: Polynomial, order: MonomialOrder = GREVLEX) -> str:
    """Render in the term grammar, e.g. ``3/2*t1^2*t2^-1 - 1``.

    Terms are sorted descending under ``order``; the coefficient is omitted
    when it is +-1 and at least one variable appears.
    """
    if not f.terms:
        return "0"
    items = sorted(f.terms.items(), key=lambda t: order.key(t[0]), reverse=True)
    parts = []
    for idx, (exps, coeff) in enumerate(items):
        negative = coeff < 0
        magnitude = -coeff if negative else coeff
        factors = []
        for name, e in zip(f.vars, exps):
            if e == 0:
                continue
            factors.append(name if e == 1 else f"{name}^{e}")
        if not factors or magnitude != 1:
            factors.insert(0, str(magnitude))
        body = "*".join(factors)
        if idx == 0:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(("- " if negative else "+ ") + body)
    return " ".join(parts)


_TOKEN_RE = re.compile(
    r"""\s*(?:
        (?P<coef>\d+(?:/\d+)?)
      | (?P<var>[A-Za-z_]\w*)(?:\^(?P<exp>-?\d+))?
      | (?P<op>[+*-])
    )""",
    re.VERBOSE,
)


def parse_poly(text: str, vars: Sequence[str], laurent: bool = False) -> Polynomial:
    """Parse the term grammar produced by :func:`poly_to_text`.

    Round-trips bit-exactly: ``parse_poly(poly_to_text(f), f.vars, f.laurent) == f``.
    """
    names = tuple(vars)
    index = {name: i for i, name in enumerate(names)}

    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ValueError(f"cannot parse polynomial at position {pos}: {text[pos:pos + 12]!r}")
        tokens.append(m)
        pos = m.end()
    if not tokens:
        raise ValueError("empty polynomial text")

    terms: dict[Exponents, Fraction] = {}
    k = 0
    first = True
    while k < len(tokens):
        sign = 1
        op = tokens[k].group("op")
        if op in ("+", "-"):
            if op == "-":
                sign = -1
            k += 1
            if k >= len(tokens):
                raise ValueError("dangling operator at end of polynomial text")
        elif not first:
            raise ValueError("missing +/- between terms")

        coeff = None
        exps = [0] * len(names)
        while True:
            tok = tokens[k]
            if tok.group("coef"):
                if coeff is not None or any(exps):
                    raise ValueError("coefficient must lead its term")
                coeff = Fraction(tok.group("coef"))
            elif tok.group("var"):
                name = tok.group("var")
                if name not in index:
                    raise ValueError(f"unknown variable {name!r}")
                e = int(tok.group("exp") or 1)
                if e < 0 and not laurent:
                    raise ValueError("negative exponent outside Laurent mode")
                exps[index[name]] += e
            else:
                raise ValueError("expected coefficient or variable")
            k += 1
            if k < len(tokens) and tokens[k].group("op") == "*":
                k += 1
                if k >= len(tokens):
                    raise ValueError("dangling '*' at end of polynomial text")
                continue
            break

        value = (coeff if coeff is not None else Fraction(1)) * sign
        key = tuple(exps)
        terms[key] = terms.get(key, Fraction(0)) + value
        first = False

    return Polynomial(names, terms, laurent)
