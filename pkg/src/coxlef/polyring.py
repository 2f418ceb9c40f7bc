"""Sparse multivariate polynomials over a NumberField, the group action
by linear substitution, and fundamental invariants per Coxeter type.

Monomials are exponent tuples; the shared term order everywhere is
graded reverse lexicographic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import BudgetExceeded, DimensionMismatch, UnsupportedType
from .numfield import NumberFieldElement


def grevlex_key(monom):
    """Sort key: ascending order of this key is ascending grevlex order."""
    return (sum(monom), tuple(-e for e in reversed(monom)))


def monomials_of_degree(nvars, d):
    """All exponent tuples of total degree d, ascending grevlex."""
    if nvars == 1:
        return [(d,)]
    out = []
    for bars in itertools.combinations(range(d + nvars - 1), nvars - 1):
        prev = -1
        m = []
        for b in bars:
            m.append(b - prev - 1)
            prev = b
        m.append(d + nvars - 2 - prev)
        out.append(tuple(m))
    out.sort(key=grevlex_key)
    return out


class Polynomial:
    """Immutable-by-convention sparse polynomial with NumberFieldElement coefficients."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field, nvars, terms=None):
        self.field = field
        self.nvars = nvars
        self.terms = {} if terms is None else terms

    @classmethod
    def from_terms(cls, field, nvars, items):
        terms = {}
        for monom, coeff in items:
            c = coeff if isinstance(coeff, NumberFieldElement) else field.coerce(coeff)
            if monom in terms:
                c = terms[monom] + c
            if c:
                terms[monom] = c
            elif monom in terms:
                del terms[monom]
        return cls(field, nvars, terms)

    @classmethod
    def zero(cls, field, nvars):
        return cls(field, nvars, {})

    @classmethod
    def constant(cls, field, nvars, c):
        c = field.coerce(c)
        return cls(field, nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def variable(cls, field, nvars, i):
        monom = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(field, nvars, {monom: field.one})

    @classmethod
    def linear_form(cls, field, coeffs):
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            c = c if isinstance(c, NumberFieldElement) else field.coerce(c)
            if c:
                terms[tuple(1 if j == i else 0 for j in range(n))] = c
        return cls(field, n, terms)

    @classmethod
    def monomial(cls, field, monom, coeff=1):
        c = coeff if isinstance(coeff, NumberFieldElement) else field.coerce(coeff)
        return cls(field, len(monom), {tuple(monom): c} if c else {})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction, NumberFieldElement)):
            return self == Polynomial.constant(self.field, self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for monom in sorted(self.terms, key=grevlex_key, reverse=True):
            c = self.terms[monom]
            vars_part = "*".join(
                f"x{i + 1}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(monom) if e
            )
            cs = repr(c)
            if " " in cs:
                cs = f"({cs})"
            bits.append(f"{cs}*{vars_part}" if vars_part else cs)
        return " + ".join(bits)

    def __add__(self, other):
        if isinstance(other, (int, Fraction, NumberFieldElement)):
            other = Polynomial.constant(self.field, self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        terms = dict(self.terms)
        for monom, c in other.terms.items():
            if monom in terms:
                s = terms[monom] + c
                if s:
                    terms[monom] = s
                else:
                    del terms[monom]
            else:
                terms[monom] = c
        return Polynomial(self.field, self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(
            self.field, self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, NumberFieldElement)):
            other = Polynomial.constant(self.field, self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, NumberFieldElement)):
            c = self.field.coerce(other)
            if not c:
                return Polynomial.zero(self.field, self.nvars)
            return Polynomial(
                self.field, self.nvars,
                {m: v * c for m, v in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                c = c1 * c2
                if m in out:
                    c = out[m] + c
                if c:
                    out[m] = c
                elif m in out:
                    del out[m]
        return Polynomial(self.field, self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.constant(self.field, self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self):
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def homogeneous_component(self, d):
        return Polynomial(
            self.field, self.nvars,
            {m: c for m, c in self.terms.items() if sum(m) == d})

    def coefficient(self, monom):
        return self.terms.get(tuple(monom), self.field.zero)

    def leading_monomial(self):
        if not self.terms:
            return None
        return max(self.terms, key=grevlex_key)

    def evaluate(self, point):
        if len(point) != self.nvars:
            raise DimensionMismatch("evaluation point has wrong length")
        point = [p if isinstance(p, NumberFieldElement) else self.field.coerce(p)
                 for p in point]
        acc = self.field.zero
        for monom, c in self.terms.items():
            val = c
            for x, e in zip(point, monom):
                for _ in range(e):
                    val = val * x
            acc = acc + val
        return acc

    def derivative(self, i):
        out = {}
        for monom, c in self.terms.items():
            e = monom[i]
            if e:
                m = list(monom)
                m[i] = e - 1
                out[tuple(m)] = c * e
        return Polynomial(self.field, self.nvars, out)

    def substitute(self, images):
        """Substitute variable i by the degree-1 polynomial images[i]."""
        if len(images) != self.nvars:
            raise DimensionMismatch("one image per variable required")
        power_cache = [{0: Polynomial.constant(self.field, self.nvars, 1)}
                       for _ in range(self.nvars)]

        def power(i, e):
            cache = power_cache[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * images[i]
            return cache[e]

        acc = Polynomial.zero(self.field, self.nvars)
        for monom, c in self.terms.items():
            term = Polynomial.constant(self.field, self.nvars, c)
            for i, e in enumerate(monom):
                if e:
                    term = term * power(i, e)
            acc = acc + term
        return acc


def act(matrix, p):
    """Action of a group element on a polynomial: substitute x -> g^(-1) x.

    The matrices of reflection groups in the standard realizations are
    orthogonal with respect to the invariant form, so this is a left
    action and a ring homomorphism preserving degree.
    """
    n = p.nvars
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise DimensionMismatch("matrix size does not match variable count")
    inv = linalg.inverse([list(r) for r in matrix], p.field)
    images = [
        Polynomial.linear_form(p.field, [inv[j][k] for k in range(n)])
        for j in range(n)
    ]
    return p.substitute(images)


@dataclass(frozen=True)
class InvariantSystem:
    """Fundamental invariants: one homogeneous generator per simple root."""

    polys: tuple
    degrees: tuple

    def __iter__(self):
        return iter(self.polys)


def _power_sum(field, nvars, var_range, k):
    terms = {}
    for i in var_range:
        m = [0] * nvars
        m[i] = k
        terms[tuple(m)] = field.one
    return Polynomial(field, nvars, terms)


def _elementary_symmetric_squares(field, nvars, var_range, k):
    """Elementary symmetric polynomial e_k evaluated on the squares x_i^2."""
    terms = {}
    for subset in itertools.combinations(var_range, k):
        m = [0] * nvars
        for i in subset:
            m[i] = 2
        terms[tuple(m)] = field.one
    return Polynomial(field, nvars, terms)


def _dihedral_high_invariant(field, nvars, offset, m):
    """Degree-m invariant of the dihedral realization, integer coefficients.

    With mirrors normal to the rays at angles k*pi/m, the invariant is
    the real part of (x+iy)^m for even m and the imaginary part for odd
    m (the other component is anti-invariant).
    """
    terms = {}
    start = 0 if m % 2 == 0 else 1
    for j in range(start, m + 1, 2):
        mono = [0] * nvars
        mono[offset] = m - j
        mono[offset + 1] = j
        coeff = (-1) ** ((j - start) // 2) * _binomial(m, j)
        terms[tuple(mono)] = field.coerce(coeff)
    return Polynomial(field, nvars, terms)


def _binomial(n, k):
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def _h3_invariant(field, nvars, offset, k, tau):
    """Sum over (i,j) in {(1,2),(2,3),(3,1)} of (t*xi + xj)^2k + (t*xi - xj)^2k."""
    acc = Polynomial.zero(field, nvars)
    for (i, j) in ((0, 1), (1, 2), (2, 0)):
        xi = Polynomial.variable(field, nvars, offset + i)
        xj = Polynomial.variable(field, nvars, offset + j)
        plus = xi * tau + xj
        minus = xi * tau - xj
        acc = acc + plus ** (2 * k) + minus ** (2 * k)
    return acc


def fundamental_invariants(rs):
    """Fundamental invariant system for a root system's standard realization."""
    field = rs.field
    nvars = rs.nvars
    polys = []
    degrees = []
    for block in rs.blocks:
        family, param, start = block.family, block.param, block.start
        if family == "A":
            rng = range(start, start + param + 1)
            for k in range(2, param + 2):
                polys.append(_power_sum(field, nvars, rng, k))
                degrees.append(k)
        elif family in ("B", "D"):
            rng = range(start, start + param)
            top = param if family == "B" else param - 1
            for k in range(1, top + 1):
                polys.append(_elementary_symmetric_squares(field, nvars, rng, k))
                degrees.append(2 * k)
            if family == "D":
                mono = [0] * nvars
                for i in rng:
                    mono[i] = 1
                polys.append(Polynomial(field, nvars, {tuple(mono): field.one}))
                degrees.append(param)
        elif family == "I2":
            polys.append(_power_sum_of_squares(field, nvars, start))
            degrees.append(2)
            polys.append(_dihedral_high_invariant(field, nvars, start, param))
            degrees.append(param)
        elif family == "H3":
            tau = block.gen2cos  # 2cos(pi/5) is the golden ratio
            for k in (1, 3, 5):
                polys.append(_h3_invariant(field, nvars, start, k, tau))
                degrees.append(2 * k)
        else:  # pragma: no cover
            raise UnsupportedType(f"no invariants for family {family}")
    return InvariantSystem(tuple(polys), tuple(degrees))


def _power_sum_of_squares(field, nvars, start):
    terms = {}
    for i in (start, start + 1):
        m = [0] * nvars
        m[i] = 2
        terms[tuple(m)] = field.one
    return Polynomial(field, nvars, terms)


def ideal_generators(rs):
    """Generators of the ideal of positive-degree invariants.

    For A-type blocks the ambient realization has one extra coordinate,
    so the degree-1 power sum joins the fundamental system.
    """
    inv = fundamental_invariants(rs)
    gens = list(inv.polys)
    for block in rs.blocks:
        if block.family == "A":
            rng = range(block.start, block.start + block.param + 1)
            gens.append(_power_sum(rs.field, rs.nvars, rng, 1))
    return gens


def reynolds(rs, p, subgroup=None):
    """Group average (1/#G) sum of g.p — the projection onto invariants."""
    group = subgroup if subgroup is not None else rs.group()
    n = len(group.elements)
    if n > 10 ** 4:
        raise BudgetExceeded(f"group of order {n} beyond averaging budget")
    acc = Polynomial.zero(p.field, p.nvars)
    for g in group.elements:
        acc = acc + act(g.matrix, p)
    return acc * Fraction(1, n)


def jacobian_nonzero(polys, nvars=None):
    """Whether the Jacobian of the system has full row rank.

    For a square system this is nonvanishing of the Jacobian
    determinant, hence algebraic independence.  A fixed rational
    evaluation point certifies full rank cheaply; only on failure is
    the symbolic minor computation performed.
    """
    polys = list(polys)
    if not polys:
        return True
    field = polys[0].field
    if nvars is None:
        nvars = polys[0].nvars
    jac = [[p.derivative(j) for j in range(nvars)] for p in polys]
    point = [field.coerce(Fraction(2 * j + 3, 2)) for j in range(nvars)]
    numeric = [[e.evaluate(point) for e in row] for row in jac]
    if linalg.rank(numeric, field) == len(polys):
        return True
    for cols in itertools.combinations(range(nvars), len(polys)):
        minor = [[jac[i][j] for j in cols] for i in range(len(polys))]
        if _poly_det(minor, field, nvars):
            return True
    return False


def _poly_det(matrix, field, nvars):
    """Cofactor-expansion determinant for small polynomial matrices."""
    n = len(matrix)
    if n == 0:
        return Polynomial.constant(field, nvars, 1)
    if n == 1:
        return matrix[0][0]
    acc = Polynomial.zero(field, nvars)
    for j in range(n):
        if not matrix[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = matrix[0][j] * _poly_det(minor, field, nvars)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc
