"""Exact arithmetic in real algebraic number fields Q[x]/(f).

A field is a monic irreducible polynomial over Q together with an
isolating rational interval that designates one real root as the
embedding.  Elements are reduced coefficient vectors of length deg(f);
all arithmetic is exact.  Sign determination is symbolic-first (the
zero element is the zero vector) and otherwise uses exact interval
arithmetic, bisecting the generator's isolating interval until the
image interval excludes zero.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .errors import DivisionByZero, FieldMismatch, NotIrreducible, NotIsolating

Rat = Fraction


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q, coefficients ascending


def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _padd(p, q):
    n = max(len(p), len(q))
    out = [0] * n
    for i, c in enumerate(p):
        out[i] = out[i] + c
    for i, c in enumerate(q):
        out[i] = out[i] + c
    return _trim(out)


def _pneg(p):
    return [-c for c in p]


def _pmul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] += a * b
    return _trim(out)


def _pdivmod(p, q):
    """Quotient and remainder in Q[x]; q must be nonzero."""
    p = [Rat(c) for c in p]
    q = [Rat(c) for c in q]
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    quo = [Rat(0)] * max(0, len(p) - len(q) + 1)
    lead = q[-1]
    while len(p) >= len(q) and _trim(p):
        shift = len(p) - len(q)
        c = p[-1] / lead
        quo[shift] = c
        for i, b in enumerate(q):
            p[shift + i] -= c * b
        _trim(p)
    return _trim(quo), p


def _peval(p, x):
    acc = Rat(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _pderiv(p):
    return _trim([i * c for i, c in enumerate(p)][1:])


def _pgcd(p, q):
    a, b = list(p), list(q)
    while _trim(b):
        a, b = b, _pdivmod(a, b)[1]
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _pxgcd(p, q):
    """Extended gcd: returns (g, u, v) with u*p + v*q = g."""
    a, b = list(p), list(q)
    ua, va = [Rat(1)], []
    ub, vb = [], [Rat(1)]
    while _trim(b):
        quo, rem = _pdivmod(a, b)
        a, b = b, rem
        ua, ub = ub, _padd(ua, _pneg(_pmul(quo, ub)))
        va, vb = vb, _padd(va, _pneg(_pmul(quo, vb)))
    return a, ua, va


def _sign_of(x):
    return (x > 0) - (x < 0)


def _sturm_count(poly, lo, hi):
    """Number of distinct real roots of poly in the open interval (lo, hi).

    Requires poly(lo) != 0 and poly(hi) != 0.
    """
    chain = [list(poly), _pderiv(poly)]
    while _trim(chain[-1]) and len(chain[-1]) > 1:
        rem = _pdivmod(chain[-2], chain[-1])[1]
        chain.append(_pneg(rem))
    if chain[-1] == []:
        chain.pop()

    def variations(x):
        signs = [_sign_of(_peval(p, x)) for p in chain]
        signs = [s for s in signs if s != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    return variations(lo) - variations(hi)


# ---------------------------------------------------------------------------
# irreducibility over Q


def _to_monic_int(poly):
    """Substitute x -> y/d so that a monic rational poly becomes monic integral."""
    d = 1
    for c in poly:
        d = d * Rat(c).denominator // math.gcd(d, Rat(c).denominator)
    n = len(poly) - 1
    out = []
    for k, c in enumerate(poly):
        v = Rat(c) * d ** (n - k)
        assert v.denominator == 1
        out.append(int(v))
    return out


def _int_roots_candidates(poly):
    """Rational root candidates p/q of an integer polynomial."""
    a0 = poly[0]
    an = poly[-1]
    if a0 == 0:
        yield Rat(0)
        return
    ps = [d for d in range(1, abs(a0) + 1) if a0 % d == 0]
    qs = [d for d in range(1, abs(an) + 1) if an % d == 0]
    for p in ps:
        for q in qs:
            yield Rat(p, q)
            yield Rat(-p, q)


def _durand_kerner(poly):
    """All complex roots of a monic integer polynomial, float precision."""
    n = len(poly) - 1
    coeffs = [float(c) for c in poly]

    def f(z):
        acc = 0j
        for c in reversed(coeffs):
            acc = acc * z + c
        return acc

    radius = 1.0 + max(abs(c) for c in coeffs[:-1]) if n > 0 else 1.0
    roots = [(0.4 + 0.9j) ** k * radius for k in range(1, n + 1)]
    for _ in range(400):
        shift = 0.0
        new = []
        for i, z in enumerate(roots):
            denom = 1.0 + 0j
            for j, w in enumerate(roots):
                if i != j:
                    denom *= z - w
            delta = f(z) / denom if denom != 0 else 0j
            new.append(z - delta)
            shift = max(shift, abs(delta))
        roots = new
        if shift < 1e-14:
            break
    return roots


def _is_irreducible(poly):
    """Exact irreducibility over Q for a monic squarefree polynomial.

    Rational-root test decides degrees 2 and 3.  For higher degrees,
    float roots guide a bounded factor-combination search whose hits
    are confirmed (or refuted) by exact division, so the verdict is
    exact for any factor that the float roots resolve; the designated
    use is small minimal polynomials of 2cos(pi/m), whose roots are
    well separated.
    """
    n = len(poly) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    ipoly = _to_monic_int(poly)
    for r in _int_roots_candidates(ipoly):
        if _peval(ipoly, r) == 0:
            return False
    if n <= 3:
        return True
    roots = _durand_kerner(ipoly)
    for size in range(2, n // 2 + 1):
        for subset in itertools.combinations(range(n), size):
            cand = [1.0 + 0j]
            for i in subset:
                cand = [
                    (cand[k - 1] if k > 0 else 0) - roots[i] * (cand[k] if k < len(cand) else 0)
                    for k in range(len(cand) + 1)
                ]
            # cand holds the candidate factor, descending; round to integers
            coeffs = []
            ok = True
            for z in cand:
                if abs(z.imag) > 1e-2 or abs(z.real - round(z.real)) > 1e-2:
                    ok = False
                    break
                coeffs.append(int(round(z.real)))
            if not ok:
                continue
            cand_poly = list(reversed(coeffs))
            if len(_trim(list(cand_poly))) - 1 != size:
                continue
            quo, rem = _pdivmod(ipoly, cand_poly)
            if not rem and all(Rat(c).denominator == 1 for c in quo):
                return False
    return True


# ---------------------------------------------------------------------------
# fields and elements


class NumberField:
    """Handle for Q[x]/(minpoly) with a designated real embedding."""

    __slots__ = (
        "minpoly", "lo", "hi", "gen_name", "degree",
        "_red", "_rlo", "_rhi", "zero", "one", "gen",
    )

    def __init__(self, minpoly, interval, gen_name="g"):
        minpoly = tuple(Rat(c) for c in minpoly)
        if len(minpoly) < 2:
            raise NotIrreducible("defining polynomial must have positive degree")
        if minpoly[-1] != 1:
            raise ValueError("defining polynomial must be monic")
        g = _pgcd(list(minpoly), _pderiv(list(minpoly)))
        if len(g) > 1:
            raise NotIrreducible("defining polynomial is not squarefree")
        if not _is_irreducible(list(minpoly)):
            raise NotIrreducible("defining polynomial is reducible over Q")
        lo, hi = Rat(interval[0]), Rat(interval[1])
        if not lo < hi:
            raise NotIsolating("empty interval")
        if _peval(list(minpoly), lo) == 0 or _peval(list(minpoly), hi) == 0:
            raise NotIsolating("interval endpoint is a root")
        if _sign_of(_peval(list(minpoly), lo)) * _sign_of(_peval(list(minpoly), hi)) >= 0:
            raise NotIsolating("no sign change over the interval")
        if _sturm_count(list(minpoly), lo, hi) != 1:
            raise NotIsolating("interval contains more than one root")

        self.minpoly = minpoly
        self.lo, self.hi = lo, hi
        self.gen_name = gen_name
        self.degree = len(minpoly) - 1
        n = self.degree
        # reduction rows: x^(n+k) mod minpoly for k = 0..n-2
        red = []
        cur = [-c for c in minpoly[:-1]]  # x^n
        red.append(tuple(cur))
        for _ in range(n - 2):
            cur = [Rat(0)] + cur
            top = cur[n] if len(cur) > n else Rat(0)
            cur = cur[:n]
            if top:
                cur = [a + top * b for a, b in zip(cur, red[0])]
            red.append(tuple(cur))
        self._red = tuple(red)
        self._rlo, self._rhi = lo, hi
        self.zero = NumberFieldElement(self, (Rat(0),) * n)
        self.one = NumberFieldElement(self, (Rat(1),) + (Rat(0),) * (n - 1))
        if n == 1:
            self.gen = NumberFieldElement(self, (-minpoly[0],))
        else:
            self.gen = NumberFieldElement(self, (Rat(0), Rat(1)) + (Rat(0),) * (n - 2))

    def __repr__(self):
        return f"NumberField(deg={self.degree}, gen={self.gen_name})"

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, NumberField)
            and self.minpoly == other.minpoly
            and (self.lo, self.hi) == (other.lo, other.hi)
        )

    def __hash__(self):
        return hash((self.minpoly, self.lo, self.hi))

    def element(self, coeffs):
        coeffs = [Rat(c) for c in coeffs]
        if len(coeffs) > self.degree:
            raise ValueError("coefficient vector too long")
        coeffs += [Rat(0)] * (self.degree - len(coeffs))
        return NumberFieldElement(self, tuple(coeffs))

    def coerce(self, x):
        if isinstance(x, NumberFieldElement):
            if x.field is self or x.field == self:
                return x
            raise FieldMismatch(f"{x!r} not in {self!r}")
        if isinstance(x, (int, Fraction)):
            return NumberFieldElement(
                self, (Rat(x),) + (Rat(0),) * (self.degree - 1))
        raise TypeError(f"cannot coerce {type(x).__name__} into {self!r}")

    def _refine(self):
        """One bisection step of the generator's isolating interval."""
        mid = (self._rlo + self._rhi) / 2
        mp = list(self.minpoly)
        if _sign_of(_peval(mp, self._rlo)) * _sign_of(_peval(mp, mid)) < 0:
            self._rhi = mid
        else:
            self._rlo = mid

    def _mul_coeffs(self, a, b):
        n = self.degree
        if n == 1:
            return (a[0] * b[0],)
        prod = [Rat(0)] * (2 * n - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
        out = prod[:n]
        for k in range(n, 2 * n - 1):
            c = prod[k]
            if c:
                row = self._red[k - n]
                for i in range(n):
                    if row[i]:
                        out[i] += c * row[i]
        return tuple(out)


class NumberFieldElement:
    """Element of a NumberField: reduced coefficient vector in the generator."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def __repr__(self):
        name = self.field.gen_name
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append(f"{c}*{name}" if c != 1 else name)
            else:
                parts.append(f"{c}*{name}^{k}" if c != 1 else f"{name}^{k}")
        return " + ".join(parts) if parts else "0"

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def __eq__(self, other):
        if isinstance(other, NumberFieldElement):
            if self.field is not other.field and self.field != other.field:
                return False
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and all(c == 0 for c in self.coeffs[1:])
        return NotImplemented

    def __bool__(self):
        return any(c != 0 for c in self.coeffs)

    def _other(self, other):
        if isinstance(other, NumberFieldElement):
            if self.field is not other.field and self.field != other.field:
                raise FieldMismatch("operands from different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.coerce(other)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return NumberFieldElement(
            self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return NumberFieldElement(
            self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return NumberFieldElement(
            self.field, tuple(b - a for a, b in zip(self.coeffs, o.coeffs)))

    def __neg__(self):
        return NumberFieldElement(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            return NumberFieldElement(
                self.field, tuple(a * other for a in self.coeffs))
        return NumberFieldElement(
            self.field, self.field._mul_coeffs(self.coeffs, o.coeffs))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NumberFieldElement(
                self.field, tuple(a * other for a in self.coeffs))
        return NotImplemented

    def inverse(self):
        if not self:
            raise DivisionByZero("inverse of zero")
        n = self.field.degree
        if n == 1:
            return NumberFieldElement(self.field, (1 / self.coeffs[0],))
        g, u, _ = _pxgcd(_trim(list(self.coeffs)), list(self.field.minpoly))
        assert len(g) == 1, "element not invertible: minpoly not irreducible?"
        inv = [c / g[0] for c in u]
        inv = inv[:n] + [Rat(0)] * (n - len(inv))
        # u may have degree >= n only in degenerate cases; reduce defensively
        if len(u) > n:
            acc = self.field.zero
            for k in reversed(range(len(u))):
                acc = acc * self.field.gen + self.field.coerce(Rat(u[k] / g[0]))
            return acc
        return NumberFieldElement(self.field, tuple(inv))

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if not o:
            raise DivisionByZero("division by zero")
        if isinstance(other, (int, Fraction)):
            return NumberFieldElement(
                self.field, tuple(a / other for a in self.coeffs))
        return self * o.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.field.coerce(other) / self
        return NotImplemented

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def sign(self):
        """Exact sign under the designated embedding: -1, 0 or +1."""
        if not self:
            return 0
        f = self.field
        if f.degree == 1:
            return _sign_of(self.coeffs[0])
        coeffs = self.coeffs
        for _ in range(100000):
            lo, hi = _interval_horner(coeffs, f._rlo, f._rhi)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            f._refine()
        raise RuntimeError("interval refinement failed to converge")

    def __lt__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __le__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() <= 0

    def __gt__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() > 0

    def __ge__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() >= 0

    def is_rational(self):
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coeffs[0]

    def to_float(self):
        """Float approximation via interval refinement of the embedding."""
        f = self.field
        if f.degree == 1:
            return float(self.coeffs[0])
        for _ in range(200):
            lo, hi = _interval_horner(self.coeffs, f._rlo, f._rhi)
            if hi - lo < Rat(1, 2 ** 56):
                break
            f._refine()
        return float((lo + hi) / 2)


def _interval_horner(coeffs, lo, hi):
    """Exact interval evaluation of sum coeffs[k] * x^k over x in [lo, hi]."""
    rlo = rhi = Rat(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        p1, p2, p3, p4 = rlo * lo, rlo * hi, rhi * lo, rhi * hi
        rlo = min(p1, p2, p3, p4) + c
        rhi = max(p1, p2, p3, p4) + c
    return rlo, rhi


# ---------------------------------------------------------------------------
# public constructors and helpers

_FIELD_CACHE = {}


def field_create(minpoly, interval, gen_name="g"):
    """Create (or fetch the cached) field Q[x]/(minpoly) with the given embedding."""
    key = (tuple(Rat(c) for c in minpoly), Rat(interval[0]), Rat(interval[1]))
    cached = _FIELD_CACHE.get(key)
    if cached is not None:
        return cached
    field = NumberField(minpoly, interval, gen_name)
    _FIELD_CACHE[key] = field
    return field


def rational_field():
    """Q itself, presented as the degenerate field Q[x]/(x - 1)."""
    return field_create([-1, 1], (0, 2), gen_name="one")


def sign(a):
    return a.sign()


def arith(a, b, op):
    """Dispatch form of field arithmetic: op in {add, sub, mul, div}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def cyclotomic(n):
    """Integer coefficients (ascending) of the n-th cyclotomic polynomial."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            quo, rem = _pdivmod(poly, cyclotomic(d))
            assert not rem
            poly = [int(c) for c in quo]
    return poly


def cos_minpoly(m):
    """Minimal polynomial (ascending coefficients) of 2*cos(pi/m) over Q.

    Derived from the 2m-th cyclotomic polynomial: that polynomial is
    palindromic of even degree 2k, and equals x^k * q(x + 1/x) for the
    returned q of degree k = phi(2m)/2.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if m == 1:
        return [Rat(2), Rat(1)]  # 2cos(pi) = -2
    phi = cyclotomic(2 * m)
    k = (len(phi) - 1) // 2
    assert len(phi) - 1 == 2 * k and phi == phi[::-1]
    # x^j + x^-j as a polynomial v_j in y = x + 1/x
    v_prev, v_cur = [2], [0, 1]
    q = [phi[k]] + [0] * k
    for j in range(1, k + 1):
        vj = v_cur if j == 1 else None
        if j >= 2:
            vj = _padd(_pmul([0, 1], v_cur), _pneg(v_prev))
            v_prev, v_cur = v_cur, vj
        else:
            vj = v_cur
        coef = phi[k + j]
        if coef:
            q = _padd(q, [coef * c for c in vj])
    return [Rat(c) for c in q]


def two_cos_field(m):
    """The field Q(2*cos(pi/m)) with the embedding at the largest root."""
    name = "tau" if m == 5 else f"c{m}"
    mp = cos_minpoly(m)
    if len(mp) == 2:
        root = -mp[0]
        return field_create(mp, (root - 1, root + 1), gen_name=name)
    approx = Fraction(2 * math.cos(math.pi / m)).limit_denominator(10 ** 9)
    width = Rat(1, 16)
    while _sturm_count([Rat(c) for c in mp], approx - width, approx + width) != 1:
        width /= 2
        if width < Rat(1, 2 ** 60):
            raise NotIsolating("failed to isolate 2cos(pi/m)")
    return field_create(mp, (approx - width, approx + width), gen_name=name)


def tau_field():
    """Q(tau) for the golden ratio tau = (sqrt(5)+1)/2 = 2*cos(pi/5)."""
    return field_create([-1, -1, 1], (1, 2), gen_name="tau")


def two_cos_multiple(k, c):
    """2*cos(k*phi) as a polynomial in c = 2*cos(phi), by the angle-multiple recurrence."""
    field = c.field
    if k < 0:
        k = -k
    prev = field.coerce(2)
    if k == 0:
        return prev
    cur = c
    for _ in range(k - 1):
        prev, cur = cur, c * cur - prev
    return cur


def embed(a, target, gen_image):
    """Map a into target by sending a's generator to gen_image (Horner)."""
    acc = target.zero
    for c in reversed(a.coeffs):
        acc = acc * gen_image + target.coerce(c)
    return acc
