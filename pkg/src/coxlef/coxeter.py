"""Finite Coxeter group data: root systems in standard realizations,
reflection matrices, group enumeration with lengths, length generating
functions, and the reflection-fixing criterion for degree-one elements.

Supported irreducible types: A_n (n <= 4), B_n (n <= 3), D_n (n <= 4),
I2(m) (3 <= m <= 30) and H3; G2 is an alias of I2(6).  Direct products
are supported while the group order stays at desk scale (<= 10^4).

Realizations use exact coordinates over Q(2cos(pi/L)) for the least
common L the factors require, with the standard dot product as the
invariant form, so every reflection matrix is orthogonal.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import BudgetExceeded, DimensionMismatch, UnsupportedType
from .numfield import (
    NumberFieldElement,
    rational_field,
    two_cos_field,
    two_cos_multiple,
)

GROUP_ORDER_BUDGET = 10 ** 4

_KNOWN_UNSUPPORTED = {"E6", "E7", "E8", "F4", "H4"}


def _factorial(n):
    return math.factorial(n)


@dataclass(frozen=True)
class CoxeterType:
    """A product of irreducible factors, each a (family, parameter) pair."""

    factors: tuple

    def __post_init__(self):
        if not self.factors:
            raise UnsupportedType("empty Coxeter type")
        for family, param in self.factors:
            if family == "A":
                if not 1 <= param <= 4:
                    raise UnsupportedType(f"A{param} outside supported range A1..A4")
            elif family == "B":
                if not 2 <= param <= 3:
                    raise UnsupportedType(f"B{param} outside supported range B2..B3")
            elif family == "D":
                if not 2 <= param <= 4:
                    raise UnsupportedType(f"D{param} outside supported range D2..D4")
            elif family == "I2":
                if not 3 <= param <= 30:
                    raise UnsupportedType(f"I2({param}) outside supported range m=3..30")
            elif family == "H3":
                pass
            else:
                raise UnsupportedType(f"unsupported family {family}")
        if self.order() > GROUP_ORDER_BUDGET:
            raise UnsupportedType(
                f"group order {self.order()} exceeds budget {GROUP_ORDER_BUDGET}")

    @classmethod
    def parse(cls, text):
        parts = re.split(r"[x*]", text.strip())
        factors = []
        for part in parts:
            part = part.strip()
            if not part:
                raise UnsupportedType(f"cannot parse type {text!r}")
            if part.upper() in _KNOWN_UNSUPPORTED:
                raise UnsupportedType(f"type {part.upper()} is not supported")
            if part.upper() == "G2":
                factors.append(("I2", 6))
                continue
            if part.upper() == "H3":
                factors.append(("H3", 0))
                continue
            m = re.fullmatch(r"I2[:(]?(\d+)\)?", part, re.IGNORECASE)
            if m:
                factors.append(("I2", int(m.group(1))))
                continue
            m = re.fullmatch(r"([ABD])(\d+)", part, re.IGNORECASE)
            if m:
                factors.append((m.group(1).upper(), int(m.group(2))))
                continue
            raise UnsupportedType(f"cannot parse type {part!r}")
        return cls(tuple(factors))

    def order(self):
        n = 1
        for family, param in self.factors:
            if family == "A":
                n *= _factorial(param + 1)
            elif family == "B":
                n *= 2 ** param * _factorial(param)
            elif family == "D":
                n *= 2 ** (param - 1) * _factorial(param)
            elif family == "I2":
                n *= 2 * param
            elif family == "H3":
                n *= 120
        return n

    def num_reflections(self):
        n = 0
        for family, param in self.factors:
            if family == "A":
                n += param * (param + 1) // 2
            elif family == "B":
                n += param * param
            elif family == "D":
                n += param * (param - 1)
            elif family == "I2":
                n += param
            elif family == "H3":
                n += 15
        return n

    def rank(self):
        total = 0
        for family, param in self.factors:
            total += {"I2": 2, "H3": 3}.get(family, param)
        return total

    def __str__(self):
        bits = []
        for family, param in self.factors:
            if family == "H3":
                bits.append("H3")
            elif family == "I2":
                bits.append(f"I2({param})")
            else:
                bits.append(f"{family}{param}")
        return "x".join(bits)


@dataclass
class Block:
    """One irreducible factor inside the ambient coordinate space."""

    family: str
    param: int
    start: int
    dim: int
    gen2cos: object = None  # 2cos(pi/L_f) inside the shared field, if needed


@dataclass(frozen=True)
class GroupElement:
    matrix: tuple
    word: tuple
    length: int


@dataclass(frozen=True)
class GroupElementSet:
    elements: tuple
    index_of: dict
    length_census: tuple

    def __len__(self):
        return len(self.elements)


class RootSystem:
    """Exact realization of a finite Coxeter group's root system."""

    def __init__(self, ctype, field, nvars, blocks, simple_roots, positive_roots,
                 simple_indices, reflections, invariant_degrees, fundamental_weights):
        self.ctype = ctype
        self.field = field
        self.nvars = nvars
        self.blocks = blocks
        self.simple_roots = simple_roots
        self.positive_roots = positive_roots
        self.simple_indices = simple_indices
        self.reflections = reflections
        self.invariant_degrees = invariant_degrees
        self.fundamental_weights = fundamental_weights
        self._group = None
        self._root_index = {root: i for i, root in enumerate(positive_roots)}

    def __repr__(self):
        return f"RootSystem({self.ctype})"

    @property
    def rank(self):
        return len(self.simple_roots)

    @property
    def num_reflections(self):
        return len(self.positive_roots)

    def coerce_vector(self, vec):
        if len(vec) != self.nvars:
            raise DimensionMismatch(
                f"expected {self.nvars} coordinates, got {len(vec)}")
        return tuple(
            v if isinstance(v, NumberFieldElement) else self.field.coerce(v)
            for v in vec)

    def inner(self, u, v):
        return linalg.dot(list(u), list(v))

    def coroot_pairing(self, vec, root):
        """<vec, root^vee> = 2 (vec, root) / (root, root)."""
        return (2 * self.inner(vec, root)) / self.inner(root, root)

    def simple_reflection(self, i):
        return self.reflections[self.simple_indices[i]]

    def weight_combination(self, coeffs):
        """The vector sum of coeffs[i] * (i-th fundamental weight)."""
        if len(coeffs) != self.rank:
            raise DimensionMismatch("one coefficient per fundamental weight")
        out = [self.field.zero] * self.nvars
        for c, w in zip(coeffs, self.fundamental_weights):
            c = c if isinstance(c, NumberFieldElement) else self.field.coerce(c)
            for k in range(self.nvars):
                out[k] = out[k] + c * w[k]
        return tuple(out)

    def group(self):
        if self._group is None:
            self._group = enumerate_group(self)
        return self._group


def _reflection_matrix(field, nvars, beta):
    norm = linalg.dot(list(beta), list(beta))
    rows = []
    for i in range(nvars):
        row = []
        for j in range(nvars):
            e = field.one if i == j else field.zero
            row.append(e - beta[i] * beta[j] * (2 / norm))
        rows.append(tuple(row))
    return tuple(rows)


def _basis_vector(field, nvars, i, value=1):
    return tuple(
        field.coerce(value) if j == i else field.zero for j in range(nvars))


def _build_a_block(field, nvars, block):
    n, s = block.param, block.start
    simple = []
    for i in range(n):
        vec = [field.zero] * nvars
        vec[s + i] = field.one
        vec[s + i + 1] = -field.one
        simple.append(tuple(vec))
    positive = []
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            vec = [field.zero] * nvars
            vec[s + i] = field.one
            vec[s + j] = -field.one
            positive.append(tuple(vec))
    weights = []
    for i in range(1, n + 1):
        vec = [field.zero] * nvars
        for k in range(n + 1):
            base = Fraction(1, 1) if k < i else Fraction(0, 1)
            vec[s + k] = field.coerce(base - Fraction(i, n + 1))
        weights.append(tuple(vec))
    degrees = tuple(range(2, n + 2))
    return simple, positive, weights, degrees


def _build_b_block(field, nvars, block):
    n, s = block.param, block.start
    simple = []
    for i in range(n - 1):
        vec = [field.zero] * nvars
        vec[s + i] = field.one
        vec[s + i + 1] = -field.one
        simple.append(tuple(vec))
    simple.append(_basis_vector(field, nvars, s + n - 1))
    positive = []
    for i in range(n):
        for j in range(i + 1, n):
            for sign_j in (-1, 1):
                vec = [field.zero] * nvars
                vec[s + i] = field.one
                vec[s + j] = field.coerce(sign_j)
                positive.append(tuple(vec))
    for i in range(n):
        positive.append(_basis_vector(field, nvars, s + i))
    weights = []
    for i in range(1, n):
        vec = [field.zero] * nvars
        for k in range(i):
            vec[s + k] = field.one
        weights.append(tuple(vec))
    vec = [field.zero] * nvars
    for k in range(n):
        vec[s + k] = field.coerce(Fraction(1, 2))
    weights.append(tuple(vec))
    degrees = tuple(2 * k for k in range(1, n + 1))
    return simple, positive, weights, degrees


def _build_d_block(field, nvars, block):
    n, s = block.param, block.start
    simple = []
    for i in range(n - 1):
        vec = [field.zero] * nvars
        vec[s + i] = field.one
        vec[s + i + 1] = -field.one
        simple.append(tuple(vec))
    vec = [field.zero] * nvars
    vec[s + n - 2] = field.one
    vec[s + n - 1] = field.one
    simple.append(tuple(vec))
    positive = []
    for i in range(n):
        for j in range(i + 1, n):
            for sign_j in (-1, 1):
                vec = [field.zero] * nvars
                vec[s + i] = field.one
                vec[s + j] = field.coerce(sign_j)
                positive.append(tuple(vec))
    weights = []
    for i in range(1, n - 1):
        vec = [field.zero] * nvars
        for k in range(i):
            vec[s + k] = field.one
        weights.append(tuple(vec))
    for last_sign in (-1, 1):
        vec = [field.zero] * nvars
        for k in range(n - 1):
            vec[s + k] = field.coerce(Fraction(1, 2))
        vec[s + n - 1] = field.coerce(Fraction(last_sign, 2))
        weights.append(tuple(vec))
    degrees = tuple(2 * k for k in range(1, n)) + (n,)
    return simple, positive, weights, degrees


def _build_i2_block(field, nvars, block):
    m, s = block.param, block.start
    g = block.gen2cos  # 2cos(pi/2m)
    half = Fraction(1, 2)

    def beta(k):
        # beta(k*theta) with theta = pi/m: coordinates (cos, sin) over Q(g)
        cos_val = two_cos_multiple(2 * k, g) * half
        sin_val = two_cos_multiple(abs(m - 2 * k), g) * half
        vec = [field.zero] * nvars
        vec[s] = cos_val
        vec[s + 1] = sin_val
        return tuple(vec)

    positive = [beta(k) for k in range(m)]
    simple = [positive[0], positive[m - 1]]
    cos_theta = two_cos_multiple(2, g) * half
    sin_theta = two_cos_multiple(m - 2, g) * half
    inv_2sin = (2 * sin_theta).inverse()
    w1 = [field.zero] * nvars
    w1[s] = sin_theta * inv_2sin
    w1[s + 1] = cos_theta * inv_2sin
    w2 = [field.zero] * nvars
    w2[s + 1] = inv_2sin
    weights = [tuple(w1), tuple(w2)]
    degrees = (2, m)
    return simple, positive, weights, degrees


def _build_h3_block(field, nvars, block):
    s = block.start
    tau = block.gen2cos  # 2cos(pi/5), the golden ratio
    tau2 = tau * tau

    def vec3(a, b, c):
        out = [field.zero] * nvars
        out[s], out[s + 1], out[s + 2] = a, b, c
        return tuple(out)

    alpha1 = vec3(field.one, -tau, -tau2)
    alpha2 = vec3(field.zero, field.one, field.zero)
    alpha3 = vec3(field.zero, field.zero, field.one)
    simple = [alpha1, alpha2, alpha3]

    # all 15 mirrors carry a unit root; close the orbit of unit representatives
    inv_len1 = (2 * tau).inverse()
    seeds = [tuple(x * inv_len1 for x in alpha1), alpha2, alpha3]
    refls = [_reflection_matrix(field, nvars, a) for a in simple]
    seen = {}
    frontier = list(seeds)
    while frontier:
        new_frontier = []
        for v in frontier:
            key = _line_key(v, s)
            if key in seen:
                continue
            seen[key] = v
            for r in refls:
                new_frontier.append(tuple(linalg.mat_vec(list(r), list(v))))
        frontier = new_frontier
    assert len(seen) == 15, f"expected 15 mirrors, got {len(seen)}"

    # orient each representative to be a nonnegative combination of simple roots
    basis = [[simple[j][s + i] for j in range(3)] for i in range(3)]
    positive = []
    for key in sorted(seen, key=lambda k: tuple(c.coeffs for c in k)):
        v = seen[key]
        coeffs = linalg.solve(basis, [[v[s], v[s + 1], v[s + 2]]], field)[0]
        signs = {c.sign() for c in coeffs if c}
        assert signs in ({1}, {-1}), "root not signed over the simple basis"
        if signs == {-1}:
            v = tuple(-x for x in v)
        positive.append(v)
    positive.sort(key=lambda v: tuple(tuple(c.coeffs) for c in v))

    half = Fraction(1, 2)
    weights = [
        vec3(2 * tau2, field.zero, field.zero),
        vec3(tau * half, field.coerce(half), field.zero),
        vec3(tau2 * half, field.zero, field.coerce(half)),
    ]
    degrees = (2, 6, 10)
    return simple, positive, weights, degrees


def _line_key(v, s):
    """Canonical key for the line {v, -v}: flip sign at the first nonzero coord."""
    for x in v[s:]:
        sg = 1 if x.sign() >= 0 else -1
        if x:
            break
    else:
        sg = 1
    return tuple(x * sg for x in v)


_BLOCK_BUILDERS = {
    "A": _build_a_block,
    "B": _build_b_block,
    "D": _build_d_block,
    "I2": _build_i2_block,
    "H3": _build_h3_block,
}


def _field_requirement(family, param):
    """Least L with the block's coordinates inside Q(2cos(pi/L))."""
    if family == "I2":
        return 2 * param
    if family == "H3":
        return 5
    return 1


def build_root_system(t):
    """Construct the standard realization of the given Coxeter type."""
    if isinstance(t, str):
        t = CoxeterType.parse(t)
    if not isinstance(t, CoxeterType):
        raise UnsupportedType(f"cannot interpret {t!r} as a Coxeter type")

    lcm = 1
    for family, param in t.factors:
        req = _field_requirement(family, param)
        lcm = lcm * req // math.gcd(lcm, req)
    field = rational_field() if lcm <= 2 else two_cos_field(lcm)

    blocks = []
    start = 0
    for family, param in t.factors:
        dim = {"A": param + 1, "B": param, "D": param, "I2": 2, "H3": 3}[family]
        gen2cos = None
        req = _field_requirement(family, param)
        if req > 2:
            gen2cos = two_cos_multiple(lcm // req, field.gen)
        blocks.append(Block(family, param, start, dim, gen2cos))
        start += dim
    nvars = start

    simple, positive, weights, degrees = [], [], [], []
    simple_indices = []
    for block in blocks:
        s_simple, s_pos, s_wts, s_deg = _BLOCK_BUILDERS[block.family](
            field, nvars, block)
        offset = len(positive)
        for root in s_simple:
            simple_indices.append(offset + _index_on_line(s_pos, root))
        simple.extend(s_simple)
        positive.extend(s_pos)
        weights.extend(s_wts)
        degrees.extend(s_deg)

    reflections = tuple(
        _reflection_matrix(field, nvars, beta) for beta in positive)

    rs = RootSystem(
        ctype=t, field=field, nvars=nvars, blocks=tuple(blocks),
        simple_roots=tuple(simple), positive_roots=tuple(positive),
        simple_indices=tuple(simple_indices), reflections=reflections,
        invariant_degrees=tuple(degrees), fundamental_weights=tuple(weights))
    _validate_root_system(rs)
    return rs


def _index_on_line(roots, target):
    """Index of the root that is a positive multiple of target.

    Positive-root representatives may be rescaled (H3 mirrors carry
    unit vectors), so membership is by ray, not by vector equality.
    """
    lead = next(i for i, x in enumerate(target) if x)
    for idx, root in enumerate(roots):
        if not root[lead]:
            continue
        factor = root[lead] / target[lead]
        if factor.sign() > 0 and all(
                root[k] == target[k] * factor for k in range(len(target))):
            return idx
    raise ValueError("no positive root on the given line")


def _validate_root_system(rs):
    if rs.num_reflections != rs.ctype.num_reflections():
        raise AssertionError("positive root count disagrees with the type data")
    ident = linalg.identity(rs.field, rs.nvars)
    for beta, refl in zip(rs.positive_roots, rs.reflections):
        sq = linalg.mat_mul(list(refl), list(refl))
        if [list(r) for r in sq] != [list(r) for r in ident]:
            raise AssertionError("reflection is not an involution")
        image = linalg.mat_vec(list(refl), list(beta))
        if tuple(image) != tuple(-x for x in beta):
            raise AssertionError("reflection does not negate its root")
    for i, w in enumerate(rs.fundamental_weights):
        for j, alpha in enumerate(rs.simple_roots):
            expected = 1 if i == j else 0
            if rs.coroot_pairing(w, alpha) != expected:
                raise AssertionError("fundamental weight duality fails")


def enumerate_group(rs):
    """All group elements by breadth-first closure over simple reflections.

    BFS layers under right multiplication are exactly the length strata;
    lengths are verified against the inverted positive-root count.
    """
    order = rs.ctype.order()
    if order > GROUP_ORDER_BUDGET:
        raise BudgetExceeded(f"group order {order} exceeds enumeration budget")
    gens = [rs.simple_reflection(i) for i in range(rs.rank)]
    ident = tuple(tuple(row) for row in linalg.identity(rs.field, rs.nvars))
    elements = [GroupElement(ident, (), 0)]
    index_of = {ident: 0}
    frontier = [elements[0]]
    while frontier:
        next_frontier = []
        for el in frontier:
            for gi, g in enumerate(gens):
                mat = tuple(
                    tuple(row) for row in linalg.mat_mul(
                        [list(r) for r in el.matrix], [list(r) for r in g]))
                if mat in index_of:
                    continue
                new = GroupElement(mat, el.word + (gi,), el.length + 1)
                index_of[mat] = len(elements)
                elements.append(new)
                next_frontier.append(new)
        frontier = next_frontier
    if len(elements) != order:
        raise AssertionError(
            f"enumerated {len(elements)} elements, expected {order}")

    neg_roots = {tuple(-x for x in beta) for beta in rs.positive_roots}
    census = [0] * (rs.num_reflections + 1)
    for el in elements:
        inv = sum(
            1 for beta in rs.positive_roots
            if tuple(linalg.mat_vec([list(r) for r in el.matrix], list(beta)))
            in neg_roots)
        if inv != el.length:
            raise AssertionError("BFS length disagrees with inversion count")
        census[el.length] += 1
    return GroupElementSet(tuple(elements), index_of, tuple(census))


def poincare_polynomial(rs):
    """Coefficients of prod_i (1 + t + ... + t^(d_i - 1)): the length census."""
    coeffs = [1]
    for d in rs.invariant_degrees:
        block = [1] * d
        out = [0] * (len(coeffs) + d - 1)
        for i, a in enumerate(coeffs):
            for j, b in enumerate(block):
                out[i + j] += a * b
        coeffs = out
    return tuple(coeffs)


def is_fixed_by_reflection(rs, ell, beta):
    """True iff the degree-one element is on the mirror of s_beta."""
    ell = rs.coerce_vector(ell)
    beta = rs.coerce_vector(beta)
    return not rs.inner(ell, beta)


def sle_criterion(rs, ell):
    """Mirror criterion: true iff ell avoids every reflection hyperplane."""
    for family, _param in rs.ctype.factors:
        if family == "H4":  # pragma: no cover - H4 never constructs
            raise UnsupportedType("criterion not available for H4 factors")
    ell = rs.coerce_vector(ell)
    return all(rs.inner(ell, beta) for beta in rs.positive_roots)


def chamber_representative(rs, ell):
    """A group element w with w(ell) in the closed fundamental chamber.

    Greedy: while some simple coroot pairs negatively, reflect.  Each
    step strictly increases the pairing with the dominant-cone witness,
    so the walk terminates.
    """
    vec = list(rs.coerce_vector(ell))
    word = []
    mat = [list(r) for r in linalg.identity(rs.field, rs.nvars)]
    changed = True
    while changed:
        changed = False
        for i, alpha in enumerate(rs.simple_roots):
            if rs.coroot_pairing(vec, alpha).sign() < 0:
                refl = [list(r) for r in rs.simple_reflection(i)]
                vec = linalg.mat_vec(refl, vec)
                mat = linalg.mat_mul(refl, mat)
                word.append(i)
                changed = True
    return tuple(word), tuple(tuple(r) for r in mat), tuple(vec)
