"""The coinvariant quotient ring R = k[V]/J for a root system.

J is generated by the positive-degree invariants; the module computes a
reduced Groebner basis of J (Buchberger, graded reverse lexicographic
order, exact coefficients), the standard-monomial basis of every graded
piece, normal forms, multiplication-map matrices and the top-degree
pairing.  The Hilbert function is verified against the length
generating function at construction; a mismatch is a hard failure
signalling a wrong invariant system.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from . import linalg, polyring
from .coxeter import poincare_polynomial
from .errors import BudgetExceeded, DegreeOutOfRange, HilbertMismatch
from .polyring import Polynomial, grevlex_key, monomials_of_degree

QUOTIENT_DIM_BUDGET = 10 ** 4
RANK_BUDGET = 4


def _monom_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _monom_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _monom_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _lead(terms):
    return max(terms, key=grevlex_key)


def _reduce_full(terms, basis, field):
    """Full normal form of a term dict against monic reducers.

    basis: list of (lead_monom, items) with items the term list of a
    monic polynomial.  Deterministic: always cancels the current
    leading monomial with the first applicable reducer.
    """
    work = dict(terms)
    out = {}
    while work:
        mu = max(work, key=grevlex_key)
        c = work.pop(mu)
        for lead, items in basis:
            if _monom_divides(lead, mu):
                shift = tuple(x - y for x, y in zip(mu, lead))
                for monom, coeff in items:
                    if monom == lead:
                        continue
                    mm = _monom_mul(monom, shift)
                    v = work.get(mm)
                    v = -c * coeff if v is None else v - c * coeff
                    if v:
                        work[mm] = v
                    elif mm in work:
                        del work[mm]
                break
        else:
            out[mu] = c
    return out


def _make_monic(terms, field):
    lead = _lead(terms)
    inv = terms[lead].inverse()
    return {m: c * inv for m, c in terms.items()}


def buchberger(gens, field, nvars):
    """Reduced Groebner basis (monic, interreduced, sorted by leading term).

    Normal selection strategy on homogeneous input plus the coprime and
    chain criteria keep the pair queue small at these sizes.
    """
    basis = []
    leads = []
    for g in gens:
        terms = {m: c for m, c in g.terms.items() if c}
        if terms:
            basis.append(_make_monic(terms, field))
            leads.append(_lead(terms))

    pairs = []
    done = set()

    def push_pairs(t):
        for i in range(t):
            lcm = _monom_lcm(leads[i], leads[t])
            if lcm == _monom_mul(leads[i], leads[t]):  # coprime leading terms
                done.add((i, t))
                continue
            heapq.heappush(pairs, (grevlex_key(lcm), i, t, lcm))

    for t in range(len(basis)):
        push_pairs(t)

    def reducers():
        order = sorted(range(len(basis)), key=lambda i: grevlex_key(leads[i]))
        return [(leads[i], list(basis[i].items())) for i in order]

    red = reducers()
    while pairs:
        _, i, j, lcm = heapq.heappop(pairs)
        if (i, j) in done:
            continue
        done.add((i, j))
        # chain criterion: a third element dividing the lcm whose pairs
        # with i and j are both settled makes this S-pair redundant
        skip = False
        for k in range(len(basis)):
            if k in (i, j) or not _monom_divides(leads[k], lcm):
                continue
            a = (min(i, k), max(i, k))
            b = (min(j, k), max(j, k))
            if a in done and b in done:
                skip = True
                break
        if skip:
            continue
        si = tuple(x - y for x, y in zip(lcm, leads[i]))
        sj = tuple(x - y for x, y in zip(lcm, leads[j]))
        spoly = {}
        for m, c in basis[i].items():
            spoly[_monom_mul(m, si)] = c
        for m, c in basis[j].items():
            mm = _monom_mul(m, sj)
            v = spoly.get(mm)
            v = -c if v is None else v - c
            if v:
                spoly[mm] = v
            elif mm in spoly:
                del spoly[mm]
        nf = _reduce_full(spoly, red, field)
        if not nf:
            continue
        basis.append(_make_monic(nf, field))
        leads.append(_lead(nf))
        push_pairs(len(basis) - 1)
        red = reducers()

    # minimalize: drop entries whose lead is divisible by another lead
    keep = []
    for i in range(len(basis)):
        if any(
            j != i and _monom_divides(leads[j], leads[i])
            and (leads[j] != leads[i] or j < i)
            for j in range(len(basis))
        ):
            continue
        keep.append(i)
    # tail-reduce for the unique reduced basis
    final = []
    for i in keep:
        others = [
            (leads[j], list(basis[j].items())) for j in keep if j != i]
        tail = dict(basis[i])
        del tail[leads[i]]
        nf = _reduce_full(tail, others, field)
        nf[leads[i]] = field.one
        final.append(nf)
    final.sort(key=lambda t: grevlex_key(_lead(t)))
    return [Polynomial(field, nvars, t) for t in final]


@dataclass(frozen=True)
class MultiplicationMap:
    """Exact matrix of f -> g^k f from degree i to degree i + k."""

    source: int
    target: int
    matrix: tuple


class CoinvariantRing:
    """Graded Artinian quotient with verified symmetric Hilbert function."""

    def __init__(self, rs, groebner, bases, hilbert):
        self.rs = rs
        self.field = rs.field
        self.nvars = rs.nvars
        self.groebner = tuple(groebner)
        self.socle_degree = len(hilbert) - 1
        self.bases = tuple(tuple(b) for b in bases)
        self.hilbert = tuple(hilbert)
        self.dimension = sum(hilbert)
        self.top_monomial = self.bases[-1][0]
        self.basis_index = tuple(
            {m: k for k, m in enumerate(bd)} for bd in self.bases)
        self._reducers = sorted(
            ((g.leading_monomial(), list(g.terms.items())) for g in self.groebner),
            key=lambda pair: grevlex_key(pair[0]))
        self._nf_cache = {}

    def __repr__(self):
        return f"CoinvariantRing({self.rs.ctype}, dim={self.dimension})"

    def nf_monomial(self, monom):
        """Normal form of a single monomial, cached, as a term dict."""
        cached = self._nf_cache.get(monom)
        if cached is None:
            for lead, _items in self._reducers:
                if _monom_divides(lead, monom):
                    cached = _reduce_full(
                        {monom: self.field.one}, self._reducers, self.field)
                    break
            else:
                cached = {monom: self.field.one}
            self._nf_cache[monom] = cached
        return cached

    def nf_terms(self, terms):
        out = {}
        for monom, c in terms.items():
            for m2, c2 in self.nf_monomial(monom).items():
                v = out.get(m2)
                v = c * c2 if v is None else v + c * c2
                if v:
                    out[m2] = v
                elif m2 in out:
                    del out[m2]
        return out

    def coords(self, terms, degree):
        """Coordinates of a normal-form term dict in the degree's basis."""
        index = self.basis_index[degree]
        vec = [self.field.zero] * len(index)
        for monom, c in terms.items():
            vec[index[monom]] = c
        return vec


def build_ring(rs):
    """Groebner basis, monomial bases and Hilbert check for the quotient."""
    expected = poincare_polynomial(rs)
    if sum(expected) > QUOTIENT_DIM_BUDGET:
        raise BudgetExceeded(
            f"quotient dimension {sum(expected)} exceeds {QUOTIENT_DIM_BUDGET}")
    if rs.ctype.rank() > RANK_BUDGET:
        raise BudgetExceeded(
            f"rank {rs.ctype.rank()} exceeds desk-scale bound {RANK_BUDGET}")
    gens = polyring.ideal_generators(rs)
    return _build_from_generators(rs, gens)


def _build_from_generators(rs, gens):
    expected = poincare_polynomial(rs)
    gb = buchberger(gens, rs.field, rs.nvars)
    leads = [g.leading_monomial() for g in gb]
    m = len(expected) - 1
    bases = []
    for d in range(m + 1):
        bd = [
            mono for mono in monomials_of_degree(rs.nvars, d)
            if not any(_monom_divides(l, mono) for l in leads)
        ]
        bases.append(bd)
    hilbert = [len(b) for b in bases]
    if hilbert != list(expected):
        raise HilbertMismatch(
            f"Hilbert function {hilbert} != length census {list(expected)}")
    overflow = [
        mono for mono in monomials_of_degree(rs.nvars, m + 1)
        if not any(_monom_divides(l, mono) for l in leads)
    ]
    if overflow:
        raise HilbertMismatch("standard monomials exist above the socle degree")
    return CoinvariantRing(rs, gb, bases, hilbert)


def normal_form(ring, p):
    """Canonical representative modulo J: remainder by the Groebner basis."""
    if p.nvars != ring.nvars:
        raise DegreeOutOfRange("variable count mismatch")
    return Polynomial(ring.field, ring.nvars, ring.nf_terms(p.terms))


def multiplication_matrix(ring, g, i, k):
    """Matrix of f -> normal_form(g^k f) on the degree bases B_i -> B_{i+k}."""
    if not (0 <= i <= ring.socle_degree and k >= 0 and i + k <= ring.socle_degree):
        raise DegreeOutOfRange(
            f"map from degree {i} with exponent {k} leaves the grading")
    if g.degree() > 1 or not g.is_homogeneous():
        raise ValueError("multiplier must be homogeneous of degree one")
    power = g ** k
    return _matrix_from_power(ring, power, i, k)


def _matrix_from_power(ring, power, i, k):
    j = i + k
    rows = ring.hilbert[j]
    cols = ring.hilbert[i]
    matrix = [[ring.field.zero] * cols for _ in range(rows)]
    for col, mono in enumerate(ring.bases[i]):
        shifted = {
            _monom_mul(m, mono): c for m, c in power.terms.items()}
        nf = ring.nf_terms(shifted)
        for m2, c in nf.items():
            matrix[ring.basis_index[j][m2]][col] = c
    return MultiplicationMap(
        source=i, target=j, matrix=tuple(tuple(r) for r in matrix))


def poincare_pairing(ring, d):
    """Gram matrix of (f, g) -> top coefficient of normal_form(f g)."""
    if not 0 <= d <= ring.socle_degree:
        raise DegreeOutOfRange(f"degree {d} outside 0..{ring.socle_degree}")
    m = ring.socle_degree
    top = ring.top_monomial
    rows = []
    for u in ring.bases[d]:
        row = []
        for v in ring.bases[m - d]:
            nf = ring.nf_monomial(_monom_mul(u, v))
            row.append(nf.get(top, ring.field.zero))
        rows.append(tuple(row))
    return tuple(rows)


def is_antiinvariant_top(ring):
    """Whether every simple reflection negates the one-dimensional top degree."""
    rs = ring.rs
    top = Polynomial.monomial(ring.field, ring.top_monomial)
    for i in range(rs.rank):
        image = polyring.act(rs.simple_reflection(i), top)
        if normal_form(ring, image) != -top:
            return False
    return True
