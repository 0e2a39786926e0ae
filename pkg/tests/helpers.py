"""Hypothesis strategies and independent sympy oracles shared by the tests."""

from __future__ import annotations

import random
from fractions import Fraction

import sympy as sp
from hypothesis import strategies as st
from sympy import GF, QQ
from sympy.polys.matrices import DomainMatrix

from twistcalc.config import parse_config
from twistcalc.oreweyl import OreAlgebra
from twistcalc.randgen import random_coeff, random_operator
from twistcalc.scalars import FieldSpec
from twistcalc.twistalg import CoeffAlgebra, TwistSpec

FIELDS = [FieldSpec(0), FieldSpec(5), FieldSpec(3), FieldSpec(0, "t"), FieldSpec(5, "t"), FieldSpec(2)]


@st.composite
def scalars(draw, field, nonzero=False):
    if field.param is not None and draw(st.booleans()):
        num = draw(st.lists(st.integers(-4, 4), min_size=1, max_size=3))
        den = draw(st.lists(st.integers(-3, 3), min_size=1, max_size=2))
        if not any(den[1:]) and (den[0] % field.p if field.p else den[0]) == 0:
            den = [1]
        c = field.from_poly(num, den)
    else:
        n = draw(st.integers(-20, 20))
        d = 1 if field.p else draw(st.integers(1, 6))
        c = field(Fraction(n, d)) if not field.p else field(n)
    if nonzero and c.is_zero():
        c = field.one()
    return c


@st.composite
def field_and_scalars(draw, k=3, nonzero=False):
    f = draw(st.sampled_from(FIELDS))
    return f, [draw(scalars(f, nonzero)) for _ in range(k)]


@st.composite
def seeds(draw):
    return random.Random(draw(st.integers(0, 2**32)))


# rings used across the property tests
RING_TEXTS = {
    "qdil": "field = Q(q); generators = x; twist x = q*x",
    "shift3": "field = GF(3); generators = x; twist x = x + 1",
    "mixed": "field = Q(q); generators = x; twist x = q*x + 1",
    "laurent": "field = Q(q); generators = x; mode = laurent; twist x = q*x",
    "two": "field = Q(q); generators = x, y; twist x = q*x; twist y = 2*y",
    "gf5dil": "field = GF(5); generators = x; twist x = 2*x",
    "ratfunc": "field = Q; generators = x; mode = ratfunc; twist x = 3*x",
    "shiftq": "field = Q; generators = x, y; twist x = x + 1; twist y = 1/2*y",
}


def ring(name):
    return parse_config(RING_TEXTS[name])


def rand_coeff(cfg, rng, **kw):
    return random_coeff(cfg.coeffs, rng, **kw)


def rand_op(alg: OreAlgebra, rng, **kw):
    return random_operator(alg, rng, **kw)


# -- sympy oracles --------------------------------------------------------


def sym_scalar(c):
    """A Scalar as a sympy expression (parameter named after the field)."""
    f = c.field
    if f.param is None:
        v = c.value
        return sp.Rational(v.numerator, v.denominator) if not f.p else sp.Integer(v)
    t = sp.Symbol(f.param)
    num, den = c.value
    conv = (lambda a: sp.Rational(a.numerator, a.denominator)) if not f.p else sp.Integer
    N = sum(conv(a) * t**k for k, a in enumerate(num))
    D = sum(conv(a) * t**k for k, a in enumerate(den))
    return N / D


def _sym_poly(d, xs):
    out = sp.Integer(0)
    for e, c in d.items():
        m = sym_scalar(c)
        for x, a in zip(xs, e):
            m *= x**a
        out += m
    return out


def sym_coeff(f):
    xs = sp.symbols(f.alg.names)
    xs = xs if isinstance(xs, tuple) else (xs,)
    num = _sym_poly(f.num, xs)
    return num if f.den is None else num / _sym_poly(f.den, xs)


def dense_nullspace(rows, p):
    """Row basis of the right nullspace of a dense integer/rational matrix."""
    K = GF(p) if p else QQ
    ncols = len(rows[0])
    M = DomainMatrix([[K.from_sympy(sp.sympify(a)) for a in r] for r in rows], (len(rows), ncols), K)
    N = M.nullspace()
    return [[N[i, j].element for j in range(ncols)] for i in range(N.shape[0])]


def dense_rank(rows, p):
    if not rows:
        return 0
    K = GF(p) if p else QQ
    M = DomainMatrix([[K.from_sympy(sp.sympify(a)) for a in r] for r in rows], (len(rows), len(rows[0])), K)
    return M.rank()


def same_span_dense(a, b, p):
    ra, rb = dense_rank(a, p), dense_rank(b, p)
    return ra == rb == dense_rank(a + b, p)


def univariate_vector(f, d):
    """Coefficient list of a univariate element up to degree ``d``."""
    out = []
    for k in range(d + 1):
        c = f.num.get((k,))
        if c is None:
            out.append(0)
        else:
            v = c.value
            out.append(sp.Rational(v.numerator, v.denominator) if not c.field.p else int(v))
    return out


def oracle_sigma_matrix(q, h, d, p, op):
    """Dense matrix (rows = x^k, cols = x^n) of sigma - 1 or the sigma
    derivation on polynomials of degree <= d, computed with sympy only."""
    x = sp.Symbol("x")
    q, h = sp.sympify(q), sp.sympify(h)
    y = sp.expand(x - (q * x + h))
    cols = []
    for n in range(d + 1):
        s = sp.expand((q * x + h) ** n)
        if op == "sigma":
            img = s - x**n
        elif sp.simplify(y) == 0 or (p and sp.Poly(y, x, modulus=p).is_zero):
            img = sp.diff(x**n, x)
        else:
            img = sp.quo(sp.Poly(x**n - s, x), sp.Poly(y, x))
            img = img.as_expr()
        P_ = sp.Poly(img, x)
        cols.append([P_.coeff_monomial(x**k) for k in range(d + 1)])
    rows = [[cols[n][k] for n in range(d + 1)] for k in range(d + 1)]
    if p:
        rows = [[int(a) % p for a in r] for r in rows]
    return rows


def span_of_elements(basis, d):
    return [univariate_vector(f, d) for f in basis]


def poly_ring(p=0, param=None, names=("x",), mode="poly", qh=((2, 0),)):
    fld = FieldSpec(p, param)
    alg = CoeffAlgebra(fld, tuple(names), mode)
    return TwistSpec.standard(alg, [(fld(q), fld(h)) for q, h in qh])
