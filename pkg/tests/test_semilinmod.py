import random

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import dense_rank, rand_coeff, sym_coeff
from twistcalc.config import parse_config
from twistcalc.errors import NotStrong, RankMismatch, SchwarzViolated
from twistcalc.randgen import random_matrix
from twistcalc.semilinmod import (
    DiffModule,
    SigmaModule,
    check_integrability,
    check_sigma_compat,
    diff_to_sigma,
    horizontal_sections,
    identity,
    mat_str,
    module_apply,
    sigma_cohomology,
    sigma_kernel,
    sigma_to_diff,
    vector_str,
)
from twistcalc.semilinmod import _flatten as flatten


def cfg(text):
    return parse_config(text)


QDIL = "field = Q(q); generators = x; twist x = q*x"
LAUR2 = "field = Q; generators = x; mode = laurent; twist x = 2*x"
SHIFT = "field = Q; generators = x; twist x = x + 1"
TWO = "field = Q(q); generators = x1, x2; twist x1 = q*x1; twist x2 = q*x2"


def test_translation_examples():
    c = cfg(LAUR2)
    t = c.twist
    assert sigma_to_diff(SigmaModule.trivial(t)).mats == DiffModule.trivial(t).mats
    N = sigma_to_diff(SigmaModule(t, (c.parse_matrix("[x]"),)))
    assert mat_str(N.mats[0]) == "[1 - x^-1]"
    assert N.mats[0][0][0] == (c.parse_coeff("x") - 1) / c.parse_coeff("x")
    assert diff_to_sigma(N) == SigmaModule(t, (c.parse_matrix("[x]"),))
    # shift: y = -1, so N = (1 - S)/y = S - 1
    s = cfg(SHIFT)
    N = sigma_to_diff(SigmaModule(s.twist, (s.parse_matrix("[5]"),)))
    assert mat_str(N.mats[0]) == "[4]"
    assert diff_to_sigma(DiffModule.trivial(s.twist)).mats == (identity(s.coeffs, 1),)
    qd = cfg(QDIL)
    S = diff_to_sigma(DiffModule(qd.twist, (qd.parse_matrix("[1]"),)))
    assert S.mats[0][0][0] == qd.parse_coeff("1 - (1 - q)*x")
    with pytest.raises(NotStrong):
        sigma_to_diff(SigmaModule.trivial(qd.twist))


def test_compat_examples():
    two = cfg(TWO)
    assert check_sigma_compat(SigmaModule.trivial(two.twist))[0]
    M = SigmaModule(two.twist, (two.parse_matrix("[x2]"), two.parse_matrix("[x1]")))
    assert check_sigma_compat(M)[0]  # equal q on both generators
    other = cfg("field = Q(q); generators = x1, x2; twist x1 = q*x1; twist x2 = 2*x2")
    M = SigmaModule(other.twist, (other.parse_matrix("[x2]"), other.parse_matrix("[x1]")))
    assert check_sigma_compat(M) == (False, (0, 1))
    assert check_sigma_compat(SigmaModule(cfg(QDIL).twist, (cfg(QDIL).parse_matrix("[x]"),)))[0]


def test_integrability_examples():
    two = cfg(TWO)
    assert check_integrability(DiffModule.trivial(two.twist, 2))[0]
    M = DiffModule(two.twist, (two.parse_matrix("[1]"), two.parse_matrix("[x1]")))
    # D1 D2 e = 1 + q*x1 while D2 D1 e = x1
    e = (two.coeffs.one(),)
    assert module_apply(M, 0, module_apply(M, 1, e)) == (two.parse_coeff("1 + q*x1"),)
    assert module_apply(M, 1, module_apply(M, 0, e)) == (two.parse_coeff("x1"),)
    assert check_integrability(M) == (False, (0, 1))
    one = cfg(QDIL)
    assert check_integrability(DiffModule(one.twist, (one.parse_matrix("[x, 1] [2, x]"),)))[0]
    bad = cfg("field = Q(t); generators = x; twist x = t^2*x; twist x = t*x")
    with pytest.raises(SchwarzViolated):
        check_integrability(DiffModule.trivial(bad.twist))


def test_module_apply_examples():
    c = cfg(QDIL)
    x = c.parse_coeff("x")
    assert module_apply(SigmaModule(c.twist, (((x,),),)), 0, (x,)) == (c.parse_coeff("q*x^2"),)
    D = DiffModule.trivial(c.twist)
    assert module_apply(D, 0, (x**3,)) == (c.parse_coeff("(1 + q + q^2)*x^2"),)
    assert module_apply(D, 0, (c.coeffs.zero(),)) == (c.coeffs.zero(),)
    with pytest.raises(RankMismatch):
        module_apply(D, 0, (x, x))


def test_horizontal_examples():
    f3 = cfg("field = GF(3); generators = x; twist x = x + 1")
    rep = horizontal_sections(DiffModule.trivial(f3.twist), 3)
    assert [vector_str(v) for v in rep.basis] == ["1", "x^3 - x"]
    rep = horizontal_sections(DiffModule.trivial(cfg(QDIL).twist), 5)
    assert [vector_str(v) for v in rep.basis] == ["1"] and rep.stable


def test_cohomology_examples():
    q2 = cfg("field = Q; generators = x; twist x = 2*x")
    H0, H1 = sigma_cohomology(SigmaModule.trivial(q2.twist), 0, 6)
    assert [vector_str(v) for v in H0.basis] == ["1"]
    assert [vector_str(v) for v in H1.basis] == ["1"] and H1.exact
    ident = cfg("field = Q; generators = x")
    H0, H1 = sigma_cohomology(SigmaModule.trivial(ident.twist), 0, 3)
    assert H0.dimension == H1.dimension == 4
    f5 = cfg("field = GF(5); generators = x; twist x = 2*x")
    H0, H1 = sigma_cohomology(SigmaModule.trivial(f5.twist), 0, 4)
    assert [vector_str(v) for v in H0.basis] == ["1", "x^4"]
    assert [vector_str(v) for v in H1.basis] == ["1", "x^4"]
    sh = cfg(SHIFT)
    _, H1 = sigma_cohomology(SigmaModule.trivial(sh.twist), 0, 4)
    assert not H1.exact and H1.notes == ["truncated"]


# -- randomized properties ---------------------------------------------------

STRONG = [
    LAUR2,
    SHIFT,
    "field = GF(5); generators = x; twist x = x + 2",
    "field = Q(q); generators = x; mode = laurent; twist x = q*x",
    "field = Q; generators = x, y; twist x = x + 1; twist y = y - 1",
]
ANY = STRONG + [QDIL, "field = GF(5); generators = x; twist x = 2*x", TWO]


def _random_module(c, rng, r, cls=SigmaModule):
    mats = tuple(random_matrix(c.coeffs, rng, r) for _ in range(len(c.twist)))
    return cls(c.twist, mats)


def _compatible_module(c, rng, r):
    """Random S_1 in the first generator only, S_2 = I: always compatible."""
    if len(c.twist) == 1:
        return _random_module(c, rng, r)
    x = c.coeffs.gen(0)
    S1 = tuple(
        tuple(c.coeffs(rng.randint(-2, 2)) + rng.randint(-1, 1) * x + (1 if a == b else 0) for b in range(r))
        for a in range(r)
    )
    return SigmaModule(c.twist, (S1, identity(c.coeffs, r)))


def _vec(c, rng, r):
    return tuple(rand_coeff(c, rng, max_deg=2) for _ in range(r))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(STRONG), st.integers(1, 3), st.integers(0, 2**31))
def test_functor_round_trip(text, r, seed):
    c = cfg(text)
    rng = random.Random(seed)
    M = _compatible_module(c, rng, r)
    assert check_sigma_compat(M)[0]
    D = sigma_to_diff(M)
    assert diff_to_sigma(D) == M
    N = _random_module(c, rng, r, DiffModule)
    assert sigma_to_diff(diff_to_sigma(N)) == N
    v = _vec(c, rng, r)
    for i in range(len(c.twist)):
        lhs = module_apply(diff_to_sigma(N), i, v)
        rhs = tuple(a - c.twist.y(i) * b for a, b in zip(v, module_apply(N, i, v)))
        assert lhs == rhs


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(ANY), st.integers(1, 3), st.integers(0, 2**31))
def test_module_leibniz_and_semilinearity(text, r, seed):
    c = cfg(text)
    rng = random.Random(seed)
    t = c.twist
    S = _random_module(c, rng, r)
    N = _random_module(c, rng, r, DiffModule)
    f = rand_coeff(c, rng, max_deg=2)
    v = _vec(c, rng, r)
    fv = tuple(f * a for a in v)
    for i in range(len(t)):
        assert module_apply(S, i, fv) == tuple(t.sigma(i, f) * a for a in module_apply(S, i, v))
        lhs = module_apply(N, i, fv)
        rhs = tuple(t.partial(i, f) * a + t.sigma(i, f) * b for a, b in zip(v, module_apply(N, i, v)))
        assert lhs == rhs


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([TWO, "field = Q; generators = x, y; twist x = x + 1; twist y = 3*y"]),
       st.integers(1, 2), st.integers(0, 2**31))
def test_commutator_is_semilinear(text, r, seed):
    """Under Schwarz conditions [D_i, D_j](f e_k) = sigma_i sigma_j(f) [D_i, D_j](e_k),
    which is why integrability can be checked on a basis."""
    c = cfg(text)
    rng = random.Random(seed)
    t = c.twist
    N = _random_module(c, rng, r, DiffModule)
    f = rand_coeff(c, rng, max_deg=2)

    def comm(v):
        a = module_apply(N, 0, module_apply(N, 1, v))
        b = module_apply(N, 1, module_apply(N, 0, v))
        return tuple(p - q for p, q in zip(a, b))

    for k in range(r):
        e = tuple(c.coeffs.one() if j == k else c.coeffs.zero() for j in range(r))
        fe = tuple(f * a for a in e)
        ssf = t.sigma(0, t.sigma(1, f))
        assert comm(fe) == tuple(ssf * a for a in comm(e))


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(STRONG[:3] + STRONG[4:]), st.integers(1, 3), st.integers(0, 2**31))
def test_horizontal_equals_sigma_kernel(text, r, seed):
    c = cfg(text)
    rng = random.Random(seed)
    M = _compatible_module(c, rng, r)
    d = 3 if len(c.twist) > 1 else 4
    hor = horizontal_sections(sigma_to_diff(M), d).basis
    ker = sigma_kernel(M, d)
    vecs = lambda b: [flatten(v) for v in b]  # noqa: E731
    from twistcalc.linalg import same_span

    assert same_span(vecs(hor), vecs(ker))


# -- dense oracle ------------------------------------------------------------


def _oracle_sigma_kernel_dim(qv, h, mat, d, p):
    """dim of {v in slice : v = S sigma(v)} by a dense sympy solve.

    The image may leave the degree slice, so the matrix has one row per
    coefficient of the full image."""
    x = sp.Symbol("x")
    r = len(mat)
    S = sp.Matrix(mat)
    cols = []
    for k in range(r):
        for n in range(d + 1):
            v = sp.zeros(r, 1)
            v[k] = x**n
            img = v - S * v.subs(x, qv * x + h)
            cols.append([sp.expand(e) for e in img])
    top = max((sp.Poly(e, x).degree() for col in cols for e in col if e != 0), default=0)
    rows = []
    for k in range(r):
        for n in range(max(top, d) + 1):
            rows.append([sp.Poly(col[k], x).coeff_monomial(x**n) for col in cols])
    if p:
        rows = [[int(a) % p for a in row] for row in rows]
    return r * (d + 1) - dense_rank(rows, p)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([(0, 2, 0), (5, 2, 0), (0, 1, 1), (5, 1, 1), (3, 2, 1)]), st.integers(1, 3),
       st.integers(0, 6), st.integers(0, 2**31))
def test_sigma_kernel_against_dense_oracle(params, r, d, seed):
    p, qv, h = params
    fld = f"GF({p})" if p else "Q"
    c = cfg(f"field = {fld}; generators = x; twist x = {qv}*x + {h}")
    rng = random.Random(seed)
    ints = [[rng.choice([0, 0, 1, -1, 2]) + rng.choice([0, 0, 1]) * sp.Symbol("x") for _ in range(r)]
            for _ in range(r)]
    text = " ".join("[" + ", ".join(str(e) for e in row) + "]" for row in ints)
    M = SigmaModule(c.twist, (c.parse_matrix(text),))
    ours = sigma_kernel(M, d)
    assert len(ours) == _oracle_sigma_kernel_dim(qv, h, ints, d, p)
    for v in ours:
        assert module_apply(M, 0, v) == v


def test_sym_helper_round_trip():
    c = cfg(QDIL)
    f = c.parse_coeff("(1 + q)*x^2 - x/q")
    assert sp.simplify(sym_coeff(f) - ((1 + sp.Symbol("q")) * sp.Symbol("x") ** 2 - sp.Symbol("x") / sp.Symbol("q"))) == 0
