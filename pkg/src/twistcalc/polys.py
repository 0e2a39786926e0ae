"""Sparse multivariate (Laurent) polynomials as ``{exponent tuple: Scalar}`` dicts.

These are the raw helpers behind :class:`twistcalc.twistalg.CoeffElem`; every
function returns a fresh dict with no zero coefficients.  Monomial order is
graded lexicographic with ``x1 > x2 > ...``.
"""

from __future__ import annotations

from .errors import DivisionByZero, NonExactDivision


def grlex_key(e):
    return (sum(e), e)


def zero_exp(n):
    return (0,) * n


def const(c, n):
    return {} if c.is_zero() else {zero_exp(n): c}


def add(f, g):
    out = dict(f)
    for e, c in g.items():
        if e in out:
            s = out[e] + c
            if s.is_zero():
                del out[e]
            else:
                out[e] = s
        else:
            out[e] = c
    return out


def neg(f):
    return {e: -c for e, c in f.items()}


def sub(f, g):
    return add(f, neg(g))


def scale(f, c):
    if c.is_zero():
        return {}
    if c.is_one():
        return dict(f)
    return {e: v * c for e, v in f.items()}


def shift(f, m):
    """Multiply by the monomial ``x^m``."""
    return {tuple(a + b for a, b in zip(e, m)): c for e, c in f.items()}


def mul(f, g):
    if len(f) > len(g):
        f, g = g, f
    out = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            c = c1 * c2
            if e in out:
                out[e] = out[e] + c
            else:
                out[e] = c
    return {e: c for e, c in out.items() if not c.is_zero()}


def power(f, k, n):
    one = next(iter(f.values())).field.one() if f else None
    if k == 0:
        if one is None:
            raise ValueError("0^0")
        return {zero_exp(n): one}
    result = None
    base = f
    while k:
        if k & 1:
            result = base if result is None else mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result


def leading(f):
    """Leading ``(exponent, coefficient)`` in graded-lex order."""
    e = max(f, key=grlex_key)
    return e, f[e]


def sorted_terms(f, descending=True):
    return sorted(f.items(), key=lambda t: grlex_key(t[0]), reverse=descending)


def monic(f):
    if not f:
        return f
    _, c = leading(f)
    return scale(f, c.inverse())


def is_const(f):
    return not f or (len(f) == 1 and not any(next(iter(f))))


def degree(f):
    return max((sum(e) for e in f), default=-1)


def min_exp(f):
    """Componentwise minimum exponent (the monomial content)."""
    it = iter(f)
    m = list(next(it))
    for e in it:
        for i, a in enumerate(e):
            if a < m[i]:
                m[i] = a
    return tuple(m)


def has_negative(f):
    return any(a < 0 for e in f for a in e)


def divexact(f, g):
    """Quotient of ``f`` by ``g`` in the polynomial ring (nonnegative exponents).

    Raises NonExactDivision if ``g`` does not divide ``f``.
    """
    if not g:
        raise DivisionByZero("division by the zero polynomial")
    if not f:
        return {}
    lg, lc = leading(g)
    lci = lc.inverse()
    r = dict(f)
    q = {}
    while r:
        lr, cr = leading(r)
        m = tuple(a - b for a, b in zip(lr, lg))
        if any(a < 0 for a in m):
            raise NonExactDivision("divisor does not divide dividend")
        c = cr * lci
        q[m] = c
        r = sub(r, scale(shift(g, m), c))
    return q


def laurent_divexact(f, g):
    """Exact quotient in the Laurent ring."""
    if not g:
        raise DivisionByZero("division by the zero polynomial")
    if not f:
        return {}
    mf, mg = min_exp(f), min_exp(g)
    f0 = shift(f, tuple(-a for a in mf))
    g0 = shift(g, tuple(-a for a in mg))
    q = divexact(f0, g0)
    return shift(q, tuple(a - b for a, b in zip(mf, mg)))


# ---------------------------------------------------------------------------
# gcd (nonnegative exponents) via recursive primitive remainder sequences


def _as_univariate(f, v):
    out = {}
    for e, c in f.items():
        k = e[v]
        rest = e[:v] + (0,) + e[v + 1:]
        out.setdefault(k, {})[rest] = c
    return out


def _from_univariate(u, v):
    out = {}
    for k, coeff in u.items():
        for e, c in coeff.items():
            out[e[:v] + (k,) + e[v + 1:]] = c
    return out


def _udeg(u):
    return max(u) if u else -1


def _prem(a, b, v):
    """Pseudo-remainder of ``a`` by ``b`` as univariate polynomials in ``x_v``."""
    db = _udeg(b)
    lcb = b[db]
    r = dict(a)
    while r and _udeg(r) >= db:
        dr = _udeg(r)
        lcr = r[dr]
        shift_k = dr - db
        new = {}
        for k, c in r.items():
            new[k] = mul(lcb, c)
        for k, c in b.items():
            kk = k + shift_k
            t = mul(lcr, c)
            new[kk] = sub(new[kk], t) if kk in new else neg(t)
        r = {k: c for k, c in new.items() if c}
    return r


def _content(u, n):
    g = {}
    for c in u.values():
        g = gcd(g, c, n)
        if is_const(g) and g:
            break
    return g


def _primpart(u, n):
    c = _content(u, n)
    return {k: divexact(v, c) for k, v in u.items()}, c


def gcd(f, g, n=None):
    """Monic gcd of two polynomials with nonnegative exponents."""
    if not f and not g:
        return {}
    if n is None:
        n = len(next(iter(f or g)))
    if not f:
        return monic(g)
    if not g:
        return monic(f)
    if is_const(f) or is_const(g):
        one = next(iter(f.values())).field.one()
        return {zero_exp(n): one}
    used = [i for i in range(n) if any(e[i] for e in f) or any(e[i] for e in g)]
    v = used[-1]
    uf, ug = _as_univariate(f, v), _as_univariate(g, v)
    pf, cf = _primpart(uf, n)
    pg, cg = _primpart(ug, n)
    c = gcd(cf, cg, n)
    if _udeg(pf) < _udeg(pg):
        pf, pg = pg, pf
    while pg and _udeg(pg) > 0:
        r = _prem(pf, pg, v)
        pf = pg
        if not r:
            pg = {}
            break
        pg, _ = _primpart(r, n)
    if pg:
        # a nonzero remainder of degree 0: the primitive parts are coprime
        return monic(c)
    pf, _ = _primpart(pf, n)
    return monic(mul(c, _from_univariate(pf, v)))
