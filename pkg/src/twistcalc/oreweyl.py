"""Twisted polynomial rings ``A[T]_sigma`` and twisted Weyl algebras.

Operators are stored in normal form ``sum_u c_u * X^u`` with coefficients on
the left, ``X`` being ``T`` (graded kind) or ``d`` (Weyl kind).  Commutation
rules::

    T_i * c = sigma_i(c) * T_i
    d_i * c = partial_i(c) + sigma_i(c) * d_i
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import polys as P
from .errors import FieldMismatch, ModeError, NotInvertible, NotStrong, SchwarzViolated
from .linalg import kernel
from .twistalg import (
    LAURENT,
    POLY,
    CoeffAlgebra,
    CoeffElem,
    TwistSpec,
    join_terms,
    monomial_str,
    schwarz_check,
)

GRADED, WEYL = "graded", "weyl"


@dataclass(frozen=True, eq=False)
class OreAlgebra:
    twist: TwistSpec
    kind: str = WEYL
    inversive: bool = False

    def __post_init__(self):
        if self.kind not in (GRADED, WEYL):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind == WEYL:
            if self.inversive:
                raise ValueError("Weyl operators have no negative powers")
            ok, bad = schwarz_check(self.twist)
            if not ok:
                raise SchwarzViolated(f"twist family is not of Schwarz type: {bad[:3]}")
        if self.inversive and not all(
            self.twist.invertible(i) for i in range(len(self.twist))
        ):
            raise NotInvertible("inversive operator variables need every q_i != 0")

    def __eq__(self, other):
        return (
            isinstance(other, OreAlgebra)
            and (self.twist, self.kind, self.inversive)
            == (other.twist, other.kind, other.inversive)
        )

    def __hash__(self):
        return hash((self.twist, self.kind, self.inversive))

    @property
    def coeffs(self) -> CoeffAlgebra:
        return self.twist.alg

    @property
    def m(self) -> int:
        """Number of operator variables (one per twist)."""
        return len(self.twist)

    @property
    def letter(self) -> str:
        return "T" if self.kind == GRADED else "d"

    def var_names(self):
        if self.m == 1:
            return [self.letter]
        return [f"{self.letter}{i + 1}" for i in range(self.m)]

    # constructors -----------------------------------------------------------
    def zero(self) -> "OreOperator":
        return OreOperator(self, {})

    def one(self) -> "OreOperator":
        return self.coeff(self.coeffs.one())

    def coeff(self, c) -> "OreOperator":
        c = self.coeffs(c)
        return OreOperator(self, {} if c.is_zero() else {self._zero_u(): c})

    def var(self, i: int, power: int = 1) -> "OreOperator":
        u = tuple(power if j == i else 0 for j in range(self.m))
        self._check_u(u)
        return OreOperator(self, {u: self.coeffs.one()})

    def term(self, c, u) -> "OreOperator":
        u = tuple(u)
        self._check_u(u)
        c = self.coeffs(c)
        return OreOperator(self, {} if c.is_zero() else {u: c})

    def _zero_u(self):
        return (0,) * self.m

    def _check_u(self, u):
        if any(a < 0 for a in u) and not self.inversive:
            raise ValueError("negative operator exponent outside inversive mode")

    def __str__(self):
        return f"{self.coeffs}<{','.join(self.var_names())}; {self.kind}>"


def _ukey(u):
    return (sum(u), u)


class OreOperator:
    """Immutable normal-form operator."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: OreAlgebra, terms):
        self.alg = alg
        self.terms = {u: c for u, c in terms.items() if not c.is_zero()}

    # helpers -------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, OreOperator):
            if other.alg != self.alg:
                raise FieldMismatch("operators from different algebras")
            return other
        try:
            return self.alg.coeff(other)
        except TypeError:
            return None

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def order(self) -> int:
        """Total operator degree (the filtration degree); -1 for zero."""
        return max((sum(u) for u in self.terms), default=-1)

    def coefficient(self, u) -> CoeffElem:
        return self.terms.get(tuple(u), self.alg.coeffs.zero())

    def is_coeff(self) -> bool:
        return all(not any(u) for u in self.terms)

    def as_coeff(self) -> CoeffElem:
        if not self.is_coeff():
            raise ValueError(f"{self} is not a coefficient")
        return self.coefficient(self.alg._zero_u())

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for u, c in o.terms.items():
            out[u] = out[u] + c if u in out else c
        return OreOperator(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return OreOperator(self.alg, {u: -c for u, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ore_mul(self, o)

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ore_mul(o, self)

    def __truediv__(self, other):
        """Left division by an invertible coefficient: ``P / c = c^-1 * P``."""
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.is_coeff():
            raise ModeError("operators can only be divided by coefficients")
        return OreOperator(self.alg, {}) + ore_mul(self.alg.coeff(o.as_coeff().inverse()), self)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) == 1:
                ((u, c),) = self.terms.items()
                if c == self.alg.coeffs.one() and self.alg.inversive:
                    return OreOperator(self.alg, {tuple(-a * -k for a in u): c})
            if self.is_coeff():
                return self.alg.coeff(self.as_coeff() ** k)
            raise ValueError("negative power of a non-invertible operator")
        out = self.alg.one()
        for _ in range(k):
            out = ore_mul(out, self)
        return out

    def __eq__(self, other):
        if isinstance(other, OreOperator):
            return self.alg == other.alg and self.terms == other.terms
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # printing ---------------------------------------------------------------
    def __str__(self):
        names = self.alg.var_names()
        parts = []
        for u in sorted(self.terms, key=_ukey):
            c = self.terms[u]
            mon = _op_monomial_str(u, names)
            parts.extend(_op_term_parts(c, mon))
        return join_terms(parts)

    def __repr__(self):
        return f"OreOperator({self})"


def _op_monomial_str(u, names):
    parts = []
    for a, nm in zip(u, names):
        if a == 0:
            continue
        parts.append(nm if a == 1 else f"{nm}^{a}")
    return "*".join(parts)


def _op_term_parts(c: CoeffElem, mon: str):
    if not mon:
        s = str(c)
        return _split_signed(s)
    if c == c.alg.one():
        return [(False, mon)]
    if c == -c.alg.one():
        return [(True, mon)]
    if c.is_atomic():
        s = str(c)
        neg = s.startswith("-")
        return [(neg, f"{s[1:] if neg else s}*{mon}")]
    if c.den is None and len(c.num) == 1:
        # single term with a compound scalar, e.g. (q - 1)*x
        ((e, sc),) = c.num.items()
        neg = sc.is_negative()
        mag = -sc if neg else sc
        body = f"({mag})" if not mag.is_atomic() else str(mag)
        xm = monomial_str(e, c.alg.names)
        if xm:
            body = f"{body}*{xm}"
        return [(neg, f"{body}*{mon}")]
    return [(False, f"({c})*{mon}")]


def _split_signed(s):
    # a bare coefficient printed as its own sum of terms
    return [(False, s)] if not s.startswith("-") else [(True, s[1:])]


# ---------------------------------------------------------------------------
# multiplication


def _graded_mul(P_, Q_):
    alg = P_.alg
    t = alg.twist
    out = {}
    for u, f in P_.terms.items():
        for v, g in Q_.terms.items():
            sg = g
            for i, k in enumerate(u):
                if k:
                    sg = t.sigma_power(i, k, sg)
            w = tuple(a + b for a, b in zip(u, v))
            c = f * sg
            out[w] = out[w] + c if w in out else c
    return OreOperator(alg, out)


def _push_d(i: int, terms, t: TwistSpec):
    """``d_i * (sum_v c_v d^v)`` in normal form."""
    out = {}
    for v, c in terms.items():
        dc = t.partial(i, c)
        if not dc.is_zero():
            out[v] = out[v] + dc if v in out else dc
        sc = t.sigma(i, c)
        w = v[:i] + (v[i] + 1,) + v[i + 1:]
        out[w] = out[w] + sc if w in out else sc
    return {w: c for w, c in out.items() if not c.is_zero()}


def _weyl_mul(P_, Q_):
    alg = P_.alg
    t = alg.twist
    out = {}
    cache = {}
    for u, f in P_.terms.items():
        if u not in cache:
            terms = Q_.terms
            for i, k in enumerate(u):
                for _ in range(k):
                    terms = _push_d(i, terms, t)
            cache[u] = terms
        for w, c in cache[u].items():
            fc = f * c
            out[w] = out[w] + fc if w in out else fc
    return OreOperator(alg, out)


def ore_mul(P_: OreOperator, Q_: OreOperator) -> OreOperator:
    if P_.alg != Q_.alg:
        raise FieldMismatch("operators from different algebras")
    if P_.alg.kind == GRADED:
        return _graded_mul(P_, Q_)
    return _weyl_mul(P_, Q_)


def commutator(P_: OreOperator, Q_: OreOperator) -> OreOperator:
    return ore_mul(P_, Q_) - ore_mul(Q_, P_)


def ore_apply(P_: OreOperator, f: CoeffElem) -> CoeffElem:
    """Action on the coefficient algebra: ``T^u -> sigma^u``, ``d^u -> partial^u``."""
    alg = P_.alg
    t = alg.twist
    f = alg.coeffs(f)
    out = alg.coeffs.zero()
    for u, c in P_.terms.items():
        g = f
        for i, k in enumerate(u):
            if alg.kind == GRADED:
                g = t.sigma_power(i, k, g)
            else:
                for _ in range(k):
                    g = t.partial(i, g)
        out = out + c * g
    return out


def sigma_as_operator(alg: OreAlgebra, i: int) -> OreOperator:
    """``1 - y_i * d_i`` in the Weyl algebra."""
    if alg.kind != WEYL:
        raise ValueError("sigma_as_operator lives in the Weyl algebra")
    return alg.one() - alg.coeff(alg.twist.y(i)) * alg.var(i)


def d_as_graded(alg: OreAlgebra, i: int) -> OreOperator:
    """``(1/y_i) * (1 - T_i)`` in the graded algebra (strong twists only)."""
    if alg.kind != GRADED:
        raise ValueError("d_as_graded lives in the graded algebra")
    y = alg.twist.y(i)
    if not y.is_unit():
        raise NotStrong(f"y_{i + 1} = {y} is not a unit")
    return alg.coeff(y.inverse()) * (alg.one() - alg.var(i))


def _substitute(P_: OreOperator, target: OreAlgebra, images) -> OreOperator:
    out = target.zero()
    cache = {}
    for u, c in P_.terms.items():
        if u not in cache:
            prod = target.one()
            for i, k in enumerate(u):
                if k < 0:
                    raise ValueError("negative powers have no image under this map")
                for _ in range(k):
                    prod = prod * images[i]
            cache[u] = prod
        out = out + target.coeff(c) * cache[u]
    return out


def graded_to_weyl(P_: OreOperator) -> OreOperator:
    """``T_i -> 1 - y_i d_i``; an A-linear ring map."""
    src = P_.alg
    if src.kind != GRADED:
        raise ValueError("expected a graded operator")
    tgt = OreAlgebra(src.twist, WEYL)
    images = [sigma_as_operator(tgt, i) for i in range(tgt.m)]
    return _substitute(P_, tgt, images)


def weyl_to_graded(P_: OreOperator, inversive: bool = False) -> OreOperator:
    """``d_i -> (1/y_i)(1 - T_i)``; requires strong twists."""
    src = P_.alg
    if src.kind != WEYL:
        raise ValueError("expected a Weyl operator")
    if not src.twist.strong:
        raise NotStrong("d -> T conversion needs every y_i to be a unit")
    tgt = OreAlgebra(src.twist, GRADED, inversive)
    images = [d_as_graded(tgt, i) for i in range(tgt.m)]
    return _substitute(P_, tgt, images)


# ---------------------------------------------------------------------------
# centralizers

COEFFS_ONLY, FULL_CENTER = "coeffs", "center"


def _op_exponents(m, op_bound):
    out = [u for u in itertools.product(range(op_bound + 1), repeat=m) if sum(u) <= op_bound]
    out.sort(key=_ukey, reverse=True)
    return out


def centralizer_basis(alg: OreAlgebra, which: str, x_bound: int, op_bound: int):
    """Echelon basis of the bounded operators commuting with every generator
    ``x_j`` (``which='coeffs'``), or with every ``x_j`` and ``T_i``
    (``which='center'``).  Basis elements are listed by increasing leading
    term (operator degree first, then coefficient monomial)."""
    if alg.kind != GRADED:
        raise ValueError("centralizer_basis is defined for the graded kind")
    if which not in (COEFFS_ONLY, FULL_CENTER):
        raise ValueError(f"unknown centralizer target {which!r}")
    ca = alg.coeffs
    if ca.mode not in (POLY, LAURENT):
        raise ModeError("bounded centralizers need poly or laurent coefficients")
    mons = ca.monomials_upto(x_bound)
    us = _op_exponents(alg.m, op_bound)
    dom = [(u, e) for u in us for e in mons]
    order = {col: r for r, col in enumerate(dom)}
    tests = [alg.coeff(x) for x in ca.gens()]
    if which == FULL_CENTER:
        tests += [alg.var(i) for i in range(alg.m)]
    images = {}
    for u, e in dom:
        Pb = alg.term(ca.monomial(e), u)
        img = {}
        for idx, X in enumerate(tests):
            C = commutator(Pb, X)
            for w, c in C.terms.items():
                for e2, s in c.num.items():
                    img[(idx, w, e2)] = s
        images[(u, e)] = img
    vecs = kernel(images, ca.field, key=lambda col: order[col])
    out = []
    for v in vecs:
        terms = {}
        for (u, e), c in v.items():
            terms[u] = terms.get(u, ca.zero()) + ca.monomial(e, c)
        out.append(OreOperator(alg, terms))

    def lead(op):
        u = max(op.terms, key=_ukey)
        return (_ukey(u), P.grlex_key(P.leading(op.terms[u].num)[0]))

    out.sort(key=lead)
    return out
