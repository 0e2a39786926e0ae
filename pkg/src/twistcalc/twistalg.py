"""Coefficient algebras with affine diagonal twists and their twisted derivations.

A :class:`CoeffAlgebra` is ``K[x1..xn]`` (``poly``), ``K[x1^+-..xn^+-]``
(``laurent``) or ``K(x1..xn)`` (``ratfunc``).  A :class:`TwistSpec` is a
family of commuting endomorphisms ``sigma_i``, each acting on one generator
``x_v`` by ``x_v -> q*x_v + h`` and fixing the others.  The standard family has
one twist per generator; families with several twists on the same generator
(compatible roots of an endomorphism) are allowed too.

``partial_i`` is the unique ``sigma_i``-derivation sending ``x_v`` to 1 and
the other generators to 0::

    partial_i(f*g) = partial_i(f)*g + sigma_i(f)*partial_i(g)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from . import polys as P
from .errors import FieldMismatch, InvalidTwist, ModeError, NonExactDivision, NotInvertible
from .linalg import kernel
from .scalars import FieldSpec, Scalar, quantum_integer

POLY, LAURENT, RATFUNC = "poly", "laurent", "ratfunc"
MODES = (POLY, LAURENT, RATFUNC)


@dataclass(frozen=True)
class CoeffAlgebra:
    field: FieldSpec
    names: tuple
    mode: str = POLY

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if len(set(self.names)) != len(self.names):
            raise ValueError("generator names must be distinct")
        for nm in self.names:
            if not nm.isidentifier():
                raise ValueError(f"bad generator name {nm!r}")
            if nm == self.field.param:
                raise ValueError(f"generator {nm!r} clashes with the parameter")

    @property
    def n(self) -> int:
        return len(self.names)

    # constructors ------------------------------------------------------------
    def __call__(self, value) -> "CoeffElem":
        if isinstance(value, CoeffElem):
            if value.alg != self:
                raise FieldMismatch("elements of different coefficient algebras")
            return value
        return self.const(self.field(value))

    def const(self, c: Scalar) -> "CoeffElem":
        return CoeffElem.make(self, P.const(self.field(c), self.n))

    def zero(self) -> "CoeffElem":
        return CoeffElem.make(self, {})

    def one(self) -> "CoeffElem":
        return self.const(self.field.one())

    def gen(self, i: int) -> "CoeffElem":
        e = tuple(1 if j == i else 0 for j in range(self.n))
        return CoeffElem.make(self, {e: self.field.one()})

    def gens(self):
        return [self.gen(i) for i in range(self.n)]

    def monomial(self, exps, c=None) -> "CoeffElem":
        exps = tuple(exps)
        c = self.field.one() if c is None else self.field(c)
        if any(a < 0 for a in exps):
            if self.mode == POLY:
                raise ModeError("negative exponent in polynomial mode")
            if self.mode == RATFUNC:
                pos = tuple(max(a, 0) for a in exps)
                neg = tuple(max(-a, 0) for a in exps)
                return CoeffElem.make(self, {pos: c}, {neg: self.field.one()})
        return CoeffElem.make(self, {exps: c})

    def from_terms(self, terms) -> "CoeffElem":
        f = self.field
        return CoeffElem.make(
            self, {tuple(e): f(c) for e, c in dict(terms).items() if not f(c).is_zero()}
        )

    def monomials_upto(self, d: int):
        """Monomial exponents spanning the degree-``d`` slice, grlex descending.

        Poly mode: total degree <= d.  Laurent mode: sum of |exponents| <= d.
        """
        if self.mode == RATFUNC:
            raise ModeError("degree slices need poly or laurent mode")
        n = self.n
        if self.mode == POLY:
            rng = range(0, d + 1)
            out = [e for e in itertools.product(rng, repeat=n) if sum(e) <= d]
        else:
            rng = range(-d, d + 1)
            out = [e for e in itertools.product(rng, repeat=n) if sum(map(abs, e)) <= d]
        out.sort(key=P.grlex_key, reverse=True)
        return out

    def __str__(self):
        br = {POLY: "[{}]", LAURENT: "[{}^+-]", RATFUNC: "({})"}[self.mode]
        return f"{self.field}" + br.format(",".join(self.names))


class CoeffElem:
    """Immutable normalized element of a :class:`CoeffAlgebra`.

    ``num`` is a sparse dict; ``den`` is ``None`` except in ratfunc mode,
    where ``num/den`` is coprime and ``den`` monic in grlex order.
    """

    __slots__ = ("alg", "num", "den", "_hash")

    def __init__(self, alg, num, den=None):
        self.alg = alg
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def make(cls, alg: CoeffAlgebra, num, den=None) -> "CoeffElem":
        if any(c.is_zero() for c in num.values()):
            num = {e: c for e, c in num.items() if not c.is_zero()}
        if alg.mode != RATFUNC:
            if den is not None and not _is_one(den):
                if alg.mode == POLY:
                    num = P.divexact(num, den)
                else:
                    num = P.laurent_divexact(num, den)
            if alg.mode == POLY and P.has_negative(num):
                raise ModeError("negative exponent in polynomial mode")
            return cls(alg, num, None)
        if den is None:
            den = P.const(alg.field.one(), alg.n)
        if not den:
            from .errors import DivisionByZero

            raise DivisionByZero("zero denominator")
        if not num:
            return cls(alg, {}, P.const(alg.field.one(), alg.n))
        if not _is_one(den):
            g = P.gcd(num, den, alg.n)
            if not P.is_const(g):
                num = P.divexact(num, g)
                den = P.divexact(den, g)
            _, lc = P.leading(den)
            if not lc.is_one():
                inv = lc.inverse()
                num = P.scale(num, inv)
                den = P.scale(den, inv)
        return cls(alg, num, den)

    # helpers -------------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, CoeffElem):
            if other.alg != self.alg:
                raise FieldMismatch("elements of different coefficient algebras")
            return other
        if isinstance(other, Scalar) or isinstance(other, int):
            return self.alg.const(self.alg.field(other))
        from fractions import Fraction

        if isinstance(other, Fraction):
            return self.alg.const(self.alg.field(other))
        return None

    @property
    def is_ratfunc(self):
        return self.den is not None

    # arithmetic ----------------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den is None:
            return CoeffElem(self.alg, P.add(self.num, o.num))
        if self.den == o.den:
            return CoeffElem.make(self.alg, P.add(self.num, o.num), self.den)
        return CoeffElem.make(
            self.alg,
            P.add(P.mul(self.num, o.den), P.mul(o.num, self.den)),
            P.mul(self.den, o.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return CoeffElem(self.alg, P.neg(self.num), self.den)

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
        if self.den is None:
            return CoeffElem(self.alg, P.mul(self.num, o.num))
        return CoeffElem.make(self.alg, P.mul(self.num, o.num), P.mul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            from .errors import DivisionByZero

            raise DivisionByZero("division by zero in the coefficient algebra")
        mode = self.alg.mode
        if mode == RATFUNC:
            return CoeffElem.make(self.alg, P.mul(self.num, o.den), P.mul(self.den, o.num))
        if mode == POLY:
            return CoeffElem(self.alg, P.divexact(self.num, o.num))
        return CoeffElem(self.alg, P.laurent_divexact(self.num, o.num))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        if self.den is None:
            if k == 0:
                return self.alg.one()
            if not self.num:
                return self
            return CoeffElem(self.alg, P.power(self.num, k, self.alg.n))
        if k == 0:
            return self.alg.one()
        return CoeffElem(self.alg, P.power(self.num, k, self.alg.n), P.power(self.den, k, self.alg.n))

    def inverse(self) -> "CoeffElem":
        if not self.is_unit():
            raise NotInvertible(f"{self} is not a unit of {self.alg}")
        return self.alg.one() / self

    # predicates -----------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_unit(self) -> bool:
        if not self.num:
            return False
        if self.alg.mode == POLY:
            return P.is_const(self.num)
        if self.alg.mode == LAURENT:
            return len(self.num) == 1
        return True

    def is_scalar(self) -> bool:
        return P.is_const(self.num) and (self.den is None or P.is_const(self.den))

    def scalar_value(self) -> Scalar:
        if not self.is_scalar():
            raise ValueError(f"{self} is not a scalar")
        f = self.alg.field
        c = self.num.get(P.zero_exp(self.alg.n), f.zero())
        if self.den is not None:
            c = c / self.den[P.zero_exp(self.alg.n)]
        return c

    def degree(self) -> int:
        """Total degree of the numerator (poly/laurent: of the element)."""
        return P.degree(self.num)

    def terms(self):
        """``[(exponent, Scalar)]`` in grlex-descending order (numerator only)."""
        return P.sorted_terms(self.num)

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, CoeffElem) else other
        if o is None or not isinstance(o, CoeffElem):
            return NotImplemented
        return self.alg == o.alg and self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            den = frozenset(self.den.items()) if self.den is not None else None
            self._hash = hash((frozenset(self.num.items()), den))
        return self._hash

    # printing -------------------------------------------------------------------
    def __str__(self):
        ns = poly_str(self.num, self.alg.names)
        if self.den is None or _is_one(self.den):
            return ns
        ds = poly_str(self.den, self.alg.names)
        if _needs_parens(self.num):
            ns = f"({ns})"
        if _needs_parens(self.den) or len(self.den) > 1:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"CoeffElem({self})"

    def is_atomic(self) -> bool:
        """True when the printed form can sit inside a product unparenthesized."""
        if self.den is not None and not _is_one(self.den):
            return False
        if len(self.num) != 1:
            return False
        (c,) = self.num.values()
        return c.is_atomic()


def _is_one(d):
    return len(d) == 1 and not any(next(iter(d))) and next(iter(d.values())).is_one()


def _needs_parens(f):
    if len(f) != 1:
        return True
    (c,) = f.values()
    return not c.is_atomic() and not c.is_one()


def monomial_str(e, names) -> str:
    parts = []
    for a, nm in zip(e, names):
        if a == 0:
            continue
        parts.append(nm if a == 1 else f"{nm}^{a}")
    return "*".join(parts)


def term_str(c: Scalar, mon: str) -> tuple:
    """(negative?, body) for ``c * mon``; ``mon`` may be empty."""
    neg = c.is_negative()
    mag = -c if neg else c
    if not mon:
        # a compound constant among other terms keeps its grouping
        return neg, str(mag) if mag.is_atomic() else f"({mag})"
    if mag.is_one():
        return neg, mon
    s = str(mag)
    if not mag.is_atomic():
        s = f"({s})"
    return neg, f"{s}*{mon}"


def join_terms(parts) -> str:
    if not parts:
        return "0"
    neg0, b0 = parts[0]
    out = ("-" if neg0 else "") + b0
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out


def poly_str(f, names) -> str:
    if len(f) == 1 and not any(next(iter(f))):
        return str(next(iter(f.values())))
    return join_terms([term_str(c, monomial_str(e, names)) for e, c in P.sorted_terms(f)])


# ---------------------------------------------------------------------------
# twists


@dataclass(frozen=True)
class Twist:
    """``x_var -> q*x_var + h``; other generators fixed."""

    var: int
    q: Scalar
    h: Scalar

    def inverse(self) -> "Twist":
        if self.q.is_zero():
            raise NotInvertible("sigma with q = 0 is not invertible")
        qi = self.q.inverse()
        return Twist(self.var, qi, -(self.h * qi))

    def is_identity(self) -> bool:
        return self.q.is_one() and self.h.is_zero()


@lru_cache(maxsize=4096)
def _affine_power(q: Scalar, h: Scalar, k: int):
    """Coefficients of ``(q*x + h)^k`` as a tuple indexed by the power of x."""
    f = q.field
    return tuple(f(comb(k, j)) * q ** j * h ** (k - j) for j in range(k + 1))


@lru_cache(maxsize=4096)
def _derivative_of_power(q: Scalar, h: Scalar, k: int):
    """``partial(x^k)`` for ``sigma(x) = q*x + h`` as a tuple of coefficients.

    Built by the recursion ``partial(x^(k+1)) = x^k + sigma(x) partial(x^k)``.
    """
    f = q.field
    if k == 0:
        return ()
    prev = _derivative_of_power(q, h, k - 1)
    out = [f.zero()] * k
    out[k - 1] = out[k - 1] + f.one()
    for j, c in enumerate(prev):
        out[j + 1] = out[j + 1] + q * c
        out[j] = out[j] + h * c
    return tuple(out)


def _sigma_dict(f, tw: Twist):
    v = tw.var
    q, h = tw.q, tw.h
    out = {}
    if h.is_zero():
        for e, c in f.items():
            k = e[v]
            nc = c * q ** k if k else c
            if not nc.is_zero():
                out[e] = nc
        return out
    for e, c in f.items():
        k = e[v]
        if k == 0:
            out = P.add(out, {e: c})
            continue
        coeffs = _affine_power(q, h, k)
        piece = {}
        for j, a in enumerate(coeffs):
            if a.is_zero():
                continue
            piece[e[:v] + (j,) + e[v + 1:]] = a * c
        out = P.add(out, piece)
    return out


def _partial_dict(f, tw: Twist):
    v = tw.var
    q, h = tw.q, tw.h
    out = {}
    for e, c in f.items():
        k = e[v]
        if k == 0:
            continue
        if h.is_zero():
            nc = quantum_integer(k, q) * c
            if not nc.is_zero():
                out = P.add(out, {e[:v] + (k - 1,) + e[v + 1:]: nc})
            continue
        piece = {}
        for j, a in enumerate(_derivative_of_power(q, h, k)):
            if not a.is_zero():
                piece[e[:v] + (j,) + e[v + 1:]] = a * c
        out = P.add(out, piece)
    return out


def _apply_sigma(f: CoeffElem, tw: Twist) -> CoeffElem:
    if f.den is None:
        return CoeffElem(f.alg, _sigma_dict(f.num, tw))
    return CoeffElem.make(f.alg, _sigma_dict(f.num, tw), _sigma_dict(f.den, tw))


class TwistSpec:
    """A commuting family of affine diagonal twists on a :class:`CoeffAlgebra`."""

    def __init__(self, alg: CoeffAlgebra, twists):
        self.alg = alg
        fld = alg.field
        tws = []
        for tw in twists:
            if not isinstance(tw, Twist):
                var, q, h = tw
                tw = Twist(var, fld(q), fld(h))
            if not 0 <= tw.var < alg.n:
                raise InvalidTwist(f"twist acts on unknown generator index {tw.var}")
            if tw.q.field != fld or tw.h.field != fld:
                raise FieldMismatch("twist constants must lie in the base field")
            if alg.mode == LAURENT:
                if not tw.h.is_zero():
                    raise InvalidTwist(
                        "laurent mode needs h = 0: sigma must send the unit "
                        f"{alg.names[tw.var]} to a unit"
                    )
                if tw.q.is_zero():
                    raise InvalidTwist("laurent mode needs q != 0")
            if alg.mode == RATFUNC and tw.q.is_zero():
                raise InvalidTwist("ratfunc mode needs q != 0 (sigma must be injective)")
            tws.append(tw)
        for a, b in itertools.combinations(tws, 2):
            if a.var == b.var and a.q * b.h + a.h != b.q * a.h + b.h:
                raise InvalidTwist(
                    f"twists on {alg.names[a.var]} do not commute"
                )
        self.twists = tuple(tws)
        self._y = tuple(self._compute_y(tw) for tw in self.twists)

    @classmethod
    def standard(cls, alg: CoeffAlgebra, qh):
        """One twist per generator; ``qh`` is a list of ``(q, h)`` pairs."""
        return cls(alg, [(i, q, h) for i, (q, h) in enumerate(qh)])

    def __len__(self):
        return len(self.twists)

    def __eq__(self, other):
        return isinstance(other, TwistSpec) and (self.alg, self.twists) == (other.alg, other.twists)

    def __hash__(self):
        return hash((self.alg, self.twists))

    def _compute_y(self, tw):
        x = self.alg.gen(tw.var)
        return x - _apply_sigma(x, tw)

    @property
    def is_standard(self) -> bool:
        return [tw.var for tw in self.twists] == list(range(self.alg.n))

    def y(self, i: int) -> CoeffElem:
        """``x_v - sigma_i(x_v)`` for the generator ``x_v`` moved by twist ``i``."""
        return self._y[i]

    @property
    def strong(self) -> bool:
        return all(y.is_unit() for y in self._y)

    def invertible(self, i: int) -> bool:
        return not self.twists[i].q.is_zero()

    # maps ---------------------------------------------------------------------
    def sigma(self, i: int, f: CoeffElem) -> CoeffElem:
        return _apply_sigma(self.alg(f), self.twists[i])

    def sigma_inv(self, i: int, f: CoeffElem) -> CoeffElem:
        return _apply_sigma(self.alg(f), self.twists[i].inverse())

    def sigma_power(self, i: int, k: int, f: CoeffElem) -> CoeffElem:
        step = self.sigma if k >= 0 else self.sigma_inv
        for _ in range(abs(k)):
            f = step(i, f)
        return f

    def partial(self, i: int, f: CoeffElem) -> CoeffElem:
        f = self.alg(f)
        tw = self.twists[i]
        if f.den is None:
            return CoeffElem(f.alg, _partial_dict(f.num, tw))
        # quotient rule: d(a/b) = (d(a) b - a d(b)) / (b sigma(b))
        a, b = f.num, f.den
        da, db = _partial_dict(a, tw), _partial_dict(b, tw)
        top = P.sub(P.mul(da, b), P.mul(a, db))
        return CoeffElem.make(f.alg, top, P.mul(b, _sigma_dict(b, tw)))

    def __repr__(self):
        parts = []
        for tw in self.twists:
            nm = self.alg.names[tw.var]
            parts.append(f"{nm}->{tw.q}*{nm}+{tw.h}")
        return f"TwistSpec({self.alg}; {', '.join(parts)})"


# ---------------------------------------------------------------------------
# operations


def coeff_arith(f: CoeffElem, g: CoeffElem, op: str) -> CoeffElem:
    if f.alg != g.alg:
        raise FieldMismatch("operands live in different coefficient algebras")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "div":
        return f / g
    raise ValueError(f"unknown op {op!r}")


def apply_endo(t: TwistSpec, word, f: CoeffElem) -> CoeffElem:
    """Apply ``sigma_{w0} o sigma_{w1} o ...`` (1-based indices, negative for
    inverses); the rightmost letter acts first."""
    for letter in reversed(list(word)):
        if letter == 0 or abs(letter) > len(t):
            raise IndexError(f"bad twist index {letter}")
        i = abs(letter) - 1
        if letter < 0:
            if not t.invertible(i):
                raise NotInvertible(f"sigma_{letter} is not invertible (q = 0)")
            f = t.sigma_inv(i, f)
        else:
            f = t.sigma(i, f)
    return f


def apply_derivation(t: TwistSpec, i: int, f: CoeffElem) -> CoeffElem:
    """``partial_i(f)`` (0-based twist index)."""
    return t.partial(i, f)


def is_strong(t: TwistSpec):
    """``(strong?, [y_1, ..., y_n])``."""
    ys = [t.y(i) for i in range(len(t))]
    return all(y.is_unit() for y in ys), ys


def derivation_power_formula_check(t: TwistSpec, i: int, k: int) -> bool:
    """Compare the two closed forms for ``partial_i(x^k)`` with the Leibniz
    recursion and with :func:`apply_derivation`."""
    alg = t.alg
    if alg.mode != POLY:
        raise ModeError("power formula check runs in poly mode")
    if k < 1:
        raise ValueError("k must be positive")
    x = alg.gen(t.twists[i].var)
    sx = t.sigma(i, x)
    dx = t.partial(i, x)
    y = x - sx
    # sum_j x^j sigma(x)^(k-1-j) D(x)
    first = alg.zero()
    for j in range(k):
        first = first + x ** j * sx ** (k - 1 - j) * dx
    # sum_j C(k, j) (-y)^(k-1-j) x^j D(x)
    second = alg.zero()
    for j in range(k):
        second = second + alg(comb(k, j)) * (-y) ** (k - 1 - j) * x ** j * dx
    # D(x^(m+1)) = x^m D(x) + sigma(x) D(x^m)
    rec = dx
    for m in range(1, k):
        rec = x ** m * dx + sx * rec
    direct = t.partial(i, x ** k)
    return first == second == rec == direct


def schwarz_check(t: TwistSpec):
    """``(ok, violations)`` for the Schwarz conditions, tested on generators.

    Each violation is ``(kind, i, j, k)`` with kind ``"dd"`` (the partials do
    not commute) or ``"sd"`` (sigma_i does not commute with partial_j), and
    ``k`` the generator on which the two composites differ.
    """
    bad = []
    m = len(t)
    gens = t.alg.gens()
    for i, j in itertools.permutations(range(m), 2):
        for k, x in enumerate(gens):
            if t.sigma(i, t.partial(j, x)) != t.partial(j, t.sigma(i, x)):
                bad.append(("sd", i, j, k))
    for i, j in itertools.combinations(range(m), 2):
        for k, x in enumerate(gens):
            if t.partial(i, t.partial(j, x)) != t.partial(j, t.partial(i, x)):
                bad.append(("dd", i, j, k))
    return not bad, bad


def _bounded_kernel(t: TwistSpec, d: int, maps):
    alg = t.alg
    if alg.mode not in (POLY, LAURENT):
        raise ModeError("degree-bounded solves need poly or laurent mode")
    mons = alg.monomials_upto(d)
    rank_of = {e: r for r, e in enumerate(mons)}
    images = {}
    for e in mons:
        m = alg.monomial(e)
        img = {}
        for idx, fn in enumerate(maps):
            for e2, c in fn(m).num.items():
                img[(idx, e2)] = c
        images[e] = img
    vecs = kernel(images, alg.field, key=lambda e: rank_of[e])
    out = [CoeffElem(alg, dict(v)) for v in vecs]
    out.sort(key=lambda f: P.grlex_key(P.leading(f.num)[0]))
    return out


def invariants_basis(t: TwistSpec, degree_bound: int):
    """Echelon basis of ``{f : deg f <= bound, sigma_i(f) = f for all i}``,
    listed by increasing leading monomial."""
    maps = [lambda f, i=i: t.sigma(i, f) - f for i in range(len(t))]
    return _bounded_kernel(t, degree_bound, maps)


def constants_basis(t: TwistSpec, degree_bound: int):
    """Echelon basis of the degree-bounded joint kernel of the partials."""
    maps = [lambda f, i=i: t.partial(i, f) for i in range(len(t))]
    return _bounded_kernel(t, degree_bound, maps)
