"""Exact base fields: Q, F_p and one-parameter rational function fields over them.

Values are immutable :class:`Scalar` objects tagged with their :class:`FieldSpec`.
Raw representations:

* ``Q``: :class:`fractions.Fraction`
* ``F_p``: ``int`` in ``range(p)``
* ``K(t)``: pair ``(num, den)`` of coefficient tuples over ``K`` (low degree
  first), coprime, ``den`` monic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DivisionByZero, FieldMismatch, NegativeIndexNeedsUnit

__all__ = [
    "FieldSpec",
    "Scalar",
    "RationalField",
    "PrimeField",
    "ParamFunctionField",
    "quantum_integer",
    "q_characteristic",
    "UNKNOWN",
]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# univariate polynomials over Q or F_p, as tuples (low degree first)


def _red(c, p):
    return c % p if p else c


def _inv(c, p):
    if p:
        return pow(c, -1, p)
    return 1 / c


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _uadd(a, b, p):
    n = max(len(a), len(b))
    return _trim(
        _red((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0), p)
        for i in range(n)
    )


def _uneg(a, p):
    return tuple(_red(-c, p) for c in a)


def _usub(a, b, p):
    return _uadd(a, _uneg(b, p), p)


def _umul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return _trim(_red(c, p) for c in out)


def _uscale(a, c, p):
    return _trim(_red(x * c, p) for x in a)


def _udivmod(a, b, p):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    lc_inv = _inv(b[-1], p)
    if len(a) <= db:
        return (), _trim(a)
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = _red(a[k + db] * lc_inv, p)
        q[k] = c
        if c:
            for j, bj in enumerate(b):
                a[k + j] = _red(a[k + j] - c * bj, p)
    return _trim(q), _trim(a[:db])


def _umonic(a, p):
    if not a:
        return a
    return _uscale(a, _inv(a[-1], p), p)


def _ugcd(a, b, p):
    while b:
        a, b = b, _udivmod(a, b, p)[1]
    return _umonic(a, p)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    """Base field: ``p == 0`` for Q, ``p`` prime for F_p; ``param`` adjoins a
    transcendental parameter (rational functions in one variable)."""

    p: int = 0
    param: str | None = None

    def __post_init__(self):
        if self.p and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.p < 0:
            raise ValueError("characteristic must be 0 or a prime")
        if self.param is not None and not self.param.isidentifier():
            raise ValueError(f"bad parameter name {self.param!r}")

    @property
    def kind(self) -> str:
        if self.param is not None:
            return "ParamFunctionField"
        return "PrimeField" if self.p else "RationalField"

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def base(self) -> "FieldSpec":
        return FieldSpec(self.p)

    # raw-value helpers -----------------------------------------------------
    def _raw(self, n: int):
        if self.param is None:
            return n % self.p if self.p else Fraction(n)
        c = _red(n, self.p) if self.p else Fraction(n)
        return ((c,) if c else (), (Fraction(1) if not self.p else 1,))

    def __call__(self, value) -> "Scalar":
        """Coerce an ``int``, ``Fraction`` or ``Scalar`` of this field."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(f"{value.field} vs {self}")
            return value
        if isinstance(value, Fraction):
            return self(value.numerator) / self(value.denominator)
        if isinstance(value, int):
            return Scalar(self, self._raw(value))
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def zero(self) -> "Scalar":
        return self(0)

    def one(self) -> "Scalar":
        return self(1)

    def gen(self) -> "Scalar":
        """The parameter as an element (only for function fields)."""
        if self.param is None:
            raise ValueError(f"{self} has no parameter")
        one = Fraction(1) if not self.p else 1
        zero = Fraction(0) if not self.p else 0
        return Scalar(self, ((zero, one), (one,)))

    def from_poly(self, coeffs, den=None) -> "Scalar":
        """Build ``num/den`` from coefficient sequences over the base field."""
        p = self.p
        conv = (lambda c: c % p) if p else Fraction
        num = _trim(conv(c) for c in coeffs)
        d = _trim(conv(c) for c in den) if den is not None else (conv(1),)
        if self.param is None:
            if len(num) > 1 or len(d) > 1:
                raise ValueError("polynomial value in a field without parameter")
            n0 = num[0] if num else conv(0)
            if not d:
                raise DivisionByZero("zero denominator")
            return Scalar(self, _red(n0 * _inv(d[0], p), p))
        return Scalar(self, _normalize_frac(num, d, p))

    def __str__(self):
        b = f"GF({self.p})" if self.p else "Q"
        return f"{b}({self.param})" if self.param else b


def RationalField() -> FieldSpec:
    return FieldSpec(0)


def PrimeField(p: int) -> FieldSpec:
    return FieldSpec(p)


def ParamFunctionField(base: FieldSpec, param_name: str) -> FieldSpec:
    if base.param is not None:
        raise ValueError("parameter function fields nest at most one level")
    return FieldSpec(base.p, param_name)


def _normalize_frac(num, den, p):
    if not den:
        raise DivisionByZero("zero denominator")
    if not num:
        one = 1 if p else Fraction(1)
        return ((), (one,))
    g = _ugcd(num, den, p)
    if len(g) > 1:
        num = _udivmod(num, g, p)[0]
        den = _udivmod(den, g, p)[0]
    lc = _inv(den[-1], p)
    return _uscale(num, lc, p), _uscale(den, lc, p)


class Scalar:
    """Immutable element of a :class:`FieldSpec`."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldSpec, value):
        self.field = field
        self.value = value

    # coercion --------------------------------------------------------------
    def _other(self, other) -> "Scalar | None":
        if isinstance(other, Scalar):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        f = self.field
        if f.param is None:
            return Scalar(f, _red(self.value + o.value, f.p))
        (a, b), (c, d) = self.value, o.value
        p = f.p
        if b == d:
            return Scalar(f, _normalize_frac(_uadd(a, c, p), b, p))
        return Scalar(
            f, _normalize_frac(_uadd(_umul(a, d, p), _umul(b, c, p), p), _umul(b, d, p), p)
        )

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        if f.param is None:
            return Scalar(f, _red(-self.value, f.p))
        a, b = self.value
        return Scalar(f, (_uneg(a, f.p), b))

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        f = self.field
        if f.param is None:
            return Scalar(f, _red(self.value * o.value, f.p))
        (a, b), (c, d) = self.value, o.value
        p = f.p
        if len(b) == 1 and len(d) == 1:
            return Scalar(f, (_umul(a, c, p), b))
        return Scalar(f, _normalize_frac(_umul(a, c, p), _umul(b, d, p), p))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        f = self.field
        if f.param is None:
            return Scalar(f, _inv(self.value, f.p))
        a, b = self.value
        return Scalar(f, _normalize_frac(b, a, f.p))

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # predicates ------------------------------------------------------------
    def is_zero(self) -> bool:
        if self.field.param is None:
            return self.value == 0
        return not self.value[0]

    def is_one(self) -> bool:
        if self.field.param is None:
            return self.value == 1
        return self.value[0] == self.value[1]

    def is_constant(self) -> bool:
        """True unless the value genuinely involves the parameter."""
        if self.field.param is None:
            return True
        a, b = self.value
        return len(a) <= 1 and len(b) == 1

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self):
        if self.field.param is None and not self.field.p:
            return hash(self.value)
        return hash((self.field, self.value))

    # printing --------------------------------------------------------------
    def is_negative(self) -> bool:
        """Sign used for printing: F_p residues use the symmetric range."""
        f = self.field
        if f.param is None:
            return _base_negative(self.value, f.p)
        a = self.value[0]
        return bool(a) and _base_negative(a[-1], f.p)

    def is_atomic(self) -> bool:
        """True when the printed form needs no parentheses inside a product."""
        s = str(self)
        return not any(ch in s[1:] for ch in "+-/ ")

    def __str__(self):
        f = self.field
        if f.param is None:
            return _base_str(self.value, f.p)
        a, b = self.value
        ns = _upoly_str(a, f.p, f.param)
        if len(b) == 1:
            return ns
        ds = _upoly_str(b, f.p, f.param)
        if " " in ns:
            ns = f"({ns})"
        if " " in ds:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"Scalar({self.field}, {self})"


def _symmetric(c: int, p: int) -> int:
    return c - p if c > p // 2 else c


def _base_negative(c, p) -> bool:
    return (_symmetric(c, p) < 0) if p else c < 0


def _base_str(c, p) -> str:
    if p:
        return str(_symmetric(c, p))
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _upoly_str(a, p, name) -> str:
    if not a:
        return "0"
    parts = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if c == 0:
            continue
        neg = _base_negative(c, p)
        mag = _red(-c, p) if neg else c
        if k == 0:
            body = _base_str(mag, p)
        else:
            mon = name if k == 1 else f"{name}^{k}"
            body = mon if mag == 1 else f"{_base_str(mag, p)}*{mon}"
        parts.append(("-" if neg else "+", body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# quantum combinatorics


class _Unknown:
    def __repr__(self):
        return "UNKNOWN"

    __str__ = __repr__


UNKNOWN = _Unknown()


def quantum_integer(m: int, q: Scalar) -> Scalar:
    """``(m)_q = 1 + q + ... + q^(m-1)`` and ``(-m)_q = -q^-1 - ... - q^-m``."""
    f = q.field
    if m == 0:
        return f.zero()
    if m > 0:
        acc = f.zero()
        power = f.one()
        for _ in range(m):
            acc = acc + power
            power = power * q
        return acc
    if q.is_zero():
        raise NegativeIndexNeedsUnit("(m)_q with m < 0 needs q invertible")
    qi = q.inverse()
    acc = f.zero()
    power = qi
    for _ in range(-m):
        acc = acc - power
        power = power * qi
    return acc


def q_characteristic(q: Scalar, search_bound: int) -> Union[int, _Unknown]:
    """Smallest ``p >= 1`` with ``(p)_q == 0``; 0 when none exists; else UNKNOWN."""
    if search_bound < 1:
        raise ValueError("search_bound must be positive")
    f = q.field
    if f.param is not None and not q.is_constant():
        # (m)_q is a nonzero polynomial in the parameter for all m >= 1
        return 0
    if q.is_one() and f.p == 0:
        return 0
    acc = f.zero()
    power = f.one()
    for m in range(1, search_bound + 1):
        acc = acc + power
        if acc.is_zero():
            return m
        power = power * q
    if f.p:
        # q lies in F_p: (m)_q vanishes iff q^m = 1 (q != 1) or p | m (q = 1)
        if search_bound >= f.p:
            return 0
        return UNKNOWN
    # constant q over a characteristic-zero field is rational; the only
    # roots of unity are +-1 and q = -1 is caught at m = 2
    return 0
