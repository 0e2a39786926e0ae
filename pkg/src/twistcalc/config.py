"""Ring configuration files.

Line-oriented ``key = value`` pairs; ``#`` starts a comment; ``;`` may stand
in for a newline (handy on the command line)::

    config    := { line }
    line      := [ entry ] [ "#" comment ] NEWLINE
    entry     := "field" "=" field
               | "generators" "=" IDENT { "," IDENT }
               | "mode" "=" ( "poly" | "laurent" | "ratfunc" )
               | "twist" IDENT "=" expr          (affine in that generator)
               | "inversive" "=" ( "true" | "false" )
               | "kind" "=" ( "graded" | "weyl" )
    field     := ( "Q" | "GF(" PRIME ")" ) [ "(" IDENT ")" ]

Generators without a ``twist`` line get the identity twist.  Several twist
lines on the same generator define a family of commuting twists on it (one
operator variable each); otherwise twists follow generator order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import expr as E
from .errors import InvalidTwist, ParseError, TwistError, UnknownSymbol
from .oreweyl import GRADED, WEYL, OreAlgebra, OreOperator
from .scalars import FieldSpec, Scalar
from .twistalg import MODES, POLY, CoeffAlgebra, CoeffElem, Twist, TwistSpec

_FIELD = re.compile(r"^(?:Q|QQ|GF\((\d+)\)|F_?(\d+))(?:\(([A-Za-z_][A-Za-z_0-9]*)\))?$")
_RESERVED = re.compile(r"^(?:T|d)\d*$")


def parse_field(text: str, line=1, col=1) -> FieldSpec:
    m = _FIELD.match(text.replace(" ", ""))
    if not m:
        raise ParseError(f"cannot read field {text!r} (try Q, GF(5), Q(q))", line, col)
    p = int(m.group(1) or m.group(2) or 0)
    try:
        return FieldSpec(p, m.group(3))
    except ValueError as exc:
        raise ParseError(str(exc), line, col) from None


@dataclass
class RingConfig:
    field: FieldSpec
    names: tuple
    mode: str = POLY
    twist_specs: list = field(default_factory=list)  # (generator index, q, h)
    inversive: bool = False
    kind: str = WEYL
    source: str = ""

    def __post_init__(self):
        self.coeffs = CoeffAlgebra(self.field, tuple(self.names), self.mode)
        self.twist = TwistSpec(self.coeffs, [Twist(v, q, h) for v, q, h in self.twist_specs])

    @property
    def strong(self) -> bool:
        return self.twist.strong

    def algebra(self, kind: str | None = None) -> OreAlgebra:
        kind = kind or self.kind
        return OreAlgebra(self.twist, kind, self.inversive if kind == GRADED else False)

    def summary(self) -> dict:
        tw = []
        for t in self.twist.twists:
            nm = self.names[t.var]
            img = self.coeffs.gen(t.var) * self.coeffs.const(t.q) + self.coeffs.const(t.h)
            tw.append(f"{nm} -> {img}")
        return {
            "field": str(self.field),
            "generators": list(self.names),
            "mode": self.mode,
            "twists": tw,
            "strong": self.strong,
            "inversive": self.inversive,
        }

    # expression parsing -----------------------------------------------------
    def _scalar_symbols(self):
        f = self.field
        return {f.param: f.gen()} if f.param else {}

    def parse_scalar(self, text: str, line=1, col=1) -> Scalar:
        node = E.parse(text, line, col)
        return E.evaluate(node, self._scalar_symbols(), self.field)

    def _coeff_symbols(self):
        syms = {k: self.coeffs.const(v) for k, v in self._scalar_symbols().items()}
        for i, nm in enumerate(self.names):
            syms[nm] = self.coeffs.gen(i)
        return syms

    def parse_coeff(self, text: str, line=1, col=1) -> CoeffElem:
        node = E.parse(text, line, col)
        return E.evaluate(node, self._coeff_symbols(), self.coeffs)

    def operator_kind(self, text: str):
        """``'graded'``, ``'weyl'`` or None, from the operator symbols used."""
        names = E.symbols_in(E.parse(text))
        has_t = any(re.fullmatch(r"T\d*", s) for s in names)
        has_d = any(re.fullmatch(r"d\d*", s) for s in names)
        if has_t and has_d:
            raise ParseError("an expression cannot mix T and d operators")
        return GRADED if has_t else WEYL if has_d else None

    def parse_operator(self, text: str, kind: str | None = None) -> OreOperator:
        kind = kind or self.operator_kind(text) or self.kind
        alg = self.algebra(kind)
        letter = alg.letter
        syms = {k: alg.coeff(v) for k, v in self._coeff_symbols().items()}
        for i in range(alg.m):
            syms[f"{letter}{i + 1}"] = alg.var(i)
        if alg.m == 1:
            syms[letter] = alg.var(0)
        node = E.parse(text)
        other = "d" if letter == "T" else "T"
        stray = [s for s in E.symbols_in(node) if re.fullmatch(other + r"\d*", s)]
        if stray:
            raise UnknownSymbol(f"{stray[0]!r} does not belong to the {kind} algebra")
        return E.evaluate(node, syms, lambda n: alg.coeff(n))

    def parse_matrix(self, text: str):
        rows = E.parse_matrix(text)
        syms = self._coeff_symbols()
        return tuple(tuple(E.evaluate(c, syms, self.coeffs) for c in row) for row in rows)


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0]


def parse_config(source: str) -> RingConfig:
    """Load and validate a ring configuration; errors carry ``line:col``."""
    entries = {}
    twists = []
    lines = source.replace(";", "\n").split("\n")
    for ln, raw in enumerate(lines, start=1):
        text = _strip_comment(raw)
        if not text.strip():
            continue
        if "=" not in text:
            col = len(raw) - len(raw.lstrip()) + 1
            raise ParseError("expected 'key = value'", ln, col)
        key, value = text.split("=", 1)
        vcol = len(key) + 2 + (len(value) - len(value.lstrip()))
        kcol = len(key) - len(key.lstrip()) + 1
        words = key.split()
        value = value.strip()
        if not words:
            raise ParseError("missing key", ln, kcol)
        if words[0] == "twist":
            if len(words) != 2:
                raise ParseError("expected 'twist <generator> = <expression>'", ln, kcol)
            twists.append((words[1], value, ln, vcol, kcol))
            continue
        if len(words) != 1:
            raise ParseError(f"unexpected key {key.strip()!r}", ln, kcol)
        k = words[0]
        if k not in ("field", "generators", "mode", "inversive", "kind"):
            raise ParseError(f"unknown key {k!r}", ln, kcol)
        if k in entries:
            raise ParseError(f"duplicate key {k!r}", ln, kcol)
        entries[k] = (value, ln, vcol)

    if "field" not in entries:
        raise ParseError("missing 'field'", 1, 1)
    if "generators" not in entries:
        raise ParseError("missing 'generators'", 1, 1)
    value, ln, col = entries["field"]
    fld = parse_field(value, ln, col)
    value, ln, col = entries["generators"]
    names = tuple(s.strip() for s in value.split(","))
    for nm in names:
        if not nm.isidentifier():
            raise ParseError(f"bad generator name {nm!r}", ln, col)
        if _RESERVED.match(nm):
            raise ParseError(f"generator name {nm!r} is reserved for operators", ln, col)
        if nm == fld.param:
            raise ParseError(f"generator {nm!r} clashes with the field parameter", ln, col)
    if len(set(names)) != len(names):
        raise ParseError("generator names must be distinct", ln, col)

    mode = POLY
    if "mode" in entries:
        value, ln, col = entries["mode"]
        mode = value.lower()
        if mode not in MODES:
            raise ParseError(f"mode must be one of {', '.join(MODES)}", ln, col)
    flags = {}
    for k in ("inversive",):
        if k in entries:
            value, ln, col = entries[k]
            if value.lower() not in ("true", "false"):
                raise ParseError(f"{k} must be true or false", ln, col)
            flags[k] = value.lower() == "true"
    kind = WEYL
    if "kind" in entries:
        value, ln, col = entries["kind"]
        kind = value.lower()
        if kind not in (GRADED, WEYL):
            raise ParseError("kind must be graded or weyl", ln, col)

    # twists are parsed as polynomials and must be affine in their generator
    poly = CoeffAlgebra(fld, names, POLY)
    syms = {nm: poly.gen(i) for i, nm in enumerate(names)}
    if fld.param:
        syms[fld.param] = poly.const(fld.gen())
    specs = []
    seen = set()
    for gen, text, ln, col, kcol in twists:
        if gen not in names:
            raise InvalidTwist(f"{ln}:{kcol}: twist of unknown generator {gen!r}")
        v = names.index(gen)
        try:
            img = E.evaluate(E.parse(text, ln, col), syms, poly)
        except ParseError:
            raise
        except TwistError as exc:
            raise InvalidTwist(f"{ln}:{col}: {exc}") from None
        bad = [e for e in img.num if any(a for j, a in enumerate(e) if j != v) or e[v] > 1]
        if bad:
            raise InvalidTwist(
                f"{ln}:{col}: twist of {gen} must be q*{gen} + h with constants q, h; got {img}"
            )
        unit = tuple(1 if j == v else 0 for j in range(len(names)))
        q = img.num.get(unit, fld.zero())
        h = img.num.get((0,) * len(names), fld.zero())
        specs.append((v, q, h, ln, col))
        seen.add(v)
    if len(twists) == len(seen):
        # at most one twist per generator: fill in identities, generator order
        for v in range(len(names)):
            if v not in seen:
                specs.append((v, fld.one(), fld.zero(), 0, 0))
        specs.sort(key=lambda s: s[0])
    try:
        cfg = RingConfig(
            fld,
            names,
            mode,
            [(v, q, h) for v, q, h, _, _ in specs],
            flags.get("inversive", False),
            kind,
            source,
        )
    except InvalidTwist as exc:
        loc = next(((ln, col) for _, _, _, ln, col in specs if ln), (1, 1))
        raise InvalidTwist(f"{loc[0]}:{loc[1]}: {exc}") from None
    if cfg.inversive:
        try:
            cfg.algebra(GRADED)
        except TwistError as exc:
            raise InvalidTwist(f"inversive operators unavailable: {exc}") from None
    return cfg


def load_config(path: str) -> RingConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
