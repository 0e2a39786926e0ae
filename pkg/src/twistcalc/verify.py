"""Identity checks run by ``twistcalc verify``.

Each suite returns a :class:`SuiteResult`; failures are results, not errors.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .config import RingConfig, parse_config
from .errors import TwistError
from .oreweyl import GRADED, WEYL, OreAlgebra, ore_apply
from .randgen import random_coeff, random_operator
from .twistalg import POLY, CoeffAlgebra, TwistSpec, derivation_power_formula_check, schwarz_check

SUITES = ("leibniz", "schwarz", "genD1", "representation", "confluence")

CONFLUENCE_RING = """\
field = Q(t)
generators = x
twist x = t^2*x
twist x = t*x
"""


@dataclass
class SuiteResult:
    suite: str
    status: str  # "pass", "fail" or "inexpressible"
    checks: int = 0
    counterexample: str | None = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def as_dict(self):
        return {
            "suite": self.suite,
            "status": self.status,
            "checks": self.checks,
            "counterexample": self.counterexample,
            "details": self.details,
        }


def verify_leibniz(cfg: RingConfig, seed: int = 0, trials: int = 20) -> SuiteResult:
    """Twisted Leibniz rule, multiplicativity of sigma and ``sigma = 1 - y d``."""
    rng = random.Random(seed)
    t = cfg.twist
    alg = t.alg
    checks = 0
    for _ in range(trials):
        f = random_coeff(alg, rng)
        g = random_coeff(alg, rng)
        for i in range(len(t)):
            d, s, y = t.partial, t.sigma, t.y(i)
            cases = [
                ("leibniz", d(i, f * g), d(i, f) * g + s(i, f) * d(i, g)),
                ("multiplicative", s(i, f * g), s(i, f) * s(i, g)),
                ("sigma = 1 - y*d", s(i, f), f - y * d(i, f)),
            ]
            for name, lhs, rhs in cases:
                checks += 1
                if lhs != rhs:
                    return SuiteResult(
                        "leibniz", "fail", checks, f"{name}: i={i + 1}, f={f}, g={g}"
                    )
    return SuiteResult("leibniz", "pass", checks)


def verify_schwarz(cfg: RingConfig) -> SuiteResult:
    ok, bad = schwarz_check(cfg.twist)
    if ok:
        return SuiteResult("schwarz", "pass", 1)
    kind, i, j, k = bad[0]
    what = "sigma/partial" if kind == "sd" else "partial/partial"
    ce = f"{what} pair ({i + 1}, {j + 1}) differs on {cfg.names[k]}"
    return SuiteResult("schwarz", "fail", 1, ce, {"violations": len(bad)})


def verify_genD1(cfg: RingConfig, max_k: int = 12) -> SuiteResult:
    """Closed forms for derivatives of powers versus the Leibniz recursion."""
    t = cfg.twist
    if t.alg.mode != POLY:
        poly = CoeffAlgebra(t.alg.field, t.alg.names, POLY)
        t = TwistSpec(poly, t.twists)
    checks = 0
    for i in range(len(t)):
        for k in range(1, max_k + 1):
            checks += 1
            if not derivation_power_formula_check(t, i, k):
                return SuiteResult("genD1", "fail", checks, f"twist {i + 1}, k={k}")
    return SuiteResult("genD1", "pass", checks)


def verify_representation(cfg: RingConfig, seed: int = 0, trials: int = 20) -> SuiteResult:
    """Operator application is a ring homomorphism, in every available kind."""
    rng = random.Random(seed)
    kinds = [GRADED]
    if schwarz_check(cfg.twist)[0]:
        kinds.append(WEYL)
    checks = 0
    for kind in kinds:
        alg = OreAlgebra(cfg.twist, kind)
        for _ in range(trials):
            A = random_operator(alg, rng)
            B = random_operator(alg, rng)
            f = random_coeff(alg.coeffs, rng)
            checks += 2
            if ore_apply(A * B, f) != ore_apply(A, ore_apply(B, f)):
                return SuiteResult("representation", "fail", checks, f"{kind}: P={A}, Q={B}, f={f}")
            if ore_apply(A + B, f) != ore_apply(A, f) + ore_apply(B, f):
                return SuiteResult("representation", "fail", checks, f"{kind}: sum P={A}, Q={B}, f={f}")
    return SuiteResult("representation", "pass", checks, details={"kinds": kinds})


def _confluence_pair(t: TwistSpec):
    tw = t.twists
    for i, a in enumerate(tw):
        for j, b in enumerate(tw):
            if i != j and a.var == b.var and a.h.is_zero() and b.h.is_zero() and a.q == b.q * b.q:
                return i, j
    return None


def verify_confluence(cfg: RingConfig | None = None, max_n: int = 20, polynomial_base: bool = False) -> SuiteResult:
    """``d_sigma = d_root + c * x * d_root^2`` with ``c = r(r-1)/(r+1)`` for a
    twist ``x -> r^2 x`` and its square root ``x -> r x``, checked on ``x^n``."""
    cfg = cfg or parse_config(CONFLUENCE_RING)
    t = cfg.twist
    pair = _confluence_pair(t)
    if pair is None:
        return SuiteResult(
            "confluence", "fail", 0, "ring needs twists x -> r^2*x and x -> r*x on one generator"
        )
    i, j = pair
    alg = t.alg
    r = t.twists[j].q
    if (r + 1).is_zero():
        return SuiteResult("confluence", "fail", 0, "r + 1 = 0: the connecting coefficient is undefined")
    c = r * (r - 1) / (r + 1)
    details = {"coefficient": str(c), "schwarz": schwarz_check(t)[0]}
    if polynomial_base and c.field.param is not None and len(c.value[1]) > 1:
        details["reason"] = f"coefficient {c} has a denominator in {c.field.param}"
        return SuiteResult("confluence", "inexpressible", 0, None, details)
    x = alg.gen(t.twists[j].var)
    cx = alg.const(c) * x
    checks = 0
    for n in range(max_n + 1):
        f = x ** n
        lhs = t.partial(i, f)
        dj = t.partial(j, f)
        rhs = dj + cx * t.partial(j, dj)
        checks += 1
        if lhs != rhs:
            return SuiteResult("confluence", "fail", checks, f"n={n}", details)
    return SuiteResult("confluence", "pass", checks, None, details)


def run_suite(name: str, cfg: RingConfig | None, seed: int = 0, **opts) -> SuiteResult:
    if name == "confluence":
        return verify_confluence(cfg, opts.get("max_n", 20), opts.get("polynomial_base", False))
    if cfg is None:
        raise TwistError(f"suite {name!r} needs a ring configuration")
    if name == "leibniz":
        return verify_leibniz(cfg, seed, opts.get("trials", 20))
    if name == "schwarz":
        return verify_schwarz(cfg)
    if name == "genD1":
        return verify_genD1(cfg, opts.get("max_k", 12))
    if name == "representation":
        return verify_representation(cfg, seed, opts.get("trials", 20))
    raise TwistError(f"unknown suite {name!r}")
