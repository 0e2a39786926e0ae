"""Seeded random elements for the verification suites and tests."""

from __future__ import annotations

import random

from .oreweyl import OreAlgebra
from .scalars import FieldSpec, Scalar
from .twistalg import LAURENT, RATFUNC, CoeffAlgebra


def random_scalar(f: FieldSpec, rng: random.Random, nonzero=False, spread=5) -> Scalar:
    while True:
        if f.param is not None and rng.random() < 0.4:
            coeffs = [rng.randint(-spread, spread) for _ in range(rng.randint(1, 3))]
            c = f.from_poly(coeffs)
        else:
            num = rng.randint(-spread, spread)
            den = rng.randint(1, 3) if not f.p else 1
            c = f(num) / f(den)
        if not (nonzero and c.is_zero()):
            return c


def random_poly(alg: CoeffAlgebra, rng: random.Random, max_deg=3, terms=3, laurent=None):
    n = alg.n
    laurent = alg.mode == LAURENT if laurent is None else laurent
    out = alg.zero()
    for _ in range(rng.randint(1, terms)):
        if laurent:
            e = tuple(rng.randint(-max_deg, max_deg) for _ in range(n))
        else:
            e = tuple(rng.randint(0, max_deg) for _ in range(n))
        if sum(map(abs, e)) > max_deg:
            continue
        out = out + alg.monomial(e, random_scalar(alg.field, rng))
    return out


def random_coeff(alg: CoeffAlgebra, rng: random.Random, max_deg=3, terms=3, nonzero=False):
    while True:
        f = random_poly(alg, rng, max_deg, terms)
        if alg.mode == RATFUNC and rng.random() < 0.5:
            den = random_poly(alg, rng, 2, 2)
            if not den.is_zero():
                f = f / den
        if not (nonzero and f.is_zero()):
            return f


def random_operator(alg: OreAlgebra, rng: random.Random, max_order=2, terms=3, max_deg=2):
    out = alg.zero()
    m = alg.m
    for _ in range(rng.randint(1, terms)):
        u = [0] * m
        for _ in range(rng.randint(0, max_order)):
            u[rng.randrange(m)] += 1
        out = out + alg.term(random_coeff(alg.coeffs, rng, max_deg, 2), tuple(u))
    return out


def random_matrix(alg: CoeffAlgebra, rng: random.Random, r: int, max_deg=1, terms=2):
    return tuple(
        tuple(random_coeff(alg, rng, max_deg, terms) for _ in range(r)) for _ in range(r)
    )

