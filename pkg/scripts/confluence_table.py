"""Tabulate both sides of the confluence identity on x^n.

For sigma(x) = r^2 x and its square root sigma_2(x) = r x, the sigma-derivative
satisfies d_sigma = d_2 + c x d_2^2 with c = r(r - 1)/(r + 1).  This prints the
quantum-integer coefficients of each side for n = 0..N over Q(t), and checks a
few specialisations of r over prime fields.
"""

import argparse

from twistcalc.config import parse_config
from twistcalc.verify import CONFLUENCE_RING, verify_confluence


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=8)
    args = ap.parse_args()

    cfg = parse_config(CONFLUENCE_RING)
    t = cfg.twist
    x = cfg.coeffs.gen(0)
    res = verify_confluence(cfg, args.max_n)
    c = cfg.coeffs.const(cfg.field.gen() * (cfg.field.gen() - 1) / (cfg.field.gen() + 1))
    print(f"c = {res.details['coefficient']}")
    print(f"{'n':>3}  {'d_sigma(x^n)':<40} agrees")
    for n in range(args.max_n + 1):
        lhs = t.partial(0, x**n)
        d2 = t.partial(1, x**n)
        rhs = d2 + c * x * t.partial(1, d2)
        print(f"{n:>3}  {str(lhs):<40} {lhs == rhs}")
    print(f"suite status over Q(t): {res.status}")
    print(f"with a polynomial base Q[t]: {verify_confluence(cfg, polynomial_base=True).status}")

    for p, r in [(7, 2), (11, 3), (13, 5)]:
        spec = f"field = GF({p}); generators = x; twist x = {r * r % p}*x; twist x = {r}*x"
        out = verify_confluence(parse_config(spec), args.max_n)
        print(f"GF({p}), r = {r}: {out.status} ({out.checks} checks, c = {out.details.get('coefficient')})")


if __name__ == "__main__":
    main()
