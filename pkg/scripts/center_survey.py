"""Survey bounded centers of GF(p)[x][T] with sigma(x) = q x.

For every q in GF(p)* the center should be the slice of GF(p)[x^m][T^m], and
the centralizer of the coefficients the slice of GF(p)[x][T^m], where m is the
multiplicative order of q.  The script reports the observed dimensions and
whether they match that prediction.
"""

import argparse
import time

from twistcalc.config import parse_config
from twistcalc.oreweyl import COEFFS_ONLY, FULL_CENTER, GRADED, centralizer_basis


def order(q, p):
    k, a = 1, q % p
    while a != 1:
        a = a * q % p
        k += 1
    return k


def predicted(m, xb, ob):
    center = (xb // m + 1) * (ob // m + 1)
    cent = (xb + 1) * (ob // m + 1)
    return center, cent


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", type=int, nargs="+", default=[3, 5, 7])
    ap.add_argument("--x-bound", type=int, default=8)
    ap.add_argument("--op-bound", type=int, default=8)
    args = ap.parse_args()
    print(f"{'p':>3} {'q':>3} {'ord':>3} {'center':>7} {'cent':>5} {'match':>6} {'secs':>6}")
    for p in args.primes:
        for q in range(2, p):
            cfg = parse_config(f"field = GF({p}); generators = x; twist x = {q}*x")
            G = cfg.algebra(GRADED)
            t0 = time.perf_counter()
            z = centralizer_basis(G, FULL_CENTER, args.x_bound, args.op_bound)
            c = centralizer_basis(G, COEFFS_ONLY, args.x_bound, args.op_bound)
            dt = time.perf_counter() - t0
            m = order(q, p)
            ok = (len(z), len(c)) == predicted(m, args.x_bound, args.op_bound)
            print(f"{p:>3} {q:>3} {m:>3} {len(z):>7} {len(c):>5} {str(ok):>6} {dt:>6.2f}")


if __name__ == "__main__":
    main()
