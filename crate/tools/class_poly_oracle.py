"""Independent reference for Hilbert class polynomials using mpmath.

Evaluates j(tau) through Klein's j via mpmath's kleinj at the reduced forms and
rounds the product. Used once to freeze expected values in the Rust tests.
"""
import sys
from math import gcd, isqrt
import mpmath


def reduced_forms(d):
    out = []
    a = 1
    while 3 * a * a <= -d:
        for b in range(-a + 1, a + 1):
            if (b * b - d) % (4 * a) == 0:
                c = (b * b - d) // (4 * a)
                if c < a or (a == c and b < 0):
                    continue
                if gcd(gcd(a, b), c) != 1:
                    continue
                out.append((a, b, c))
        a += 1
    return out


def hilbert(d, dps=400):
    mpmath.mp.dps = dps
    poly = [mpmath.mpc(1)]
    for a, b, c in reduced_forms(d):
        tau = (-b + mpmath.sqrt(mpmath.mpf(d))) / (2 * a)
        j = 1728 * mpmath.kleinj(tau)
        new = [mpmath.mpc(0)] * (len(poly) + 1)
        for i, co in enumerate(poly):
            new[i + 1] += co
            new[i] -= co * j
        poly = new
    out = []
    for co in poly:
        r = int(mpmath.nint(co.real))
        assert abs(co.real - r) < 1e-20 and abs(co.imag) < 1e-20, (d, co)
        out.append(r)
    return out


if __name__ == "__main__":
    for d in map(int, sys.argv[1:]):
        print(d, ",".join(map(str, hilbert(d))))
