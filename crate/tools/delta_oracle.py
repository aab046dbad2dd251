"""Reference table N,delta,realization_count for the Weil-polynomial
discriminant fixture.

Realizations of N: prime powers q <= (ceil(N^(1/4)) + 1)^2 and integers a, b
with (q+1)^2 - a(q+1) + b = N and 2|a|sqrt(q) - 4q <= b <= a^2/4 <= 4q.
delta is the smallest discriminant of Q[T]/(f) over irreducible f, else 0.

Field discriminants come from PARI (nfdisc).

Usage: python3 tools/delta_oracle.py 200 > crates/core/tests/fixtures/minimal_delta.csv
"""
import sys

from cypari import pari
from sympy import Rational, factorint, integer_nthroot, sqrt


def is_prime_power(q):
    return q >= 2 and len(factorint(q)) == 1


def wedge(q, a, b):
    # evaluated symbolically, independent of the integer-squared form
    return 2 * abs(a) * sqrt(q) - 4 * q <= b and Rational(b) <= Rational(a * a, 4) and Rational(a * a, 4) <= 4 * q


def q_bound(n):
    r, exact = integer_nthroot(n, 4)
    if not exact:
        r += 1
    return (r + 1) ** 2


def realizations(n):
    out = []
    for q in range(2, q_bound(n) + 1):
        if not is_prime_power(q):
            continue
        for a in range(-4 * q, 4 * q + 1):
            b = n - (q + 1) ** 2 + a * (q + 1)
            if wedge(q, a, b):
                out.append((q, a, b))
    return out


def field_disc(q, a, b):
    f = pari(f"(x^2 + {q})^2 - ({a})*x*(x^2 + {q}) + ({b})*x^2")
    if not pari.polisirreducible(f):
        return None
    return int(pari.nfdisc(f))


def main():
    top = int(sys.argv[1]) if len(sys.argv) > 1 else 200
    print("N,delta,realization_count")
    for n in range(1, top + 1):
        rs = realizations(n)
        ds = [d for d in (field_disc(*r) for r in rs) if d is not None]
        delta = min(ds, key=abs) if ds else 0
        print(f"{n},{delta},{len(rs)}")


if __name__ == "__main__":
    main()
