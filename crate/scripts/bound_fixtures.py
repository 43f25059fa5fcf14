#!/usr/bin/env python3
"""Independent evaluation of the number-field bound formulas.

Uses mpmath at 200 significant digits for the logarithms and exact
fractions for everything else. The printed values are frozen into the
Rust test suites as regression fixtures.
"""
from fractions import Fraction
from math import comb, factorial
import mpmath

mpmath.mp.dps = 200


def ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def T(x, r, t, d, m, B, alpha):
    num = 20 * r * d * (m + mpmath.log(mpmath.mpf(2) ** (m + t) * mpmath.mpf(B.numerator) / B.denominator))
    den = mpmath.mpf(x.numerator) / x.denominator * t * mpmath.log(mpmath.mpf(alpha.numerator) / alpha.denominator)
    return num / den


def tau(x, *args):
    tv = T(x, *args)
    return max(mpmath.mpf(10), 2 * tv * mpmath.log(tv)), tv


def a_const(t, ms):
    r = len(ms)
    ap = sum(comb(t + mi, t) for mi in ms)
    a = max(t, r) if all(mi == 0 for mi in ms) else ap
    return ap, a


def subspace_factor(r, d, s, eps):
    base = Fraction(2) ** (60 * r * r) * (Fraction(10, 22 * d) * eps) ** (-7 * r)
    return base ** s


def thm21(r, t, d, s, ms, B, alpha, eps):
    ta, _ = tau(eps / (2 * d), r, t, d, max(ms), B, alpha)
    first = (int(mpmath.ceil(ta)) + 1) ** t
    _, a = a_const(t, ms)
    re = int(mpmath.ceil(mpmath.mpf(factorial(r)) / mpmath.e))
    second = re * Fraction(2) ** (35 * a ** 3) * Fraction(d) ** (6 * a * a) * 2 * subspace_factor(r, d, s, eps)
    return first, second


def fixtures():
    out = {"thm21": [], "cor23": [], "rem24": []}
    tuples = [
        ("A", 1, 1, 1, 1, [0], Fraction(1), Fraction(2), Fraction(1)),
        ("B", 2, 1, 1, 3, [0, 0], Fraction(1), Fraction(3), Fraction(1, 10)),
        ("C", 2, 2, 2, 2, [1, 0], Fraction(3), Fraction(5, 2), Fraction(1, 3)),
    ]
    for name, r, t, d, s, ms, B, alpha, eps in tuples:
        first, second = thm21(r, t, d, s, ms, B, alpha, eps)
        params = {"name": name, "r": r, "t": t, "d": d, "s": s, "m": ms,
                  "B": str(B), "alpha_max": str(alpha), "epsilon": str(eps)}
        out["thm21"].append(dict(params, value=str(ceil_frac(first + second))))
        out["cor23"].append(dict(params, value=str(ceil_frac(2 ** (r - 1) * (first + second)))))
    rem = [
        ("A", 1, 1, 1, 1, Fraction(1), Fraction(2), Fraction(1)),
        ("B", 2, 1, 1, 3, Fraction(1), Fraction(3), Fraction(1, 10)),
        ("D", 3, 1, 1, 2, Fraction(2), Fraction(7), Fraction(1, 2)),
    ]
    for name, r, t, d, s, B, alpha, eps in rem:
        ta, _ = tau(eps / (2 * d), r, t, d, 0, B, alpha)
        first = (int(mpmath.ceil(ta)) + 1) ** t
        n_exp = (6 * (r - 1)) ** (3 * (r - 1)) * (r * (s - 1) + 1)
        c2 = int(mpmath.ceil(2 * mpmath.mpf(factorial(r)) / mpmath.e))
        cof = c2 * subspace_factor(r, d, s, eps)
        total = mpmath.mpf(first) + mpmath.exp(n_exp) * mpmath.mpf(cof.numerator) / cof.denominator
        out["rem24"].append({"name": name, "r": r, "t": t, "d": d, "s": s, "m": [0] * r,
                             "B": str(B), "alpha_max": str(alpha), "epsilon": str(eps),
                             "first_summand": str(first), "exp_exponent": str(n_exp),
                             "cofactor": f"{cof.numerator}/{cof.denominator}" if cof.denominator != 1 else str(cof.numerator),
                             "log2": mpmath.nstr(mpmath.log(total, 2), 25)})
    return out


def main():
    tuples = [
        ("A", 1, 1, 1, 1, [0], Fraction(1), Fraction(2), Fraction(1)),
        ("B", 2, 1, 1, 3, [0, 0], Fraction(1), Fraction(3), Fraction(1, 10)),
        ("C", 2, 2, 2, 2, [1, 0], Fraction(3), Fraction(5, 2), Fraction(1, 3)),
    ]
    print("# tau checks")
    t80 = T(Fraction(1, 2), 2, 1, 1, 0, Fraction(1), Fraction(2))
    print("T(1/2) =", mpmath.nstr(t80, 30))
    print("tau(1/2) =", mpmath.nstr(tau(Fraction(1, 2), 2, 1, 1, 0, Fraction(1), Fraction(2))[0], 30))
    for name, r, t, d, s, ms, B, alpha, eps in tuples:
        first, second = thm21(r, t, d, s, ms, B, alpha, eps)
        ta, tv = tau(eps / (2 * d), r, t, d, max(ms), B, alpha)
        thm = ceil_frac(first + second)
        cor = ceil_frac(2 ** (r - 1) * (first + second))
        print(f"[{name}] T = {mpmath.nstr(tv, 25)} tau = {mpmath.nstr(ta, 25)} ceil(tau) = {int(mpmath.ceil(ta))}")
        print(f"[{name}] thm21 bits={thm.bit_length()} value={thm}")
        print(f"[{name}] cor23 bits={cor.bit_length()} value={cor}")
    rem = [
        ("A", 1, 1, 1, 1, Fraction(1), Fraction(2), Fraction(1)),
        ("B", 2, 1, 1, 3, Fraction(1), Fraction(3), Fraction(1, 10)),
        ("D", 3, 1, 1, 2, Fraction(2), Fraction(7), Fraction(1, 2)),
    ]
    for name, r, t, d, s, B, alpha, eps in rem:
        ta, _ = tau(eps / (2 * d), r, t, d, 0, B, alpha)
        first = (int(mpmath.ceil(ta)) + 1) ** t
        n_exp = (6 * (r - 1)) ** (3 * (r - 1)) * (r * (s - 1) + 1)
        c2 = int(mpmath.ceil(2 * mpmath.mpf(factorial(r)) / mpmath.e))
        cof = c2 * subspace_factor(r, d, s, eps)
        total = mpmath.mpf(first) + mpmath.exp(n_exp) * mpmath.mpf(cof.numerator) / cof.denominator
        print(f"[rem24 {name}] first={first} N={n_exp} ceil2r!/e={c2} cofactor={cof} log2={mpmath.nstr(mpmath.log(total, 2), 20)}")


if __name__ == "__main__":
    import json
    import sys
    if "--json" in sys.argv:
        print(json.dumps(fixtures(), indent=2))
    else:
        main()
