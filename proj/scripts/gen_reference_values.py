#!/usr/bin/env python3
"""Regenerates tests/reference_values.hpp.

Every constant is derived independently of the C++ library:

* z_M, d1, d2 at xi = 1.1 use exact rational arithmetic (fractions.Fraction)
  over the exact binary64 values of the anchor data and of the double literal
  1.1, so the brackets enclose the mathematically exact values the library's
  interval evaluation must contain.
* rho+ (the larger fixed-point coordinate) uses 60-digit decimal arithmetic
  (mpmath) on the exact binary64 parameter values.

Each value is emitted as a [lo, hi] bracket of doubles two ulps outward of
the correctly rounded value, so `bracket subset-of enclosure` style
assertions never fail from the final decimal-to-double rounding.

Usage: python3 scripts/gen_reference_values.py > tests/reference_values.hpp
"""

import math
from fractions import Fraction

import mpmath

# Anchor Y values along the two homoclinic branches, mother first.
Y_M = 3.3127
YS_BRANCH1 = [2.5032, -2.2401, -3.7312, 3.7495]
YS_BRANCH2 = [2.2300, -3.5459, 3.7421]

MU = -9.5
BETA = 0.3


def branch_sum(xi, ys):
    """c_a(xi) = Y_M xi^{n-1} + y_1 xi^{n-2} + ... + y_{n-1} (Horner)."""
    acc = Fraction(Y_M)
    for y in ys:
        acc = acc * xi + Fraction(y)
    return acc


def zm_exact(xi):
    """z_M = (c_1 + c_2) / (2 - xi^5 - xi^4), exactly."""
    c1 = branch_sum(xi, YS_BRANCH1)
    c2 = branch_sum(xi, YS_BRANCH2)
    return (c1 + c2) / (2 - xi**5 - xi**4)


def drifts_exact(xi):
    """d_a = xi^{n_a} z_M + c_a - z_M for n_1 = 5, n_2 = 4, exactly."""
    z = zm_exact(xi)
    d1 = xi**5 * z + branch_sum(xi, YS_BRANCH1) - z
    d2 = xi**4 * z + branch_sum(xi, YS_BRANCH2) - z
    return d1, d2


def bracket_fraction(v):
    """[lo, hi] doubles, two ulps outward of the exact rational v."""
    mid = float(v)  # correctly rounded
    lo = math.nextafter(math.nextafter(mid, -math.inf), -math.inf)
    hi = math.nextafter(math.nextafter(mid, math.inf), math.inf)
    assert Fraction(lo) < v < Fraction(hi)
    return lo, hi


def bracket_mpf(v):
    mid = float(v)
    lo = math.nextafter(math.nextafter(mid, -math.inf), -math.inf)
    hi = math.nextafter(math.nextafter(mid, math.inf), math.inf)
    assert mpmath.mpf(lo) < v < mpmath.mpf(hi)
    return lo, hi


def emit(name, pair, comment):
    lo, hi = pair
    print(f"// {comment}")
    print(f"inline constexpr double {name}Lo = {lo!r};")
    print(f"inline constexpr double {name}Hi = {hi!r};")
    print()


def main():
    mpmath.mp.dps = 60

    xi_ref = Fraction(1.1)  # the exact binary64 value of the literal 1.1
    z = zm_exact(xi_ref)
    d1, d2 = drifts_exact(xi_ref)

    disc = (1 - Fraction(BETA)) ** 2 - 4 * Fraction(MU)
    rho_plus = ((1 - Fraction(BETA)) + mpmath.sqrt(mpmath.mpf(disc.numerator) /
                                                   mpmath.mpf(disc.denominator))) / 2

    print("#pragma once")
    print()
    print("// Generated by scripts/gen_reference_values.py -- do not edit by hand.")
    print("// Brackets [lo, hi] enclose exact values computed with rational /")
    print("// 60-digit arithmetic from the exact binary64 inputs.")
    print()
    print("namespace bcert::ref {")
    print()
    emit("kZM11", bracket_fraction(z),
         "z_M at the binary64 point xi = 1.1 (exact rational evaluation)")
    emit("kD111", bracket_fraction(d1),
         "branch-1 loop drift d_1 at xi = 1.1")
    emit("kD211", bracket_fraction(d2),
         "branch-2 loop drift d_2 at xi = 1.1")
    emit("kZM101", bracket_fraction(zm_exact(Fraction(1.01))),
         "z_M at the binary64 point xi = 1.01")
    emit("kZM1125", bracket_fraction(zm_exact(Fraction(1.125))),
         "z_M at the binary64 point xi = 1.125")
    emit("kRhoPlus", bracket_mpf(rho_plus),
         "rho+ = ((1-beta) + sqrt((1-beta)^2 - 4 mu)) / 2 at mu=-9.5, beta=0.3")
    print("}  // namespace bcert::ref")


if __name__ == "__main__":
    main()
