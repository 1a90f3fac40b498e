#pragma once

// Generated by scripts/gen_reference_values.py -- do not edit by hand.
// Brackets [lo, hi] enclose exact values computed with rational /
// 60-digit arithmetic from the exact binary64 inputs.

namespace bcert::ref {

// z_M at the binary64 point xi = 1.1 (exact rational evaluation)
inline constexpr double kZM11Lo = -11.227939410576855;
inline constexpr double kZM11Hi = -11.227939410576848;

// branch-1 loop drift d_1 at xi = 1.1
inline constexpr double kD111Lo = -1.7382270195512797;
inline constexpr double kD111Hi = -1.7382270195512788;

// branch-2 loop drift d_2 at xi = 1.1
inline constexpr double kD211Lo = 1.7382270195512788;
inline constexpr double kD211Hi = 1.7382270195512797;

// z_M at the binary64 point xi = 1.01
inline constexpr double kZM101Lo = -104.46827123893611;
inline constexpr double kZM101Hi = -104.46827123893605;

// z_M at the binary64 point xi = 1.125
inline constexpr double kZM1125Lo = -9.174289585009026;
inline constexpr double kZM1125Hi = -9.174289585009019;

// rho+ = ((1-beta) + sqrt((1-beta)^2 - 4 mu)) / 2 at mu=-9.5, beta=0.3
inline constexpr double kRhoPlusLo = 3.452015473849219;
inline constexpr double kRhoPlusHi = 3.4520154738492206;

}  // namespace bcert::ref
