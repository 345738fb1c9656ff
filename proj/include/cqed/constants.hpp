#pragma once

#include <numbers>

namespace cqed {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// CODATA 2018
inline constexpr double kHbar = 1.054571817e-34;        // J s
inline constexpr double kEpsilon0 = 8.8541878128e-12;   // F / m

// Default Fock-space truncation. Everything the simulator models lives in
// the {0, 1} photon manifold plus small coherent fields, so 15 leaves ample
// headroom while keeping states tiny.
inline constexpr int kDefaultNmax = 15;

// Tolerance for state normalization and for coherent-state truncation leak.
inline constexpr double kNormTol = 1e-10;
inline constexpr double kLeakTol = 1e-10;

}  // namespace cqed
