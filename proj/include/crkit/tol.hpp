#pragma once

#include <cstdlib>

namespace crkit::tol {

// The source material states no norms or tolerances; these are frozen
// implementation choices (Frobenius norm throughout).
inline constexpr double kCubicResidual = 1e-9;
inline constexpr double kEigenResidual = 1e-9;
inline constexpr double kEigenCluster = 1e-7;    // relative eigenvalue clustering
inline constexpr double kUnitModulus = 1e-7;     // |lambda| - 1 window for loxodromy
inline constexpr double kNilpotent = 1e-10;      // (M-I)^3 = 0 test
inline constexpr double kGroupMembership = 1e-9; // A*JA = J and det = 1
inline constexpr double kBoundaryNull = 1e-10;   // Phi(v) = 0 relative window
inline constexpr double kProjectiveEq = 1e-8;
inline constexpr double kConjugation = 1e-8;     // normal-form residual
inline constexpr double kGoldmanGray = 1e-6;     // |f(tr)| ambiguity gate
inline constexpr int kDenomBound = 512;          // elliptic type rationalization
inline constexpr double kRationalTol = 1e-6;

/// SU(2,1)-membership tolerance used by CLI-facing checks; CRKIT_TOL
/// overrides the default.
inline double group_membership() {
    static const double value = [] {
        if (const char* s = std::getenv("CRKIT_TOL")) {
            char* end = nullptr;
            double v = std::strtod(s, &end);
            if (end != s && v > 0) return v;
        }
        return kGroupMembership;
    }();
    return value;
}

}  // namespace crkit::tol
