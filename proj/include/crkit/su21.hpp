#pragma once

#include <random>

#include "crkit/expm.hpp"
#include "crkit/tol.hpp"

namespace crkit {

/// Hermitian form of the ball model, diag(1, 1, -1).
inline Mat3 form_j1() { return Mat3::diag(1, 1, -1); }

/// Hermitian form of the Siegel model, antidiag(1, 1, 1).
inline Mat3 form_j2() { return {0, 0, 1, 0, 1, 0, 1, 0, 0}; }

/// Cayley matrix conjugating the two forms; C^{-1} = C* = C and
/// C J2 C = J1 exactly.
inline Mat3 cayley() {
    const double s = 1.0 / std::sqrt(2.0);
    return {s, 0, s, 0, 1, 0, s, 0, -s};
}

struct GroupResidual {
    bool member = false;
    double residual = 0;
};

/// Test M* J M = J and det M = 1; returns the larger of the two residuals.
inline GroupResidual in_su21(const Mat3& m, const Mat3& j,
                             double eps = tol::kGroupMembership) {
    const double r1 = frob(adjoint(m) * j * m - j);
    const double r2 = std::abs(det(m) - cplx(1.0));
    const double r = std::max(r1, r2);
    return {r <= eps, r};
}

/// Project X onto the Lie algebra condition X* J + J X = 0, tr X = 0 is
/// assumed handled by the caller.
inline double su21_algebra_residual(const Mat3& x, const Mat3& j) {
    return std::max(frob(adjoint(x) * j + j * x), std::abs(trace(x)));
}

/// Seed-deterministic sample of SU(2,1) for the form J: the exponential of
/// a random trace-free X with X* J + J X = 0 and entries bounded by 1.
inline Mat3 random_su21(std::uint64_t seed, const Mat3& j) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);

    Mat3 s;  // skew-Hermitian
    for (std::size_t i = 0; i < 3; ++i) s(i, i) = cplx(0.0, u(rng));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = i + 1; k < 3; ++k) {
            const cplx v{u(rng), u(rng)};
            s(i, k) = v;
            s(k, i) = -std::conj(v);
        }

    Mat3 x = inverse(j) * s;
    x = x - Mat3::identity() * (trace(x) / 3.0);
    const double m = max_abs(x);
    if (m > 1.0) x = x / cplx(m);
    return mat_exp(x);
}

/// Random element of the Lie algebra su(2,1) for J, Frobenius norm <= bound.
inline Mat3 random_su21_algebra(std::uint64_t seed, const Mat3& j, double bound = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Mat3 s;
    for (std::size_t i = 0; i < 3; ++i) s(i, i) = cplx(0.0, u(rng));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = i + 1; k < 3; ++k) {
            const cplx v{u(rng), u(rng)};
            s(i, k) = v;
            s(k, i) = -std::conj(v);
        }
    Mat3 x = inverse(j) * s;
    x = x - Mat3::identity() * (trace(x) / 3.0);
    const double n = frob(x);
    if (n > bound) x = x * cplx(bound / n);
    return x;
}

}  // namespace crkit
