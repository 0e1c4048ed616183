#pragma once

#include "crkit/eigen3.hpp"
#include "crkit/errors.hpp"

namespace crkit {

/// Matrix exponential by scaling-and-squaring of the power series.
inline Mat3 mat_exp(const Mat3& x) {
    const double n = frob(x);
    int s = 0;
    if (n > 0.5) s = static_cast<int>(std::ceil(std::log2(n / 0.5)));
    const Mat3 a = x / cplx(std::pow(2.0, s));

    Mat3 sum = Mat3::identity();
    Mat3 term = Mat3::identity();
    for (int k = 1; k <= 40; ++k) {
        term = term * a / cplx(double(k));
        sum = sum + term;
        if (frob(term) < 1e-18 * std::max(1.0, frob(sum))) break;
    }
    for (int k = 0; k < s; ++k) sum = sum * sum;
    return sum;
}

namespace detail {

// Denman-Beavers iteration for the principal square root; requires no
// eigenvalue on the closed negative real axis.
inline Mat3 sqrt_db(const Mat3& m) {
    Mat3 y = m, z = Mat3::identity();
    for (int it = 0; it < 60; ++it) {
        const Mat3 yn = (y + inverse(z)) * cplx(0.5);
        const Mat3 zn = (z + inverse(y)) * cplx(0.5);
        const double step = frob(yn - y);
        y = yn;
        z = zn;
        if (step < 1e-15 * std::max(1.0, frob(y))) break;
    }
    return y;
}

inline Mat3 mercator_log(const Mat3& m, int max_terms = 96) {
    const Mat3 e = m - Mat3::identity();
    Mat3 sum = Mat3::zero();
    Mat3 pw = Mat3::identity();
    for (int k = 1; k <= max_terms; ++k) {
        pw = pw * e;
        const double sgn = (k % 2 == 1) ? 1.0 : -1.0;
        sum = sum + pw * cplx(sgn / double(k));
        if (frob(pw) / double(k) < 1e-18) break;
    }
    return sum;
}

}  // namespace detail

/// Matrix logarithm, dispatching on structure:
///  (a) M - I nilpotent (cubed norm below kNilpotent): exact Mercator sum
///      N - N^2/2, since N^3 = 0;
///  (b) diagonalizable: spectral log with the principal branch;
///  (c) defective, non-unipotent (the ellipto-parabolic case): inverse
///      scaling-and-squaring via repeated principal square roots.
/// Throws LogBranchFailure for an eigenvalue on the closed negative real
/// axis (unless case (a) applies) and NonConvergent if square roots fail to
/// bring ||M - I|| below 1/2.
inline Mat3 mat_log(const Mat3& m) {
    const Mat3 n = m - Mat3::identity();
    const Mat3 n3 = n * n * n;
    if (frob(n3) <= tol::kNilpotent * std::max(1.0, frob(n) * frob(n) * frob(n)))
        return n - n * n * cplx(0.5);

    const auto clusters = eigen_clusters(m);
    for (const auto& c : clusters) {
        const cplx& l = c.value;
        if (std::abs(l) < 1e-14)
            throw LogBranchFailure("singular matrix has no logarithm");
        if (l.real() < 0 && std::abs(l.imag()) <= 1e-12 * std::abs(l))
            throw LogBranchFailure("eigenvalue on the closed negative real axis");
    }

    bool diagonalizable = true;
    for (const auto& c : clusters)
        if (static_cast<int>(c.space.size()) < c.multiplicity) diagonalizable = false;

    if (diagonalizable) {
        std::array<Vec3, 3> basis;
        std::array<cplx, 3> values;
        std::size_t idx = 0;
        for (const auto& c : clusters)
            for (const auto& v : c.space) {
                if (idx < 3) {
                    basis[idx] = v;
                    values[idx] = c.value;
                    ++idx;
                }
            }
        const Mat3 vmat = Mat3::from_cols(basis[0], basis[1], basis[2]);
        if (std::abs(det(vmat)) > 1e-8) {
            const Mat3 d = Mat3::diag(std::log(values[0]), std::log(values[1]),
                                      std::log(values[2]));
            return vmat * d * inverse(vmat);
        }
        // ill-conditioned eigenbasis: fall through to square roots
    }

    Mat3 a = m;
    int k = 0;
    while (frob(a - Mat3::identity()) > 0.5) {
        a = detail::sqrt_db(a);
        if (++k > 60)
            throw NonConvergent("square roots failed to reduce ||M - I|| below 1/2");
    }
    return detail::mercator_log(a) * cplx(std::pow(2.0, k));
}

}  // namespace crkit
