#pragma once

#include <algorithm>
#include <array>
#include <tuple>

#include "crkit/complex3.hpp"

namespace crkit {

namespace detail {

inline bool eigen_key_less(const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

inline cplx cubic_eval(cplx c2, cplx c1, cplx c0, cplx x) {
    return ((x + c2) * x + c1) * x + c0;
}

}  // namespace detail

/// Roots of x^3 + c2 x^2 + c1 x + c0. Cardano on the depressed cubic, with
/// the trigonometric form when all coefficients are real and three real
/// roots exist, then one Newton step per root. Roots are sorted by
/// (Re, Im) so downstream output is reproducible.
inline std::array<cplx, 3> cubic_roots(cplx c2, cplx c1, cplx c0) {
    const cplx shift = c2 / 3.0;
    const cplx p = c1 - c2 * c2 / 3.0;
    const cplx q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;

    std::array<cplx, 3> y;
    const double scale = std::max({1.0, std::abs(p), std::abs(q)});

    const bool real_coeffs = std::abs(c2.imag()) + std::abs(c1.imag()) + std::abs(c0.imag()) <
                             1e-14 * scale;
    const double disc_real = q.real() * q.real() / 4.0 + p.real() * p.real() * p.real() / 27.0;

    if (std::abs(p) < 1e-14 * scale && std::abs(q) < 1e-14 * scale) {
        y = {cplx(0), cplx(0), cplx(0)};
    } else if (real_coeffs && disc_real < 0) {
        // three distinct real roots
        const double pr = p.real(), qr = q.real();
        const double m = 2.0 * std::sqrt(-pr / 3.0);
        const double arg = std::clamp(3.0 * qr / (pr * m), -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k)
            y[k] = m * std::cos(theta - 2.0 * M_PI * k / 3.0);
    } else {
        const cplx s = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
        cplx u3 = -q / 2.0 + s;
        if (std::abs(u3) < std::abs(-q / 2.0 - s)) u3 = -q / 2.0 - s;
        const cplx u = std::pow(u3, 1.0 / 3.0);
        const cplx v = (std::abs(u) > 0) ? -p / (3.0 * u) : cplx(0);
        const cplx w(-0.5, std::sqrt(3.0) / 2.0);  // primitive cube root of 1
        y = {u + v, w * u + std::conj(w) * v, std::conj(w) * u + w * v};
    }

    std::array<cplx, 3> r;
    for (int k = 0; k < 3; ++k) {
        cplx x = y[k] - shift;
        // one Newton polish step
        const cplx f = detail::cubic_eval(c2, c1, c0, x);
        const cplx df = (3.0 * x + 2.0 * c2) * x + c1;
        if (std::abs(df) > 1e-12 * std::max(1.0, std::abs(f))) x -= f / df;
        r[k] = x;
    }
    std::sort(r.begin(), r.end(), detail::eigen_key_less);
    return r;
}

/// Coefficients of the characteristic polynomial of an SU(2,1) element with
/// trace z: X^3 - z X^2 + conj(z) X - 1.
inline std::tuple<cplx, cplx, cplx> char_poly_su21(cplx z) {
    return {-z, std::conj(z), cplx(-1.0)};
}

}  // namespace crkit
