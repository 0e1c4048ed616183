#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace crkit {

using cplx = std::complex<double>;

inline constexpr cplx iu{0.0, 1.0};

/// Column vector in C^3, the carrier for projective points and eigenvectors.
struct Vec3 {
    std::array<cplx, 3> e{};

    Vec3() = default;
    Vec3(cplx a, cplx b, cplx c) : e{a, b, c} {}

    cplx& operator[](std::size_t i) { return e[i]; }
    const cplx& operator[](std::size_t i) const { return e[i]; }
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec3 operator*(cplx s, const Vec3& v) { return {s * v[0], s * v[1], s * v[2]}; }
inline Vec3 operator*(const Vec3& v, cplx s) { return s * v; }
inline Vec3 operator/(const Vec3& v, cplx s) { return {v[0] / s, v[1] / s, v[2] / s}; }
inline Vec3 operator-(const Vec3& v) { return {-v[0], -v[1], -v[2]}; }

/// Euclidean Hermitian dot product, conjugate-linear in the first slot.
inline cplx dot(const Vec3& a, const Vec3& b) {
    return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1] + std::conj(a[2]) * b[2];
}
inline double norm(const Vec3& v) { return std::sqrt(std::real(dot(v, v))); }
inline Vec3 normalized(const Vec3& v) { return v / cplx(norm(v)); }

/// Bilinear cross product; a.cross(b) is bilinear-orthogonal to both rows.
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

/// Dense complex 3x3 matrix, row-major.
struct Mat3 {
    std::array<cplx, 9> m{};

    Mat3() = default;
    Mat3(cplx a, cplx b, cplx c,
         cplx d, cplx e, cplx f,
         cplx g, cplx h, cplx i)
        : m{a, b, c, d, e, f, g, h, i} {}

    cplx& operator()(std::size_t r, std::size_t c) { return m[3 * r + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return m[3 * r + c]; }

    static Mat3 identity() { return {1, 0, 0, 0, 1, 0, 0, 0, 1}; }
    static Mat3 zero() { return {}; }
    static Mat3 diag(cplx a, cplx b, cplx c) { return {a, 0, 0, 0, b, 0, 0, 0, c}; }

    Vec3 row(std::size_t r) const { return {m[3 * r], m[3 * r + 1], m[3 * r + 2]}; }
    Vec3 col(std::size_t c) const { return {m[c], m[3 + c], m[6 + c]}; }

    static Mat3 from_cols(const Vec3& a, const Vec3& b, const Vec3& c) {
        return {a[0], b[0], c[0], a[1], b[1], c[1], a[2], b[2], c[2]};
    }
};

inline Mat3 operator+(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (std::size_t i = 0; i < 9; ++i) r.m[i] = a.m[i] + b.m[i];
    return r;
}
inline Mat3 operator-(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (std::size_t i = 0; i < 9; ++i) r.m[i] = a.m[i] - b.m[i];
    return r;
}
inline Mat3 operator*(cplx s, const Mat3& a) {
    Mat3 r;
    for (std::size_t i = 0; i < 9; ++i) r.m[i] = s * a.m[i];
    return r;
}
inline Mat3 operator*(const Mat3& a, cplx s) { return s * a; }
inline Mat3 operator/(const Mat3& a, cplx s) { return (cplx(1.0) / s) * a; }
inline Mat3 operator-(const Mat3& a) { return cplx(-1.0) * a; }

inline Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            cplx s = 0;
            for (std::size_t k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
            r(i, j) = s;
        }
    return r;
}

inline Vec3 operator*(const Mat3& a, const Vec3& v) {
    Vec3 r;
    for (std::size_t i = 0; i < 3; ++i)
        r[i] = a(i, 0) * v[0] + a(i, 1) * v[1] + a(i, 2) * v[2];
    return r;
}

inline Mat3 transpose(const Mat3& a) {
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) r(i, j) = a(j, i);
    return r;
}

inline Mat3 conj(const Mat3& a) {
    Mat3 r;
    for (std::size_t i = 0; i < 9; ++i) r.m[i] = std::conj(a.m[i]);
    return r;
}

/// Conjugate transpose A*.
inline Mat3 adjoint(const Mat3& a) { return conj(transpose(a)); }

inline cplx trace(const Mat3& a) { return a(0, 0) + a(1, 1) + a(2, 2); }

inline cplx det(const Mat3& a) {
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
           a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

/// Classical adjugate: A * adj(A) = det(A) I.
inline Mat3 adjugate(const Mat3& a) {
    Mat3 r;
    r(0, 0) = a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
    r(0, 1) = a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2);
    r(0, 2) = a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1);
    r(1, 0) = a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2);
    r(1, 1) = a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0);
    r(1, 2) = a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2);
    r(2, 0) = a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0);
    r(2, 1) = a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1);
    r(2, 2) = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    return r;
}

inline Mat3 inverse(const Mat3& a) { return adjugate(a) / det(a); }

inline double frob(const Mat3& a) {
    double s = 0;
    for (const auto& x : a.m) s += std::norm(x);
    return std::sqrt(s);
}

inline double max_abs(const Mat3& a) {
    double s = 0;
    for (const auto& x : a.m) s = std::max(s, std::abs(x));
    return s;
}

/// Solve A x = b by partial-pivoted elimination. The caller guarantees A is
/// not (numerically) singular beyond what the pivots tolerate.
inline Vec3 solve(Mat3 a, Vec3 b) {
    std::array<std::size_t, 3> p{0, 1, 2};
    for (std::size_t k = 0; k < 2; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < 3; ++i)
            if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
        if (piv != k) {
            for (std::size_t j = 0; j < 3; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(b[k], b[piv]);
            std::swap(p[k], p[piv]);
        }
        for (std::size_t i = k + 1; i < 3; ++i) {
            if (a(k, k) == cplx(0)) continue;
            cplx f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < 3; ++j) a(i, j) -= f * a(k, j);
            b[i] -= f * b[k];
        }
    }
    Vec3 x;
    for (int i = 2; i >= 0; --i) {
        cplx s = b[i];
        for (std::size_t j = i + 1; j < 3; ++j) s -= a(i, j) * x[j];
        x[i] = (a(i, i) == cplx(0)) ? cplx(0) : s / a(i, i);
    }
    return x;
}

}  // namespace crkit
