#pragma once

#include <algorithm>
#include <vector>

#include "crkit/cubic.hpp"
#include "crkit/tol.hpp"

namespace crkit {

struct EigenPair {
    cplx value;
    Vec3 vector;  // unit Euclidean norm
};

/// Eigen-decomposition of a 3x3 complex matrix. `defective` is set when a
/// repeated eigenvalue has a deficient eigenspace (the parabolic case); the
/// returned vectors then repeat a basis of the actual eigenspace so the
/// residual bound still holds for every pair. Pairs are sorted by the
/// (Re, Im) key of the value.
struct EigenSystem {
    std::array<EigenPair, 3> pairs;
    bool defective = false;
};

/// One eigenvalue cluster: the (averaged) value, its algebraic multiplicity
/// and an orthonormal basis of the geometric eigenspace.
struct EigenCluster {
    cplx value;
    int multiplicity = 0;
    std::vector<Vec3> space;
};

namespace detail {

// Independent solutions of r . v = 0 (bilinear row-vector kernel).
inline std::pair<Vec3, Vec3> row_kernel(const Vec3& r) {
    std::size_t k = 0;
    for (std::size_t i = 1; i < 3; ++i)
        if (std::abs(r[i]) > std::abs(r[k])) k = i;
    Vec3 a{}, b{};
    const std::size_t i = (k + 1) % 3, j = (k + 2) % 3;
    a[i] = r[k];
    a[k] = -r[i];
    b[j] = r[k];
    b[k] = -r[j];
    if (norm(a) < 1e-300) a[i] = 1.0;
    if (norm(b) < 1e-300) b[j] = 1.0;
    // Euclidean Gram-Schmidt
    a = normalized(a);
    b = b - dot(a, b) * a;
    if (norm(b) < 1e-12) {
        Vec3 c{};
        c[(k + 1) % 3] = 1.0;
        b = c - dot(a, c) * a;
    }
    return {a, normalized(b)};
}

inline Vec3 inverse_iterate(const Mat3& m, cplx lambda, Vec3 v0) {
    const double scale = std::max(1.0, frob(m));
    Mat3 shifted = m - Mat3::identity() * (lambda + cplx(1e-13 * scale));
    Vec3 v = normalized(v0);
    for (int it = 0; it < 4; ++it) {
        Vec3 w = solve(shifted, v);
        const double n = norm(w);
        if (!(n > 0) || !std::isfinite(n)) break;
        v = w / cplx(n);
    }
    return v;
}

}  // namespace detail

/// Eigenvalue clusters of M with eigenspace bases. Eigenvalues within
/// kEigenCluster (relative) are treated as equal.
inline std::vector<EigenCluster> eigen_clusters(const Mat3& m) {
    const cplx tr = trace(m);
    const cplx tr2 = trace(m * m);
    const cplx c2 = -tr;
    const cplx c1 = (tr * tr - tr2) / 2.0;
    const cplx c0 = -det(m);
    const auto roots = cubic_roots(c2, c1, c0);

    double scale = 1.0;
    for (const auto& r : roots) scale = std::max(scale, std::abs(r));
    const double ctol = tol::kEigenCluster * scale;

    std::vector<EigenCluster> clusters;
    for (const auto& r : roots) {
        bool merged = false;
        for (auto& c : clusters) {
            if (std::abs(c.value - r) <= ctol) {
                c.value = (c.value * cplx(double(c.multiplicity)) + r) /
                          cplx(double(c.multiplicity + 1));
                ++c.multiplicity;
                merged = true;
                break;
            }
        }
        if (!merged) clusters.push_back({r, 1, {}});
    }

    const double mscale = std::max(1.0, frob(m));
    for (auto& c : clusters) {
        const Mat3 a = m - Mat3::identity() * c.value;
        const Mat3 adj = adjugate(a);
        // rank(a) = 2  <=>  adj has a significant column (1-dim kernel)
        double best = 0;
        Vec3 v;
        for (std::size_t j = 0; j < 3; ++j) {
            const Vec3 col = adj.col(j);
            if (norm(col) > best) {
                best = norm(col);
                v = col;
            }
        }
        if (best > 1e-11 * mscale * mscale) {
            c.space.push_back(normalized(v));
            continue;
        }
        // rank <= 1: kernel from the dominant row (or the whole space)
        double rbest = 0;
        Vec3 row;
        for (std::size_t i = 0; i < 3; ++i)
            if (norm(a.row(i)) > rbest) {
                rbest = norm(a.row(i));
                row = a.row(i);
            }
        if (rbest <= 1e-11 * mscale) {
            c.space = {Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)};
            continue;
        }
        auto [k1, k2] = detail::row_kernel(row);
        c.space = {k1, k2};
    }

    // polish and validate each eigenvector
    for (auto& c : clusters) {
        for (auto& v : c.space) {
            const double res = norm(m * v - c.value * v);
            if (res > tol::kEigenResidual * mscale)
                v = detail::inverse_iterate(m, c.value, v);
        }
    }
    return clusters;
}

inline EigenSystem eig3(const Mat3& m) {
    const auto clusters = eigen_clusters(m);
    EigenSystem es;
    std::size_t idx = 0;
    for (const auto& c : clusters) {
        if (static_cast<int>(c.space.size()) < c.multiplicity) es.defective = true;
        for (int k = 0; k < c.multiplicity && idx < 3; ++k, ++idx) {
            const Vec3& v = c.space[std::min<std::size_t>(k, c.space.size() - 1)];
            es.pairs[idx] = {c.value, v};
        }
    }
    std::sort(es.pairs.begin(), es.pairs.end(), [](const EigenPair& a, const EigenPair& b) {
        return detail::eigen_key_less(a.value, b.value);
    });
    return es;
}

}  // namespace crkit
