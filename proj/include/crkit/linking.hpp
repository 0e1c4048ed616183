#pragma once

#include <vector>

#include "crkit/errors.hpp"

#include <array>
#include <cmath>

namespace crkit {

using R3 = std::array<double, 3>;

namespace r3 {

inline R3 sub(const R3& a, const R3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline R3 add(const R3& a, const R3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline R3 scale(double s, const R3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline double dot(const R3& a, const R3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline R3 cross(const R3& a, const R3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double len(const R3& a) { return std::sqrt(dot(a, a)); }

inline double seg_point_dist(const R3& a, const R3& b, const R3& p) {
    const R3 ab = sub(b, a);
    const double denom = dot(ab, ab);
    double t = denom > 0 ? dot(sub(p, a), ab) / denom : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return len(sub(p, add(a, scale(t, ab))));
}

}  // namespace r3

/// Resample a closed polyline to `segments` arc-length-uniform segments.
/// The input's last point may or may not repeat the first.
inline std::vector<R3> resample_closed(const std::vector<R3>& curve, int segments) {
    std::vector<R3> pts = curve;
    if (pts.size() >= 2 && r3::len(r3::sub(pts.front(), pts.back())) < 1e-12)
        pts.pop_back();
    const std::size_t n = pts.size();
    std::vector<double> cum(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        cum[i + 1] = cum[i] + r3::len(r3::sub(pts[(i + 1) % n], pts[i]));
    const double total = cum[n];
    std::vector<R3> out;
    out.reserve(segments);
    std::size_t seg = 0;
    for (int k = 0; k < segments; ++k) {
        const double s = total * double(k) / double(segments);
        while (seg + 1 < n + 1 && cum[seg + 1] < s) ++seg;
        const double ds = cum[seg + 1] - cum[seg];
        const double t = ds > 0 ? (s - cum[seg]) / ds : 0.0;
        const R3& a = pts[seg % n];
        const R3& b = pts[(seg + 1) % n];
        out.push_back(r3::add(a, r3::scale(t, r3::sub(b, a))));
    }
    return out;
}

struct LinkingResult {
    long long link = 0;
    double integral = 0;  // raw Gauss integral before rounding
    double error = 0;     // distance to the nearest integer
};

/// Gauss linking number of two disjoint closed polylines, by the exact
/// solid-angle contribution of each segment pair (Klenin-Langowski form of
/// the Gauss integral). Curves are resampled to at least `min_segments`
/// segments; a minimum separation of 1e-3 is required.
inline LinkingResult gauss_linking(const std::vector<R3>& curve_a,
                                   const std::vector<R3>& curve_b,
                                   int min_segments = 256) {
    const std::vector<R3> a = resample_closed(curve_a, std::max<int>(min_segments, 8));
    const std::vector<R3> b = resample_closed(curve_b, std::max<int>(min_segments, 8));

    const std::size_t na = a.size(), nb = b.size();
    for (std::size_t i = 0; i < na; ++i) {
        const R3& p = a[i];
        for (std::size_t j = 0; j < nb; ++j)
            if (r3::seg_point_dist(b[j], b[(j + 1) % nb], p) <= 1e-3)
                throw CurvesTooClose("curves are closer than 1e-3");
    }
    for (std::size_t j = 0; j < nb; ++j) {
        const R3& p = b[j];
        for (std::size_t i = 0; i < na; ++i)
            if (r3::seg_point_dist(a[i], a[(i + 1) % na], p) <= 1e-3)
                throw CurvesTooClose("curves are closer than 1e-3");
    }

    auto clamped_asin = [](double x) { return std::asin(std::clamp(x, -1.0, 1.0)); };

    double total = 0;
    for (std::size_t i = 0; i < na; ++i) {
        const R3& p1 = a[i];
        const R3& p2 = a[(i + 1) % na];
        for (std::size_t j = 0; j < nb; ++j) {
            const R3& p3 = b[j];
            const R3& p4 = b[(j + 1) % nb];
            const R3 r13 = r3::sub(p3, p1);
            const R3 r14 = r3::sub(p4, p1);
            const R3 r23 = r3::sub(p3, p2);
            const R3 r24 = r3::sub(p4, p2);

            auto unit_cross = [](const R3& u, const R3& v) -> R3 {
                const R3 c = r3::cross(u, v);
                const double l = r3::len(c);
                return l > 1e-300 ? r3::scale(1.0 / l, c) : R3{0, 0, 0};
            };
            const R3 n1 = unit_cross(r13, r14);
            const R3 n2 = unit_cross(r14, r24);
            const R3 n3 = unit_cross(r24, r23);
            const R3 n4 = unit_cross(r23, r13);

            const double omega = clamped_asin(r3::dot(n1, n2)) + clamped_asin(r3::dot(n2, n3)) +
                                 clamped_asin(r3::dot(n3, n4)) + clamped_asin(r3::dot(n4, n1));
            const R3 r12 = r3::sub(p2, p1);
            const R3 r34 = r3::sub(p4, p3);
            const double orient = r3::dot(r3::cross(r34, r12), r13);
            total += (orient >= 0 ? 1.0 : -1.0) * omega / (4.0 * M_PI);
        }
    }
    LinkingResult res;
    res.integral = total;
    res.link = std::llround(total);
    res.error = std::abs(total - double(res.link));
    return res;
}

}  // namespace crkit
