#pragma once

#include <functional>
#include <thread>

#include "crkit/flows.hpp"
#include "crkit/surgery.hpp"

namespace crkit {
namespace fig8 {

/// Words over the presentation generators g1, g2, g3 of the figure-eight
/// knot group, encoded as signed indices (+k for g_k, -k for its inverse).
using Word = std::vector<int>;

/// g2 = [g3, g1^{-1}] = g3 g1^{-1} g3^{-1} g1; holds by construction here.
inline Word word_g2() { return {3, -1, -3, 1}; }
/// r2 = (g1 g2)^{-1} (g2 g3); the nontrivial relator check.
inline Word word_r2() { return {-2, -1, 2, 3}; }
/// Meridian m0 = g3.
inline Word word_m0() { return {3}; }
/// Longitude l0 = g1^{-1} g3 g1 g3^{-2} g1 g3 g1^{-1}.
inline Word word_l0() { return {-1, 3, 1, -3, -3, 1, 3, -1}; }
/// m1 = g2 g3 g2^{-1} (equals g1 in the group).
inline Word word_m1() { return {2, 3, -2}; }

/// Trace parameter of the representation family, with v = conj(u), the
/// discriminant and the square-root branch made explicit.
struct RepParam {
    cplx u;
    cplx v;
    double delta = 0;
    int sqrt_branch = +1;  // sign of the square root of delta
};

/// Delta(u) = 4u^3 + 4v^3 - u^2 v^2 - 16uv + 16 with v = conj(u); real.
inline double delta(cplx u) {
    const cplx v = std::conj(u);
    const cplx d = 4.0 * u * u * u + 4.0 * v * v * v - u * u * v * v - 16.0 * u * v + 16.0;
    if (std::abs(d.imag()) > 1e-8 * std::max(1.0, std::abs(d)))
        throw NonRealDelta("Delta(u) has a nonreal residual of " +
                           std::to_string(d.imag()));
    return d.real();
}

/// The same discriminant as a quartic in (x, y) with u = x + iy.
inline double delta_xy(double x, double y) {
    const double x2 = x * x, y2 = y * y;
    return -x2 * x2 - y2 * y2 - 2.0 * x2 * y2 - 24.0 * x * y2 + 8.0 * x2 * x -
           16.0 * x2 - 16.0 * y2 + 16.0;
}

/// A representation of the figure-eight knot group into SU(2,1) preserving
/// the Hermitian form H. g2 is derived from the commutator relator, so the
/// nontrivial check is r2 together with form preservation and tr(g3) = u.
struct Fig8Rep {
    RepParam param;
    Mat3 g1, g2, g3;
    Mat3 form;

    const Mat3& rho(int gen) const {
        switch (gen) {
            case 1: return g1;
            case 2: return g2;
            default: return g3;
        }
    }
};

/// Product of assigned generator matrices over a word.
inline Mat3 word_eval(const Word& w, const Fig8Rep& rep) {
    Mat3 m = Mat3::identity();
    for (int g : w) {
        const Mat3& a = rep.rho(std::abs(g));
        m = m * (g > 0 ? a : inverse(a));
    }
    return m;
}

/// Residual of M from the identity in PGL: || M/lambda - I || with the
/// matrix's own scalar.
inline double projective_identity_residual(const Mat3& m) {
    cplx lead = m(0, 0);
    double best = std::abs(lead);
    for (const auto& x : m.m)
        if (std::abs(x) > best) {
            best = std::abs(x);
            lead = x;
        }
    if (best < 1e-300) return 1e300;
    return frob(m / m(0, 0) - Mat3::identity());
}

namespace detail {

inline void validate(Fig8Rep& rep, double rel_tol, double form_tol, double trace_tol) {
    rep.g2 = word_eval(word_g2(), rep);
    const double r2 = projective_identity_residual(word_eval(word_r2(), rep));
    if (r2 > rel_tol)
        throw InvariantViolation("relator r2 residual " + std::to_string(r2));
    double form_res = 0;
    for (int g : {1, 3}) {
        const Mat3& a = rep.rho(g);
        form_res = std::max(form_res, frob(adjoint(a) * rep.form * a - rep.form));
    }
    if (form_res > form_tol)
        throw InvariantViolation("form preservation residual " + std::to_string(form_res));
    const double tr_res = std::abs(trace(rep.g3) - rep.param.u);
    if (tr_res > trace_tol)
        throw InvariantViolation("trace(rho(m0)) - u residual " + std::to_string(tr_res));
}

}  // namespace detail

/// The explicit unipotent holonomy representation at u = 3 (the verbatim
/// sqrt(7) matrices). These representatives preserve the Siegel form J2;
/// the family below passes through a conjugate of them at u = 3.
inline Fig8Rep rho0() {
    const double s7 = std::sqrt(7.0);
    Fig8Rep rep;
    rep.param = {cplx(3), cplx(3), 7.0, +1};
    rep.g1 = {1, 1, cplx(-0.5, -s7 / 2),
              0, 1, -1,
              0, 0, 1};
    rep.g3 = {1, 0, 0,
              -1, 1, 0,
              cplx(-0.5, s7 / 2), 1, 1};
    rep.form = form_j2();
    detail::validate(rep, 1e-9, 1e-9, 1e-9);
    return rep;
}

/// The one-parameter family of the SU(2,1) character-variety component
/// through rho0, parameterized by u = tr(rho(m0)). The displayed matrices
/// are rho(a) = g3^{-1} and rho(b) = g1^{-1}; construction fails loudly if
/// any relator, form, or trace residual exceeds the stated bounds.
inline Fig8Rep family_rep(cplx u, int sqrt_branch = +1) {
    const cplx v = std::conj(u);
    const double d = delta(u);
    if (d < 0) throw NegativeDelta("Delta(u) = " + std::to_string(d) + " < 0");
    const double sq = sqrt_branch * std::sqrt(d);

    const cplx den = 8.0 * u * u - 6.0 * u * v * v + v * v * v * v;
    if (std::abs(den) < 1e-10)
        throw DegenerateDenominator("8u^2 - 6uv^2 + v^4 vanishes");
    if (std::abs(16.0 - d) < 1e-10) throw DegenerateDenominator("16 - Delta vanishes");
    if (std::abs(sq + 4.0) < 1e-10) throw DegenerateDenominator("sqrt(Delta) + 4 vanishes");

    const cplx one_i_m{1.0, -1.0};  // 1 - i
    const cplx one_i_p{1.0, 1.0};   // 1 + i
    const cplx top = -16.0 + 8.0 * u * v - 2.0 * v * v * v - 4.0 * sq;

    const Mat3 g3_inv{
        v / 2.0, 1.0, -one_i_m * top / den,
        one_i_p * (-2.0 * u + v * v) / 8.0, one_i_p * v / 4.0, 1.0,
        (8.0 - 4.0 * u * v + v * v * v - 2.0 * sq) / 16.0, (-4.0 * u + v * v) / 8.0,
        one_i_m * v / 4.0};

    const Mat3 g1_inv{
        v / 2.0, iu, one_i_p * top / den,
        -one_i_p * (-2.0 * u + v * v) / 8.0, one_i_m * v / 4.0, iu,
        -(8.0 - 4.0 * u * v + v * v * v - 2.0 * sq) / 16.0, -iu * (-4.0 * u + v * v) / 8.0,
        one_i_p * v / 4.0};

    Fig8Rep rep;
    rep.param = {u, v, d, sqrt_branch};
    rep.g1 = inverse(g1_inv);
    rep.g3 = inverse(g3_inv);
    rep.form = Mat3::diag((d - 16.0) * (sq + std::norm(u) - 4.0) / 8.0,
                          16.0 - d,
                          8.0 * (sq + 4.0));
    detail::validate(rep, 1e-7, 1e-7, 1e-8);
    return rep;
}

/// The parameter u = e^{2 pi i a} + e^{2 pi i b} + e^{2 pi i c} with
/// a = (-2p-1)/(3n), b = (2+p)/(3n), c = (p-1)/(3n); the three turn angles
/// sum to zero. Traces of elliptic peripheral holonomies of type
/// (+-p/n, -+1/n).
inline cplx u_from_pn(long long p, long long n) {
    if (n < 1) throw NotCoprime("n must be >= 1");
    if (std::gcd(std::llabs(p), n) != 1) throw NotCoprime("p and n must be coprime");
    const double a = double(-2 * p - 1) / double(3 * n);
    const double b = double(2 + p) / double(3 * n);
    const double c = double(p - 1) / double(3 * n);
    const double tau = 2.0 * M_PI;
    return std::exp(iu * (tau * a)) + std::exp(iu * (tau * b)) + std::exp(iu * (tau * c));
}

/// Conjugate a family representation into the standard ball model: returns
/// matrices G' = Q G Q^{-1} with G'* J1 G' = J1, where Q is built from the
/// diagonal form H = Q* J1 Q.
struct BallRep {
    Mat3 g1, g2, g3;
    Mat3 q;  // the conjugator C^3_H -> C^3_J1
};

inline BallRep to_ball(const Fig8Rep& rep) {
    // H is diagonal with exactly one negative entry; route it to slot 3
    std::array<double, 3> h{};
    for (int i = 0; i < 3; ++i) h[i] = std::real(rep.form(i, i));
    int neg = -1;
    for (int i = 0; i < 3; ++i)
        if (h[i] < 0) neg = i;
    if (neg < 0) throw InvariantViolation("H(u) is not of signature (2,1)");
    std::array<int, 3> dest{};  // dest[i] = row of Q holding sqrt|h_i|
    int next = 0;
    for (int i = 0; i < 3; ++i) {
        if (i == neg) dest[i] = 2;
        else dest[i] = next++;
    }
    Mat3 q = Mat3::zero();
    for (int i = 0; i < 3; ++i) q(dest[i], i) = std::sqrt(std::abs(h[i]));
    const Mat3 qinv = inverse(q);
    BallRep out;
    out.q = q;
    out.g1 = q * rep.g1 * qinv;
    out.g2 = q * rep.g2 * qinv;
    out.g3 = q * rep.g3 * qinv;
    return out;
}

/// Per-sample record of a parameter-region scan.
struct ScanGrid {
    int nx = 0, ny = 0;
    std::vector<double> x, y;          // axis coordinates
    std::vector<double> delta, f;      // row-major ny x nx
    std::vector<int> delta_sign, f_sign;
    std::vector<unsigned char> in_component;

    std::size_t at(int i, int j) const { return std::size_t(j) * nx + i; }
};

/// Signs of Delta(x,y) and Goldman's f over a grid; in_component flood-fills
/// the Delta > 0 region containing the unipotent trace 3 (seeded at
/// (3 - eps, 0) when that point lies in the window).
inline ScanGrid scan_region(double x0, double x1, double y0, double y1, int resolution,
                            int threads = 1) {
    if (resolution < 2) throw UnknownFamily("scan_region needs resolution >= 2");
    ScanGrid g;
    g.nx = resolution;
    g.ny = resolution;
    g.x.resize(g.nx);
    g.y.resize(g.ny);
    for (int i = 0; i < g.nx; ++i) g.x[i] = x0 + (x1 - x0) * i / double(g.nx - 1);
    for (int j = 0; j < g.ny; ++j) g.y[j] = y0 + (y1 - y0) * j / double(g.ny - 1);
    const std::size_t total = std::size_t(g.nx) * g.ny;
    g.delta.resize(total);
    g.f.resize(total);
    g.delta_sign.resize(total);
    g.f_sign.resize(total);
    g.in_component.assign(total, 0);

    auto run_rows = [&](int j_begin, int j_end) {
        for (int j = j_begin; j < j_end; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const double dx = delta_xy(g.x[i], g.y[j]);
                const double fv = goldman_f(cplx(g.x[i], g.y[j]));
                const std::size_t k = g.at(i, j);
                g.delta[k] = dx;
                g.f[k] = fv;
                g.delta_sign[k] = dx > 0 ? 1 : (dx < 0 ? -1 : 0);
                g.f_sign[k] = fv > 0 ? 1 : (fv < 0 ? -1 : 0);
            }
    };

    const int nthreads = std::max(1, threads);
    if (nthreads == 1) {
        run_rows(0, g.ny);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (g.ny + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            const int b = t * chunk, e = std::min(g.ny, b + chunk);
            if (b < e) pool.emplace_back(run_rows, b, e);
        }
        for (auto& th : pool) th.join();
    }

    // flood fill the Delta > 0 component containing 3 (seed just left of 3)
    const double seed_x = 3.0 - 1e-3, seed_y = 0.0;
    if (seed_x >= x0 && seed_x <= x1 && seed_y >= y0 && seed_y <= y1) {
        int si = 0, sj = 0;
        for (int i = 1; i < g.nx; ++i)
            if (std::abs(g.x[i] - seed_x) < std::abs(g.x[si] - seed_x)) si = i;
        for (int j = 1; j < g.ny; ++j)
            if (std::abs(g.y[j] - seed_y) < std::abs(g.y[sj] - seed_y)) sj = j;
        if (g.delta[g.at(si, sj)] > 0) {
            std::vector<std::pair<int, int>> stack{{si, sj}};
            g.in_component[g.at(si, sj)] = 1;
            while (!stack.empty()) {
                const auto [i, j] = stack.back();
                stack.pop_back();
                const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
                for (int k = 0; k < 4; ++k) {
                    const int ni = i + di[k], nj = j + dj[k];
                    if (ni < 0 || nj < 0 || ni >= g.nx || nj >= g.ny) continue;
                    const std::size_t idx = g.at(ni, nj);
                    if (g.in_component[idx] || g.delta[idx] <= 0) continue;
                    g.in_component[idx] = 1;
                    stack.emplace_back(ni, nj);
                }
            }
        }
    }
    return g;
}

/// Zero-level segments of a grid field by marching squares with linear
/// interpolation; each segment is (x1, y1, x2, y2).
inline std::vector<std::array<double, 4>> contour_segments(const ScanGrid& g,
                                                           const std::vector<double>& field) {
    std::vector<std::array<double, 4>> segs;
    auto lerp = [](double a, double b, double va, double vb) {
        const double t = va / (va - vb);
        return a + t * (b - a);
    };
    for (int j = 0; j + 1 < g.ny; ++j)
        for (int i = 0; i + 1 < g.nx; ++i) {
            const double v00 = field[g.at(i, j)], v10 = field[g.at(i + 1, j)];
            const double v01 = field[g.at(i, j + 1)], v11 = field[g.at(i + 1, j + 1)];
            const double x0 = g.x[i], x1 = g.x[i + 1], y0 = g.y[j], y1 = g.y[j + 1];
            std::vector<std::array<double, 2>> hits;
            if ((v00 > 0) != (v10 > 0)) hits.push_back({lerp(x0, x1, v00, v10), y0});
            if ((v01 > 0) != (v11 > 0)) hits.push_back({lerp(x0, x1, v01, v11), y1});
            if ((v00 > 0) != (v01 > 0)) hits.push_back({x0, lerp(y0, y1, v00, v01)});
            if ((v10 > 0) != (v11 > 0)) hits.push_back({x1, lerp(y0, y1, v10, v11)});
            if (hits.size() == 2)
                segs.push_back({hits[0][0], hits[0][1], hits[1][0], hits[1][1]});
            else if (hits.size() == 4) {
                // ambiguous saddle: split by the cell-center sign
                const double vc = 0.25 * (v00 + v10 + v01 + v11);
                if ((vc > 0) == (v00 > 0)) {
                    segs.push_back({hits[0][0], hits[0][1], hits[3][0], hits[3][1]});
                    segs.push_back({hits[1][0], hits[1][1], hits[2][0], hits[2][1]});
                } else {
                    segs.push_back({hits[0][0], hits[0][1], hits[2][0], hits[2][1]});
                    segs.push_back({hits[1][0], hits[1][1], hits[3][0], hits[3][1]});
                }
            }
        }
    return segs;
}

/// Which peripheral element the classification runs on: the character-
/// variety generator a = m0^{-1} (the matrix the family displays, and the
/// one whose elliptic types the source computations quote), or m0 itself.
enum class Generator { a, m0 };

struct ClassifyAtReport {
    cplx u;
    Generator generator = Generator::a;
    IsometryClass cls;
    std::optional<EllipticType> type;
    std::optional<SurgeryOutcome> outcome;
    std::optional<Slope> slope_l0m0;
    std::string reconciliation;
};

/// Classify the peripheral holonomy at parameter u and push the result
/// through the surgery map, reporting the filling slope in both the
/// horotube marking (l,m) and the knot marking (l0,m0). When the elliptic
/// case applies, the report also carries the verbatim paper slope and
/// whether the general transport agrees with it.
inline ClassifyAtReport classify_at(cplx u, int sqrt_branch = +1,
                                    Generator gen = Generator::a) {
    const Fig8Rep rep = family_rep(u, sqrt_branch);
    const BallRep ball = to_ball(rep);
    const Model model = Model::ball();
    const Mat3 m = gen == Generator::a ? inverse(ball.g3) : ball.g3;

    ClassifyAtReport report;
    report.u = u;
    report.generator = gen;
    report.cls = classify(m, model);

    if (is_elliptic(report.cls.kind)) {
        report.type = elliptic_type(m, model);
        report.outcome = surgery_outcome(report.cls, report.type);
    } else {
        report.outcome = surgery_outcome(report.cls);
    }

    if (report.outcome->variant == SurgeryOutcome::Variant::dehn_filling) {
        const Slope transported =
            change_marking(report.outcome->slope, fig8_marking(), reference_marking());
        report.slope_l0m0 = transported;
        if (report.type && std::llabs(report.type->q) == 1) {
            const Slope paper = paper_fig8_elliptic_slope(
                report.type->p, report.type->n, report.type->q > 0 ? +1 : -1);
            const bool agree = transported.same_surgery(paper);
            report.reconciliation =
                "transport of (" + std::to_string(report.outcome->slope.a) + "," +
                std::to_string(report.outcome->slope.b) + ") gives (" +
                std::to_string(transported.a) + "," + std::to_string(transported.b) +
                ") in (l0,m0); source states (" + std::to_string(paper.a) + "," +
                std::to_string(paper.b) + "): " + (agree ? "AGREE" : "DISAGREE");
        }
    }
    return report;
}

}  // namespace fig8
}  // namespace crkit
