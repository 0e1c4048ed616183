#pragma once

#include <variant>
#include <vector>

#include "crkit/isometry.hpp"

namespace crkit {

/// Generator of a one-parameter subgroup: X in su(2,1), typically the
/// logarithm of a group element. The flow is phi_t(x) = exp(tX) . x.
struct FlowGenerator {
    Mat3 x;
    ModelTag model = ModelTag::siegel;

    static FlowGenerator from_element(const Mat3& m, const Model& model) {
        const Mat3 lg = mat_log(m);
        FlowGenerator g{lg, model.tag};
        if (su21_algebra_residual(lg, model.form) > 1e-8 * std::max(1.0, frob(lg)))
            throw NotInGroup("log of element is not in su(2,1)");
        return g;
    }
};

inline ProjectivePoint flow_apply(const FlowGenerator& gen, double t,
                                  const ProjectivePoint& x) {
    const ProjectivePoint p = to_model(x, gen.model);
    return {mat_exp(gen.x * cplx(t)) * p.rep, gen.model};
}

/// Ball-boundary chart point (|z1|^2 + |z2|^2 = 1).
struct BallPoint {
    cplx z1, z2;
};

inline BallPoint ball_coords(const ProjectivePoint& p) {
    const ProjectivePoint b = to_model(p, ModelTag::ball);
    return {b.rep[0] / b.rep[2], b.rep[1] / b.rep[2]};
}

inline ProjectivePoint ball_embed(const BallPoint& b) {
    return {Vec3(b.z1, b.z2, 1), ModelTag::ball};
}

inline HeisPoint heis_coords(const ProjectivePoint& p) {
    return heis_project(to_model(p, ModelTag::siegel));
}

// Closed forms of the four flow families.

/// Elliptic flow in the ball: (Z1, Z2) -> (e^{it(2a+b)} Z1, e^{it(2b+a)} Z2).
struct EllipticFlow {
    double alpha, beta;
    BallPoint apply(double t, const BallPoint& p) const {
        return {std::exp(iu * t * (2 * alpha + beta)) * p.z1,
                std::exp(iu * t * (2 * beta + alpha)) * p.z2};
    }
    Mat3 generator() const {
        return Mat3::diag(iu * alpha, iu * beta, -iu * (alpha + beta));
    }
    ModelTag model() const { return ModelTag::ball; }
};

/// Loxodromic flow in Heisenberg coordinates: (z,s) -> (mu_t z, |mu_t|^2 s)
/// with mu_t = r^t e^{-3 i a t} for lambda = r e^{i a}.
struct LoxodromicFlow {
    cplx lambda;
    HeisPoint apply(double t, const HeisPoint& p) const {
        if (p.inf) return p;
        const double r = std::abs(lambda), a = std::arg(lambda);
        const cplx mu = std::pow(r, t) * std::exp(-3.0 * iu * a * t);
        return {mu * p.z, std::norm(mu) * p.t};
    }
    Mat3 generator() const {
        const double r = std::abs(lambda), a = std::arg(lambda);
        return Mat3::diag(cplx(std::log(r), a), cplx(0, -2 * a), cplx(-std::log(r), a));
    }
    ModelTag model() const { return ModelTag::siegel; }
};

/// Unipotent flow: (z', s') -> (z' + tz, s' + ts - 2t Im(conj(z) z')).
struct UnipotentFlow {
    cplx z;
    double s;
    HeisPoint apply(double t, const HeisPoint& p) const {
        if (p.inf) return p;
        return {p.z + t * z, p.t + t * s - 2.0 * t * std::imag(std::conj(z) * p.z)};
    }
    Mat3 generator() const {
        return {0, -std::conj(z), -0.5 * iu * s, 0, 0, z, 0, 0, 0};
    }
    ModelTag model() const { return ModelTag::siegel; }
};

/// Ellipto-parabolic flow: (z, s) -> (e^{-3 i theta t} z, s + t).
struct EpFlow {
    double theta;
    HeisPoint apply(double t, const HeisPoint& p) const {
        if (p.inf) return p;
        return {std::exp(-3.0 * iu * theta * t) * p.z, p.t + t};
    }
    Mat3 generator() const {
        return {iu * theta, 0, -0.5 * iu, 0, -2.0 * iu * theta, 0, 0, 0, iu * theta};
    }
    ModelTag model() const { return ModelTag::siegel; }
};

using FlowSpec = std::variant<EllipticFlow, LoxodromicFlow, UnipotentFlow, EpFlow>;

inline FlowGenerator generator_of(const FlowSpec& spec) {
    return std::visit(
        [](const auto& f) {
            return FlowGenerator{f.generator(), f.model()};
        },
        spec);
}

/// Closed-form action on a boundary point; agrees with flow_apply through
/// the matrix exponential.
inline ProjectivePoint flow_closed_form(const FlowSpec& spec, double t,
                                        const ProjectivePoint& x) {
    return std::visit(
        [&](const auto& f) -> ProjectivePoint {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, EllipticFlow>) {
                return ball_embed(f.apply(t, ball_coords(x)));
            } else {
                return heis_embed(f.apply(t, heis_coords(x)));
            }
        },
        spec);
}

/// Sampled flow orbit: samples on a uniform t grid, all on the boundary.
struct OrbitPolyline {
    std::vector<double> t;
    std::vector<ProjectivePoint> points;
    ModelTag model = ModelTag::siegel;

    bool closed(double eps = 1e-6) const {
        return !points.empty() && proj_equal(points.front(), points.back(), eps);
    }

    std::vector<HeisPoint> heis() const {
        std::vector<HeisPoint> h;
        h.reserve(points.size());
        for (const auto& p : points) h.push_back(heis_coords(p));
        return h;
    }

    /// Heisenberg R^3 chart (Re z, Im z, t); infinity must not occur.
    std::vector<std::array<double, 3>> r3() const {
        std::vector<std::array<double, 3>> v;
        v.reserve(points.size());
        for (const auto& p : points) {
            const HeisPoint h = heis_coords(p);
            if (h.inf) throw NotNull("orbit passes through infinity");
            v.push_back({h.z.real(), h.z.imag(), h.t});
        }
        return v;
    }
};

inline OrbitPolyline sample_orbit(const FlowGenerator& gen, const ProjectivePoint& x0,
                                  double t_min, double t_max, int steps) {
    if (steps < 2) throw UnknownFamily("sample_orbit needs steps >= 2");
    OrbitPolyline orbit;
    orbit.model = gen.model;
    orbit.t.reserve(steps);
    orbit.points.reserve(steps);
    const ProjectivePoint x = to_model(x0, gen.model);
    for (int k = 0; k < steps; ++k) {
        const double t = t_min + (t_max - t_min) * double(k) / double(steps - 1);
        orbit.t.push_back(t);
        orbit.points.push_back({mat_exp(gen.x * cplx(t)) * x.rep, gen.model});
    }
    return orbit;
}

// Invariant surfaces of the four flow families.

/// |Z2| = r, |Z1| = sqrt(1-r^2) on the ball boundary.
struct TorusSurface {
    double r;
};
/// s / |z|^2 = r in Heisenberg coordinates.
struct ParaboloidSurface {
    double r;
};
/// Im(w / z) = r, vertical plane for the horizontal parabolic direction z.
struct PlaneSurface {
    cplx z;
    double r;
};
/// |z| = radius, cylinder around the vertical axis.
struct EpCylinderSurface {
    double radius;
};

using InvariantSurface =
    std::variant<TorusSurface, ParaboloidSurface, PlaneSurface, EpCylinderSurface>;

/// Signed residual of the surface membership function; zero on the surface
/// and constant along the matching flow.
inline double surface_membership(const InvariantSurface& surface,
                                 const ProjectivePoint& p) {
    return std::visit(
        [&](const auto& s) -> double {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, TorusSurface>) {
                const BallPoint b = ball_coords(p);
                return std::abs(b.z2) - s.r;
            } else if constexpr (std::is_same_v<S, ParaboloidSurface>) {
                const HeisPoint h = heis_coords(p);
                if (h.inf || std::norm(h.z) == 0)
                    throw NotNull("paraboloid membership undefined at the fixed points");
                return h.t / std::norm(h.z) - s.r;
            } else if constexpr (std::is_same_v<S, PlaneSurface>) {
                const HeisPoint h = heis_coords(p);
                if (h.inf) throw NotNull("plane membership undefined at infinity");
                return std::imag(h.z / s.z) - s.r;
            } else {
                const HeisPoint h = heis_coords(p);
                if (h.inf) throw NotNull("cylinder membership undefined at infinity");
                return std::abs(h.z) - s.radius;
            }
        },
        surface);
}

/// Quad mesh in the Heisenberg R^3 chart, grid-ordered row-major.
struct QuadMesh {
    int rows = 0, cols = 0;
    std::vector<std::array<double, 3>> vertices;
    bool wrap_rows = false, wrap_cols = false;

    std::vector<std::array<int, 4>> faces() const {
        std::vector<std::array<int, 4>> f;
        const int rmax = wrap_rows ? rows : rows - 1;
        const int cmax = wrap_cols ? cols : cols - 1;
        for (int i = 0; i < rmax; ++i)
            for (int j = 0; j < cmax; ++j) {
                const int i1 = (i + 1) % rows, j1 = (j + 1) % cols;
                f.push_back({i * cols + j, i * cols + j1, i1 * cols + j1, i1 * cols + j});
            }
        return f;
    }
};

/// Sampled invariant surface in Heisenberg coordinates. Ball-model tori are
/// transferred through the Cayley map.
inline QuadMesh surface_mesh(const InvariantSurface& surface, int resolution,
                             double span = 2.0) {
    if (resolution < 4) throw UnknownFamily("surface_mesh needs resolution >= 4");
    QuadMesh mesh;
    mesh.rows = resolution;
    mesh.cols = resolution;
    mesh.vertices.reserve(std::size_t(resolution) * resolution);

    auto heis_vertex = [&](const HeisPoint& h) {
        mesh.vertices.push_back({h.z.real(), h.z.imag(), h.t});
    };

    std::visit(
        [&](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, TorusSurface>) {
                mesh.wrap_rows = mesh.wrap_cols = true;
                const double r1 = std::sqrt(1.0 - s.r * s.r);
                for (int i = 0; i < resolution; ++i)
                    for (int j = 0; j < resolution; ++j) {
                        const double th = 2 * M_PI * i / resolution;
                        const double ph = 2 * M_PI * j / resolution;
                        const ProjectivePoint p = ball_embed(
                            {r1 * std::exp(iu * th), s.r * std::exp(iu * ph)});
                        heis_vertex(heis_coords(p));
                    }
            } else if constexpr (std::is_same_v<S, ParaboloidSurface>) {
                mesh.wrap_cols = true;
                for (int i = 0; i < resolution; ++i)
                    for (int j = 0; j < resolution; ++j) {
                        const double rho = span * double(i + 1) / resolution;
                        const double ph = 2 * M_PI * j / resolution;
                        const cplx z = rho * std::exp(iu * ph);
                        heis_vertex({z, s.r * std::norm(z)});
                    }
            } else if constexpr (std::is_same_v<S, PlaneSurface>) {
                for (int i = 0; i < resolution; ++i)
                    for (int j = 0; j < resolution; ++j) {
                        const double x = -span + 2 * span * i / (resolution - 1.0);
                        const double t = -span + 2 * span * j / (resolution - 1.0);
                        heis_vertex({s.z * (x + iu * s.r), t});
                    }
            } else {
                mesh.wrap_cols = true;
                for (int i = 0; i < resolution; ++i)
                    for (int j = 0; j < resolution; ++j) {
                        const double t = -span + 2 * span * i / (resolution - 1.0);
                        const double ph = 2 * M_PI * j / resolution;
                        heis_vertex({s.radius * std::exp(iu * ph), t});
                    }
            }
        },
        surface);
    return mesh;
}

struct WindingResult {
    long long w1 = 0, w2 = 0;
    bool degenerate = false;  // orbit lies on a core C-circle
    bool unknotted = false;   // |w1| <= 1 or |w2| <= 1
};

/// Accumulated phases of the ball coordinates Z1, Z2 over one period of a
/// closed orbit on an invariant torus, in turns. Equals the (p, q) of the
/// generator's elliptic type.
inline WindingResult winding_numbers(const OrbitPolyline& orbit) {
    if (orbit.points.size() < 8) throw NotClosed("orbit has too few samples");
    if (!orbit.closed(1e-6)) throw NotClosed("orbit endpoints do not match");

    std::vector<BallPoint> pts;
    pts.reserve(orbit.points.size());
    for (const auto& p : orbit.points) pts.push_back(ball_coords(p));

    double min1 = 1e300, max1 = 0, min2 = 1e300, max2 = 0;
    for (const auto& b : pts) {
        min1 = std::min(min1, std::abs(b.z1));
        max1 = std::max(max1, std::abs(b.z1));
        min2 = std::min(min2, std::abs(b.z2));
        max2 = std::max(max2, std::abs(b.z2));
    }
    WindingResult res;
    const bool live1 = max1 > 1e-9, live2 = max2 > 1e-9;
    if (live1 && max1 - min1 > 1e-7) throw NotOnTorus("|Z1| is not constant along the orbit");
    if (live2 && max2 - min2 > 1e-7) throw NotOnTorus("|Z2| is not constant along the orbit");
    res.degenerate = !live1 || !live2;

    auto winding = [&](auto select) -> long long {
        double acc = 0;
        for (std::size_t k = 1; k < pts.size(); ++k) {
            const cplx a = select(pts[k - 1]), b = select(pts[k]);
            acc += std::arg(b / a);
        }
        return std::llround(acc / (2 * M_PI));
    };
    if (live1) res.w1 = winding([](const BallPoint& b) { return b.z1; });
    if (live2) res.w2 = winding([](const BallPoint& b) { return b.z2; });
    res.unknotted = std::llabs(res.w1) <= 1 || std::llabs(res.w2) <= 1;
    return res;
}

/// Boundary mesh of a horotube: the flow orbit of an embedded circle under
/// phi_t^{Log P}. Applying P itself maps the mesh into itself.
inline QuadMesh horotube_boundary(const Mat3& p, const Model& model,
                                  const std::vector<ProjectivePoint>& circle,
                                  double t_min, double t_max, int t_steps) {
    const auto cls = classify(p, model);
    if (!cls.unipotent || cls.kind == Kind::identity)
        throw NotUnipotent(std::string("horotube generator is ") + to_string(cls.kind));
    if (circle.size() < 3) throw CircleHitsFixedPoint("circle needs at least 3 samples");

    const auto fixed = fixed_points(p, model);
    const FlowGenerator gen = FlowGenerator::from_element(p, model);
    for (const auto& c : circle)
        for (const auto& f : fixed)
            if (f.locus == Locus::boundary && proj_equal(to_model(c, model.tag), f.point, 1e-6))
                throw CircleHitsFixedPoint("circle passes through the parabolic fixed point");

    QuadMesh mesh;
    mesh.rows = std::max(t_steps, 1);
    mesh.cols = static_cast<int>(circle.size());
    mesh.vertices.reserve(std::size_t(mesh.rows) * mesh.cols);
    for (int i = 0; i < mesh.rows; ++i) {
        const double t = mesh.rows == 1
                             ? t_min
                             : t_min + (t_max - t_min) * double(i) / double(mesh.rows - 1);
        const Mat3 ft = mat_exp(gen.x * cplx(t));
        for (const auto& c : circle) {
            const ProjectivePoint q{ft * to_model(c, gen.model).rep, gen.model};
            const HeisPoint h = heis_coords(q);
            if (h.inf) throw CircleHitsFixedPoint("horotube mesh hits infinity");
            mesh.vertices.push_back({h.z.real(), h.z.imag(), h.t});
        }
    }
    return mesh;
}

}  // namespace crkit
