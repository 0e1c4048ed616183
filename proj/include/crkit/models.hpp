#pragma once

#include <vector>

#include "crkit/errors.hpp"
#include "crkit/su21.hpp"

namespace crkit {

enum class ModelTag { ball, siegel };

inline const char* to_string(ModelTag t) { return t == ModelTag::ball ? "ball" : "siegel"; }

/// One of the two Hermitian models of the complex hyperbolic plane.
struct Model {
    ModelTag tag;
    Mat3 form;

    static Model ball() { return {ModelTag::ball, form_j1()}; }
    static Model siegel() { return {ModelTag::siegel, form_j2()}; }
    static Model of(ModelTag t) { return t == ModelTag::ball ? ball() : siegel(); }
};

/// <w, z> = conj(w)^T J z; conjugate-linear in w.
inline cplx form_eval(const Vec3& w, const Vec3& z, const Model& model) {
    cplx s = 0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            s += std::conj(w[i]) * model.form(i, j) * z[j];
    return s;
}

enum class Locus { interior, boundary, exterior };

inline const char* to_string(Locus l) {
    switch (l) {
        case Locus::interior: return "interior";
        case Locus::boundary: return "boundary";
        default: return "exterior";
    }
}

/// Point of CP^2 carried by a nonzero representative vector, together with
/// the model whose form classifies it.
struct ProjectivePoint {
    Vec3 rep;
    ModelTag model = ModelTag::ball;

    double phi() const {
        return std::real(form_eval(rep, rep, Model::of(model)));
    }

    Locus locus() const {
        const double p = phi();
        const double s = tol::kBoundaryNull * std::real(dot(rep, rep));
        if (p < -s) return Locus::interior;
        if (p > s) return Locus::exterior;
        return Locus::boundary;
    }
};

/// p == q in CP^2: unit representatives agree after optimal phase alignment.
inline bool proj_equal(const Vec3& p, const Vec3& q, double eps = tol::kProjectiveEq) {
    const Vec3 a = normalized(p), b = normalized(q);
    cplx s = dot(b, a);
    if (std::abs(s) < 1e-300) return false;
    s /= std::abs(s);
    return norm(a - s * b) <= eps;
}

inline bool proj_equal(const ProjectivePoint& p, const ProjectivePoint& q,
                       double eps = tol::kProjectiveEq) {
    return p.model == q.model && proj_equal(p.rep, q.rep, eps);
}

/// Point of the Heisenberg group C x R, or the point at infinity. Infinity
/// is an explicit variant, not an encoded value.
struct HeisPoint {
    cplx z{};
    double t = 0;
    bool inf = false;

    HeisPoint() = default;
    HeisPoint(cplx z_, double t_) : z(z_), t(t_) {}
    static HeisPoint infinity() {
        HeisPoint h;
        h.inf = true;
        return h;
    }
};

/// Heisenberg group law (w,s)*(z,t) = (w+z, s+t+2 Im(w conj(z))).
inline HeisPoint heis_mul(const HeisPoint& a, const HeisPoint& b) {
    if (a.inf || b.inf) throw InfiniteOperand("heis_mul requires finite operands");
    return {a.z + b.z, a.t + b.t + 2.0 * std::imag(a.z * std::conj(b.z))};
}

inline HeisPoint heis_inverse(const HeisPoint& a) {
    if (a.inf) throw InfiniteOperand("heis_inverse requires a finite operand");
    return {-a.z, -a.t};
}

/// Boundary embedding (z,t) -> [-(|z|^2+it)/2; z; 1], infinity -> [1;0;0].
inline ProjectivePoint heis_embed(const HeisPoint& h) {
    if (h.inf) return {Vec3(1, 0, 0), ModelTag::siegel};
    const cplx top = -0.5 * (std::norm(h.z) + iu * h.t);
    return {Vec3(top, h.z, 1), ModelTag::siegel};
}

/// Inverse of heis_embed on the Siegel null cone.
inline HeisPoint heis_project(const ProjectivePoint& p) {
    if (p.model != ModelTag::siegel)
        throw NotSiegel("heis_project expects a Siegel-model point");
    const double scale = std::real(dot(p.rep, p.rep));
    if (std::abs(p.phi()) > 1e-9 * std::max(1.0, scale))
        throw NotNull("point is not on the boundary null cone");
    const Vec3& v = p.rep;
    // [1;0;0] is the only null point with vanishing third coordinate
    if (std::abs(v[2]) <= 1e-14 * std::sqrt(scale)) return HeisPoint::infinity();
    const cplx z = v[1] / v[2];
    const cplx top = v[0] / v[2];
    return {z, -2.0 * std::imag(top)};
}

/// Transfer a matrix between the two models by conjugation with the Cayley
/// matrix. C J2 C = J1, so conjugation maps SU(2,1)-for-one-form onto
/// SU(2,1)-for-the-other; the transfer is an involution.
inline Mat3 cayley_transfer(const Mat3& m, ModelTag from, ModelTag to) {
    if (from == to) throw ModelMismatch("cayley_transfer requires distinct models");
    const Mat3 c = cayley();
    return c * m * c;
}

/// Transfer a point between models; interior maps to interior (the form
/// values agree: Phi_target(Cv) = Phi_source(v)).
inline ProjectivePoint cayley_transfer(const ProjectivePoint& p, ModelTag to) {
    if (p.model == to) throw ModelMismatch("cayley_transfer requires distinct models");
    return {cayley() * p.rep, to};
}

inline ProjectivePoint to_model(const ProjectivePoint& p, ModelTag to) {
    return p.model == to ? p : cayley_transfer(p, to);
}

/// Scalar s with C* J_to C = s J_from; computed once, fixed by test fixture.
inline double cayley_form_scalar() {
    const Mat3 c = cayley();
    const Mat3 lhs = adjoint(c) * form_j2() * c;
    // lhs should be a positive multiple of J1; read the (0,0) entry
    return std::real(lhs(0, 0)) / std::real(form_j1()(0, 0));
}

/// Boundary circle of the complex line polar to an exterior point,
/// parameterized as [n_- + e^{i theta} n_+] with an orthogonal (1,1) basis
/// of the polar complement. Every sample is on the null cone and pairs to
/// zero with the polar vector.
struct CCircle {
    ProjectivePoint polar;
    Vec3 neg_dir;  // Phi = -1
    Vec3 pos_dir;  // Phi = +1

    ProjectivePoint sample(double theta) const {
        const cplx ph = std::exp(iu * theta);
        return {neg_dir + ph * pos_dir, polar.model};
    }

    std::vector<ProjectivePoint> polyline(int samples, bool close = true) const {
        std::vector<ProjectivePoint> pts;
        pts.reserve(samples + (close ? 1 : 0));
        for (int k = 0; k < samples; ++k)
            pts.push_back(sample(2.0 * M_PI * k / samples));
        if (close) pts.push_back(pts.front());
        return pts;
    }
};

namespace detail {

// Orthogonal basis of the J-orthogonal complement of p, diagonalizing the
// restricted form: first vector negative, second positive.
inline std::pair<Vec3, Vec3> polar_complement_basis(const ProjectivePoint& p) {
    const Model model = Model::of(p.model);
    const Vec3 w = model.form * p.rep;  // Euclid-normal of the J-complement
    // two Euclid-orthonormal vectors spanning w-perp
    std::size_t k = 0;
    for (std::size_t i = 1; i < 3; ++i)
        if (std::abs(w[i]) > std::abs(w[k])) k = i;
    Vec3 u1{}, u2{};
    u1[(k + 1) % 3] = 1.0;
    u2[(k + 2) % 3] = 1.0;
    const Vec3 wn = normalized(w);
    u1 = normalized(u1 - dot(wn, u1) * wn);
    u2 = u2 - dot(wn, u2) * wn;
    u2 = normalized(u2 - dot(u1, u2) * u1);

    // restricted 2x2 Hermitian form
    const cplx f11 = form_eval(u1, u1, model);
    const cplx f12 = form_eval(u1, u2, model);
    const cplx f22 = form_eval(u2, u2, model);
    const double a = std::real(f11), c = std::real(f22);
    const double half = 0.5 * (a + c);
    const double rad = std::sqrt(0.25 * (a - c) * (a - c) + std::norm(f12));
    const double mu_minus = half - rad;
    const double mu_plus = half + rad;

    auto eigvec = [&](double mu) -> Vec3 {
        // (F - mu) v = 0 in the {u1, u2} coordinates; use the better row
        const cplx a1 = -f12, a2 = cplx(a - mu);
        const cplx b1 = cplx(c - mu), b2 = -std::conj(f12);
        const double na = std::abs(a1) + std::abs(a2);
        const double nb = std::abs(b1) + std::abs(b2);
        if (na < 1e-14 && nb < 1e-14) return mu == std::real(f11) ? u1 : u2;
        return (na >= nb) ? a1 * u1 + a2 * u2 : b1 * u1 + b2 * u2;
    };

    Vec3 vneg = eigvec(mu_minus);
    Vec3 vpos = eigvec(mu_plus);
    const double phin = std::real(form_eval(vneg, vneg, model));
    const double phip = std::real(form_eval(vpos, vpos, model));
    if (!(phin < 0 && phip > 0))
        throw NotExterior("polar complement does not have signature (1,1)");
    vneg = vneg / cplx(std::sqrt(-phin));
    vpos = vpos / cplx(std::sqrt(phip));
    return {vneg, vpos};
}

}  // namespace detail

inline CCircle c_circle_through(const ProjectivePoint& polar) {
    if (polar.locus() != Locus::exterior)
        throw NotExterior("C-circle polar point must be exterior");
    auto [vneg, vpos] = detail::polar_complement_basis(polar);
    return {polar, vneg, vpos};
}

}  // namespace crkit
