#pragma once

#include <numeric>
#include <optional>

#include "crkit/models.hpp"

namespace crkit {

/// Goldman's trace function f(z) = |z|^4 - 8 Re(z^3) + 18 |z|^2 - 27.
/// Vanishes exactly on traces of non-regular elements; f > 0 loxodromic,
/// f < 0 regular elliptic. Invariant under z -> wz for cube roots of 1.
inline double goldman_f(cplx z) {
    const double n2 = std::norm(z);
    return n2 * n2 - 8.0 * std::real(z * z * z) + 18.0 * n2 - 27.0;
}

enum class Kind {
    identity,
    loxodromic,
    regular_elliptic,
    complex_reflection,
    reflection_on_point,
    horizontal_parabolic,
    vertical_parabolic,
    ellipto_parabolic,
};

inline const char* to_string(Kind k) {
    switch (k) {
        case Kind::identity: return "Identity";
        case Kind::loxodromic: return "Loxodromic";
        case Kind::regular_elliptic: return "RegularElliptic";
        case Kind::complex_reflection: return "ComplexReflection";
        case Kind::reflection_on_point: return "ReflectionOnPoint";
        case Kind::horizontal_parabolic: return "HorizontalParabolic";
        case Kind::vertical_parabolic: return "VerticalParabolic";
        default: return "ElliptoParabolic";
    }
}

inline bool is_elliptic(Kind k) {
    return k == Kind::regular_elliptic || k == Kind::complex_reflection ||
           k == Kind::reflection_on_point;
}

inline bool is_parabolic(Kind k) {
    return k == Kind::horizontal_parabolic || k == Kind::vertical_parabolic ||
           k == Kind::ellipto_parabolic;
}

struct IsometryClass {
    Kind kind = Kind::identity;
    bool regular = false;
    bool unipotent = false;
    EigenSystem eigen;
    cplx trace;
    double f_trace = 0;
};

namespace detail {

// Extremes of the form restricted to an eigenspace: minimum and maximum of
// Phi over unit vectors, with the attaining directions.
struct SpaceSignature {
    double min_phi = 0, max_phi = 0;
    Vec3 min_dir, max_dir;
};

inline SpaceSignature restricted_form(const std::vector<Vec3>& space, const Model& model) {
    SpaceSignature sig;
    if (space.size() == 1) {
        const Vec3 v = normalized(space[0]);
        sig.min_phi = sig.max_phi = std::real(form_eval(v, v, model));
        sig.min_dir = sig.max_dir = v;
        return sig;
    }
    if (space.size() >= 3) {
        // whole space: signature of the model form itself
        sig.min_phi = -1;
        sig.max_phi = 1;
        sig.min_dir = model.tag == ModelTag::ball ? Vec3(0, 0, 1)
                                                  : normalized(Vec3(1, 0, -1));
        sig.max_dir = Vec3(0, 1, 0);
        return sig;
    }
    const Vec3 u1 = space[0], u2 = space[1];
    const cplx f11 = form_eval(u1, u1, model);
    const cplx f12 = form_eval(u1, u2, model);
    const cplx f22 = form_eval(u2, u2, model);
    const double a = std::real(f11), c = std::real(f22);
    const double half = 0.5 * (a + c);
    const double rad = std::sqrt(0.25 * (a - c) * (a - c) + std::norm(f12));
    sig.min_phi = half - rad;
    sig.max_phi = half + rad;
    auto eigvec = [&](double mu) -> Vec3 {
        const cplx a1 = -f12, a2 = cplx(a - mu);
        const cplx b1 = cplx(c - mu), b2 = -std::conj(f12);
        const double na = std::abs(a1) + std::abs(a2);
        const double nb = std::abs(b1) + std::abs(b2);
        if (na < 1e-14 && nb < 1e-14) return u1;
        return normalized((na >= nb) ? a1 * u1 + a2 * u2 : b1 * u1 + b2 * u2);
    };
    sig.min_dir = eigvec(sig.min_phi);
    sig.max_dir = eigvec(sig.max_phi);
    return sig;
}

// rank of M - lambda I among {0, 1, 2}, by adjugate and row norms
inline int shifted_rank(const Mat3& m, cplx lambda) {
    const Mat3 a = m - Mat3::identity() * lambda;
    const double scale = std::max(1.0, frob(m));
    double rmax = 0;
    for (std::size_t i = 0; i < 3; ++i) rmax = std::max(rmax, norm(a.row(i)));
    if (rmax <= 1e-9 * scale) return 0;
    const Mat3 adj = adjugate(a);
    double amax = 0;
    for (std::size_t j = 0; j < 3; ++j) amax = std::max(amax, norm(adj.col(j)));
    return amax > 1e-9 * scale * scale ? 2 : 1;
}

}  // namespace detail

/// Full classification of an SU(2,1) element. Eigenvalue moduli decide
/// loxodromy; a Phi-negative eigenvector decides ellipticity (subtypes by
/// which eigenvalues coincide and where the repeated eigenspace meets the
/// negative cone); the rest is parabolic, split by unipotency and the rank
/// of M - lambda I. The sign of Goldman's f cross-checks every regular
/// decision; a contradiction inside the |f| <= 1e-6 gray zone raises
/// AmbiguousNearBoundary instead of guessing.
inline IsometryClass classify(const Mat3& m, const Model& model) {
    const auto membership = in_su21(m, model.form, tol::group_membership());
    if (!membership.member)
        throw NotInGroup("matrix is not in SU(2,1): residual " +
                         std::to_string(membership.residual));

    IsometryClass cls;
    cls.trace = trace(m);
    cls.f_trace = goldman_f(cls.trace);
    cls.eigen = eig3(m);

    const cplx third = cls.trace / 3.0;
    if (std::abs(std::abs(third) - 1.0) < 1e-9 &&
        frob(m - Mat3::identity() * third) <= 1e-9 * std::max(1.0, frob(m))) {
        cls.kind = Kind::identity;
        cls.unipotent = true;
        return cls;
    }

    const auto clusters = eigen_clusters(m);
    cls.regular = clusters.size() == 3;
    cls.unipotent = clusters.size() == 1;

    double scale = 1.0;
    for (const auto& c : clusters) scale = std::max(scale, std::abs(c.value));
    double min_gap = 1e300, mod_margin = 0;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        mod_margin = std::max(mod_margin, std::abs(std::abs(clusters[i].value) - 1.0));
        for (std::size_t j = i + 1; j < clusters.size(); ++j)
            min_gap = std::min(min_gap, std::abs(clusters[i].value - clusters[j].value));
    }

    const double ctol = tol::kEigenCluster * scale;
    const bool cluster_gray = clusters.size() > 1 && min_gap < 10.0 * ctol;
    const bool modulus_gray =
        mod_margin > 0.1 * tol::kUnitModulus && mod_margin < 10.0 * tol::kUnitModulus;
    if (std::abs(cls.f_trace) <= tol::kGoldmanGray && (cluster_gray || modulus_gray))
        throw AmbiguousNearBoundary(
            "classification uncertain: |f(tr)| <= 1e-6 and eigen margins are marginal");

    if (mod_margin > tol::kUnitModulus) {
        cls.kind = Kind::loxodromic;
        if (cls.f_trace < -tol::kGoldmanGray)
            throw AmbiguousNearBoundary("eigen moduli say loxodromic but f(tr) < 0");
        return cls;
    }

    // all eigenvalues on the unit circle: elliptic iff some eigenspace
    // contains a Phi-negative direction
    const EigenCluster* negative = nullptr;
    detail::SpaceSignature neg_sig;
    for (const auto& c : clusters) {
        const auto sig = detail::restricted_form(c.space, model);
        if (sig.min_phi < -1e-9) {
            negative = &c;
            neg_sig = sig;
            break;
        }
    }

    if (negative != nullptr) {
        if (cls.regular) {
            cls.kind = Kind::regular_elliptic;
            if (cls.f_trace > tol::kGoldmanGray)
                throw AmbiguousNearBoundary("eigen data says elliptic but f(tr) > 0");
            return cls;
        }
        const EigenCluster* repeated = nullptr;
        for (const auto& c : clusters)
            if (c.multiplicity >= 2) repeated = &c;
        if (repeated == nullptr) {
            cls.kind = Kind::regular_elliptic;  // unipotent-trace elliptic cannot occur
            return cls;
        }
        const auto rep_sig = detail::restricted_form(repeated->space, model);
        cls.kind = rep_sig.min_phi < -1e-9 ? Kind::complex_reflection
                                           : Kind::reflection_on_point;
        return cls;
    }

    // parabolic
    if (cls.unipotent) {
        const int rank = detail::shifted_rank(m, clusters.front().value);
        cls.kind = rank >= 2 ? Kind::horizontal_parabolic : Kind::vertical_parabolic;
        return cls;
    }
    cls.kind = Kind::ellipto_parabolic;
    return cls;
}

/// Rational rotation pair (p/n, q/n) of an elliptic element, n >= 1,
/// gcd(p, q, n) = 1, |p| >= |q|. All downstream slope arithmetic is
/// integer-exact.
struct EllipticType {
    long long p = 0, q = 0, n = 1;

    bool operator==(const EllipticType&) const = default;
};

namespace detail {

// best rational approximation a/b of x with b <= denom_bound, by continued
// fractions
inline std::optional<std::pair<long long, long long>> rationalize(double x,
                                                                  long long denom_bound,
                                                                  double eps) {
    long long p0 = 1, q0 = 0, p1 = 0, q1 = 1;  // convergents of [a0; a1, ...]
    double v = x;
    for (int it = 0; it < 64; ++it) {
        const double fl = std::floor(v);
        if (!(std::abs(fl) < 9e15)) break;
        const long long a = static_cast<long long>(fl);
        const long long p2 = a * p0 + p1, q2 = a * q0 + q1;
        if (q2 > denom_bound) break;
        p1 = p0; q1 = q0; p0 = p2; q0 = q2;
        const double rem = v - fl;
        if (rem < 1e-15) break;
        v = 1.0 / rem;
    }
    if (q0 < 1) return std::nullopt;
    if (std::abs(x - double(p0) / double(q0)) > eps) return std::nullopt;
    const long long g = std::gcd(std::abs(p0), q0);
    return std::make_pair(p0 / (g ? g : 1), q0 / (g ? g : 1));
}

}  // namespace detail

/// Rotation numbers of an elliptic element around its invariant C-circles,
/// anchored at the eigenvalue of the Phi-negative eigenvector: r_i =
/// arg(lambda_i / lambda_-) / 2 pi, rationalized by continued fractions.
inline EllipticType elliptic_type(const Mat3& m, const Model& model,
                                  long long denom_bound = tol::kDenomBound,
                                  double eps = tol::kRationalTol) {
    const auto cls = classify(m, model);
    if (!is_elliptic(cls.kind))
        throw NotElliptic(std::string("element is ") + to_string(cls.kind));

    const auto clusters = eigen_clusters(m);
    cplx lambda_minus{};
    bool found = false;
    for (const auto& c : clusters) {
        const auto sig = detail::restricted_form(c.space, model);
        if (sig.min_phi < -1e-9) {
            lambda_minus = c.value;
            found = true;
            break;
        }
    }
    if (!found) throw NotElliptic("no Phi-negative eigenvector");

    std::vector<double> rotations;
    for (const auto& c : clusters) {
        int copies = c.multiplicity;
        if (std::abs(c.value - lambda_minus) < 1e-12) --copies;
        for (int k = 0; k < copies; ++k)
            rotations.push_back(std::arg(c.value / lambda_minus) / (2.0 * M_PI));
    }
    while (rotations.size() < 2) rotations.push_back(0.0);

    std::array<long long, 2> num{}, den{};
    for (int i = 0; i < 2; ++i) {
        const auto r = detail::rationalize(rotations[i], denom_bound, eps);
        if (!r) throw NotRationalType("rotation number is not rational within tolerance");
        num[i] = r->first;
        den[i] = r->second;
    }
    const long long n = std::lcm(den[0], den[1]);
    long long p = num[0] * (n / den[0]);
    long long q = num[1] * (n / den[1]);
    if (std::llabs(p) < std::llabs(q) || (std::llabs(p) == std::llabs(q) && p < q))
        std::swap(p, q);
    const long long g = std::gcd(std::gcd(std::llabs(p), std::llabs(q)), n);
    if (g > 1) { p /= g; q /= g; }
    return {p, q, n / (g > 1 ? g : 1)};
}

struct FixedPoint {
    ProjectivePoint point;
    Locus locus;
};

/// Fixed points in CP^2 (projectivized eigenvectors), annotated by locus.
/// For a 2-dimensional eigenspace the form-diagonalizing directions are
/// reported, which includes the distinguished boundary point of a vertical
/// parabolic.
inline std::vector<FixedPoint> fixed_points(const Mat3& m, const Model& model) {
    const auto membership = in_su21(m, model.form, tol::group_membership());
    if (!membership.member) throw NotInGroup("matrix is not in SU(2,1)");

    const auto clusters = eigen_clusters(m);
    std::vector<FixedPoint> out;
    auto push = [&](const Vec3& v) {
        ProjectivePoint p{normalized(v), model.tag};
        for (const auto& f : out)
            if (proj_equal(f.point, p)) return;
        out.push_back({p, p.locus()});
    };
    for (const auto& c : clusters) {
        if (c.space.size() == 1) {
            push(c.space[0]);
        } else if (c.space.size() == 2) {
            const auto sig = detail::restricted_form(c.space, model);
            push(sig.min_dir);
            push(sig.max_dir);
        } else {
            push(Vec3(1, 0, 0));
            push(Vec3(0, 1, 0));
            push(Vec3(0, 0, 1));
        }
    }
    return out;
}

/// Conjugation of M into the displayed normal-form family of its kind:
/// T_lambda (Siegel) for loxodromic, E_{alpha,beta,gamma} (ball) for
/// elliptic, P_{1,0} / P_{0,+-1} (Siegel) for unipotent, the rotating
/// vertical translation (Siegel) for ellipto-parabolic. The conjugator is
/// in SU(2,1) of the reported model, and conjugator . M' . conjugator^{-1}
/// equals the representative projectively, where M' is M transferred into
/// that model.
struct NormalForm {
    Mat3 representative;
    Mat3 conjugator;
    ModelTag model;
};

namespace detail {

inline Mat3 fix_det_phase(Mat3 a) {
    const cplx d = det(a);
    const double ad = std::abs(d);
    if (ad < 1e-300) return a;
    const cplx phase = std::exp(-iu * (std::arg(d) / 3.0)) / std::pow(ad, 1.0 / 3.0);
    return a * phase;
}

// Null frame (v1 | v2 | v3) in SU(2,1)-for-J2 with prescribed first null
// column direction p and unit middle column u2 (optional); Gram = J2.
inline Mat3 null_frame(const Vec3& p_in, const std::optional<Vec3>& u2_in,
                       const Model& siegel) {
    const Vec3 p = normalized(p_in);

    // companion null vector: candidate null points off p-perp
    const std::array<Vec3, 3> candidates{Vec3(0, 0, 1), Vec3(1, 0, 0),
                                         Vec3(-0.5, 1, 1)};
    Vec3 c{};
    double best = 0;
    for (const auto& cand : candidates) {
        const double phi = std::abs(std::real(form_eval(cand, cand, siegel)));
        if (phi > 1e-9) continue;  // keep only null candidates
        const double pairing = std::abs(form_eval(p, cand, siegel));
        if (pairing > best) {
            best = pairing;
            c = cand;
        }
    }
    if (best < 1e-9) throw NotInGroup("failed to build a null frame");
    Vec3 v3 = c / form_eval(p, c, siegel);

    if (u2_in) {
        // prescribed middle direction; re-derive v3 inside u2-perp
        const Vec3 u = *u2_in;
        const double phiu = std::real(form_eval(u, u, siegel));
        if (phiu <= 0) throw NotInGroup("middle frame vector is not positive");
        const Vec3 un = u / cplx(std::sqrt(phiu));
        // w: orthogonal to un, independent of p
        Vec3 w;
        double wbest = -1;
        for (int k = 0; k < 3; ++k) {
            Vec3 e{};
            e[k] = 1;
            Vec3 cand = e - form_eval(un, e, siegel) * un;
            const double indep = norm(cand - dot(p, cand) * p);
            if (indep > wbest) {
                wbest = indep;
                w = cand;
            }
        }
        const cplx pair = form_eval(p, w, siegel);
        if (std::abs(pair) < 1e-12) throw NotInGroup("degenerate frame construction");
        const double phiw = std::real(form_eval(w, w, siegel));
        const cplx x = -phiw / (2.0 * std::conj(pair));
        Vec3 null2 = x * p + w;
        null2 = null2 / form_eval(p, null2, siegel);
        return fix_det_phase(Mat3::from_cols(p, un, null2));
    }

    // derive u2 orthogonal to both null columns, positive, unit
    Vec3 u{};
    double ubest = -1;
    for (int k = 0; k < 3; ++k) {
        Vec3 e{};
        e[k] = 1;
        const cplx b = -form_eval(p, e, siegel);
        const cplx a = -form_eval(v3, e, siegel);
        Vec3 cand = e + a * p + b * v3;
        if (norm(cand) > ubest) {
            ubest = norm(cand);
            u = cand;
        }
    }
    const double phiu = std::real(form_eval(u, u, siegel));
    if (phiu <= 0) throw NotInGroup("frame completion is not positive");
    u = u / cplx(std::sqrt(phiu));
    return fix_det_phase(Mat3::from_cols(p, u, v3));
}

}  // namespace detail

/// Loxodromic normal form T_lambda = diag(lambda, conj(lambda)/lambda,
/// 1/conj(lambda)) with |lambda| > 1 (Siegel model).
inline Mat3 t_lambda(cplx lambda) {
    return Mat3::diag(lambda, std::conj(lambda) / lambda, 1.0 / std::conj(lambda));
}

/// Elliptic normal form diag(e^{i a}, e^{i b}, e^{i c}) (ball model),
/// a + b + c = 0 mod 2 pi.
inline Mat3 e_abc(double alpha, double beta, double gamma) {
    return Mat3::diag(std::exp(iu * alpha), std::exp(iu * beta), std::exp(iu * gamma));
}

/// Unipotent normal form fixing [1;0;0] in the Siegel model.
inline Mat3 p_zt(cplx z, double t) {
    return {1, -std::conj(z), -0.5 * (std::norm(z) + iu * t),
            0, 1, z,
            0, 0, 1};
}

/// Ellipto-parabolic normal form e^{i theta} [[1,0,s*i/2],[0,e^{-3 i
/// theta},0],[0,0,1]]; the displayed family has s = -1, the opposite
/// vertical translation direction gives s = +1.
inline Mat3 ep_form(double theta, int s) {
    const cplx ph = std::exp(iu * theta);
    return {ph, 0, cplx(0.0, 0.5 * s) * ph,
            0, std::exp(-2.0 * iu * theta), 0,
            0, 0, ph};
}

inline NormalForm normal_form(const Mat3& m_in, const Model& model_in) {
    const auto cls = classify(m_in, model_in);
    if (cls.kind == Kind::identity) throw IdentityInput("normal_form of the identity");

    const Model ball = Model::ball();
    const Model siegel = Model::siegel();

    auto transfer_to = [&](ModelTag target) -> Mat3 {
        return model_in.tag == target ? m_in : cayley_transfer(m_in, model_in.tag, target);
    };

    if (cls.kind == Kind::loxodromic) {
        const Mat3 m = transfer_to(ModelTag::siegel);
        const auto clusters = eigen_clusters(m);
        const EigenCluster *att = nullptr, *mid = nullptr, *rep = nullptr;
        for (const auto& c : clusters) {
            const double a = std::abs(c.value);
            if (a > 1 + tol::kUnitModulus) att = &c;
            else if (a < 1 - tol::kUnitModulus) rep = &c;
            else mid = &c;
        }
        if (!att || !mid || !rep) throw NotInGroup("loxodromic eigenvalue pattern broken");
        const Vec3 v1 = att->space[0];
        const Vec3 v3 = rep->space[0];
        Vec3 v2 = mid->space[0];
        const double phi2 = std::real(form_eval(v2, v2, siegel));
        if (phi2 <= 0) throw NotInGroup("loxodromic middle eigenvector not positive");
        v2 = v2 / cplx(std::sqrt(phi2));
        const cplx pairing = form_eval(v1, v3, siegel);
        if (std::abs(pairing) < 1e-12) throw NotInGroup("degenerate loxodromic frame");
        const Mat3 a = detail::fix_det_phase(Mat3::from_cols(v1, v2, v3 / pairing));
        const Mat3 q = inverse(a);
        return {t_lambda(att->value), q, ModelTag::siegel};
    }

    if (is_elliptic(cls.kind)) {
        const Mat3 m = transfer_to(ModelTag::ball);
        const auto clusters = eigen_clusters(m);
        // negative direction -> e3; positive directions -> e1, e2 ordered by
        // the eigenvalue sort key
        Vec3 wneg;
        cplx lneg{};
        std::vector<std::pair<cplx, Vec3>> pos;
        for (const auto& c : clusters) {
            const auto sig = detail::restricted_form(c.space, ball);
            if (sig.min_phi < -1e-9) {
                wneg = sig.min_dir;
                lneg = c.value;
                if (c.space.size() == 2) pos.emplace_back(c.value, sig.max_dir);
            } else {
                if (c.space.size() == 1) {
                    pos.emplace_back(c.value, c.space[0]);
                } else {
                    // positive-definite plane: J-orthogonal split
                    pos.emplace_back(c.value, sig.min_dir);
                    pos.emplace_back(c.value, sig.max_dir);
                }
            }
        }
        if (pos.size() != 2) throw NotInGroup("elliptic eigen structure broken");
        std::sort(pos.begin(), pos.end(), [](const auto& x, const auto& y) {
            return detail::eigen_key_less(x.first, y.first);
        });
        Vec3 w1 = pos[0].second, w2 = pos[1].second;
        // J-orthogonalize within numerical noise and normalize
        w2 = w2 - form_eval(w1, w2, ball) / form_eval(w1, w1, ball) * w1;
        const double p1 = std::real(form_eval(w1, w1, ball));
        const double p2 = std::real(form_eval(w2, w2, ball));
        const double pn = std::real(form_eval(wneg, wneg, ball));
        if (p1 <= 0 || p2 <= 0 || pn >= 0) throw NotInGroup("elliptic frame signature broken");
        w1 = w1 / cplx(std::sqrt(p1));
        w2 = w2 / cplx(std::sqrt(p2));
        const Vec3 w3 = wneg / cplx(std::sqrt(-pn));
        const Mat3 a = detail::fix_det_phase(Mat3::from_cols(w1, w2, w3));
        const Mat3 q = inverse(a);
        const double alpha = std::arg(pos[0].first);
        const double beta = std::arg(pos[1].first);
        const double gamma = std::arg(lneg);
        return {e_abc(alpha, beta, gamma), q, ModelTag::ball};
    }

    if (cls.unipotent) {
        Mat3 m = transfer_to(ModelTag::siegel);
        // normalize the lift so the triple eigenvalue is 1
        cplx omega = trace(m) / 3.0;
        omega /= std::abs(omega);
        m = m / omega;
        const Mat3 n = m - Mat3::identity();
        const Mat3 n2 = n * n;
        Vec3 p;
        if (frob(n2) > 1e-9 * std::max(1.0, frob(n) * frob(n))) {
            // horizontal: fixed direction spans im(N^2)
            double best = 0;
            for (std::size_t j = 0; j < 3; ++j)
                if (norm(n2.col(j)) > best) {
                    best = norm(n2.col(j));
                    p = n2.col(j);
                }
        } else {
            // vertical: the degenerate direction of ker N
            const auto clusters = eigen_clusters(m);
            const auto sig = detail::restricted_form(clusters.front().space, siegel);
            p = std::abs(sig.min_phi) < std::abs(sig.max_phi) ? sig.min_dir : sig.max_dir;
        }
        const Mat3 frame = detail::null_frame(p, std::nullopt, siegel);
        const Mat3 q1 = inverse(frame);
        const Mat3 m2 = q1 * m * frame;  // = P_{z,s} + noise
        const cplx z = -std::conj(m2(0, 1));
        const double s = -2.0 * std::imag(m2(0, 2));

        Mat3 q = q1;
        Mat3 rep;
        if (cls.kind == Kind::horizontal_parabolic) {
            const cplx w = std::abs(z) > 0 ? -iu * s * z / (4.0 * std::norm(z)) : cplx(0);
            const Mat3 pw = p_zt(w, 0);
            const cplx mu = std::exp(iu * (std::arg(z) / 3.0)) / std::abs(z);
            q = t_lambda(mu) * pw * q;
            rep = p_zt(1, 0);
        } else {
            const double snorm = std::abs(s);
            if (snorm < 1e-12) throw NotUnipotent("vertical parabolic with vanishing twist");
            const cplx mu = 1.0 / std::sqrt(snorm);
            q = t_lambda(mu) * q;
            rep = p_zt(0, s > 0 ? 1.0 : -1.0);
        }
        return {rep, q, ModelTag::siegel};
    }

    // ellipto-parabolic
    {
        const Mat3 m = transfer_to(ModelTag::siegel);
        const auto clusters = eigen_clusters(m);
        const EigenCluster *dbl = nullptr, *simple = nullptr;
        for (const auto& c : clusters)
            (c.multiplicity == 2 ? dbl : simple) = &c;
        if (!dbl || !simple) throw NotInGroup("ellipto-parabolic eigen structure broken");
        const Vec3 p = dbl->space[0];           // null direction
        const Vec3 u2 = simple->space[0];       // positive direction
        const Mat3 frame = detail::null_frame(p, u2, siegel);
        const Mat3 q1 = inverse(frame);
        const Mat3 m2 = q1 * m * frame;  // [[mu,0,b],[0,mu',0],[0,0,mu]]
        cplx mu = m2(0, 0);
        mu /= std::abs(mu);
        const cplx b = m2(0, 2);
        if (std::abs(b) < 1e-12) throw NotUnipotent("ellipto-parabolic without twist");
        const int sgn = std::imag(std::conj(mu) * b) > 0 ? +1 : -1;
        const double lam = std::sqrt(0.5 / std::abs(b));
        const Mat3 q = t_lambda(cplx(lam)) * q1;
        const double theta = std::arg(mu);
        return {ep_form(theta, sgn), q, ModelTag::siegel};
    }
}

}  // namespace crkit
