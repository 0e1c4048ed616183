#pragma once

#include <numeric>
#include <optional>
#include <string>

#include "crkit/errors.hpp"
#include "crkit/isometry.hpp"

namespace crkit {

/// Primitive homology class a.l + b.m on the peripheral torus. (a, b) and
/// (-a, -b) describe the same surgery; canonical_sign() is applied for
/// equality tests only, so paper-quoted signed forms survive verbatim.
struct Slope {
    long long a = 0, b = 0;

    Slope reduced() const {
        const long long g = std::gcd(std::llabs(a), std::llabs(b));
        return g > 1 ? Slope{a / g, b / g} : *this;
    }

    Slope canonical_sign() const {
        if (a < 0 || (a == 0 && b < 0)) return {-a, -b};
        return *this;
    }

    bool same_surgery(const Slope& other) const {
        const Slope x = reduced().canonical_sign();
        const Slope y = other.reduced().canonical_sign();
        return x.a == y.a && x.b == y.b;
    }

    bool operator==(const Slope&) const = default;
};

/// 2x2 integer matrix, column-major pair of basis vectors.
struct Mat2Z {
    // [[a, b], [c, d]] acting on column vectors
    long long a = 1, b = 0, c = 0, d = 1;

    long long det() const { return a * d - b * c; }

    std::pair<long long, long long> apply(long long x, long long y) const {
        return {a * x + b * y, c * x + d * y};
    }

    Mat2Z mul(const Mat2Z& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }

    Mat2Z inv_unimodular() const {
        const long long dt = det();
        if (dt != 1 && dt != -1) throw NonUnimodular("marking change is not unimodular");
        return {d / dt, -b / dt, -c / dt, a / dt};
    }
};

/// Named basis of the peripheral torus homology. `change` expresses this
/// basis in the shared reference basis: first column is l, second is m.
struct Marking {
    std::string name;
    Mat2Z change;

    Marking(std::string n, Mat2Z ch) : name(std::move(n)), change(ch) {
        if (change.det() != 1 && change.det() != -1)
            throw NonUnimodular("marking basis is not unimodular in the reference basis");
    }
};

/// The knot-theoretic reference marking (l0, m0).
inline Marking reference_marking() { return {"(l0,m0)", Mat2Z{1, 0, 0, 1}}; }

/// The horotube marking of the figure-eight structure: l = m0,
/// m = 3 m0 - l0. With `inverted`, l = -m0 (the generator-orientation
/// choice [U0] vs [U0]^{-1}).
inline Marking fig8_marking(bool inverted = false) {
    // columns (l | m) in (l0, m0) coordinates
    if (inverted) return {"(-l,m)", Mat2Z{0, -1, -1, 3}};
    return {"(l,m)", Mat2Z{0, -1, 1, 3}};
}

/// Rewrite the curve a.l_from + b.m_from in the target basis.
inline Slope change_marking(const Slope& s, const Marking& from, const Marking& to) {
    const auto [x, y] = from.change.apply(s.a, s.b);
    const auto [u, v] = to.change.inv_unimodular().apply(x, y);
    return Slope{u, v}.reduced();
}

/// p^{-1} mod n in [0, n).
inline long long mod_inverse(long long p, long long n) {
    if (n < 1) throw NotCoprime("modulus must be >= 1");
    if (n == 1) return 0;
    long long a = ((p % n) + n) % n;
    long long r0 = n, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
        const long long q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        s0 -= q * s1;
        std::swap(s0, s1);
    }
    if (r0 != 1) throw NotCoprime(std::to_string(p) + " is not invertible mod " +
                                  std::to_string(n));
    return ((s0 % n) + n) % n;
}

/// Outcome of deforming the structure: a Dehn filling, a gluing with the
/// torus-knot complement V(p,q,n) in the lens space L(n, alpha), or a
/// thickening (parabolic case).
struct SurgeryOutcome {
    enum class Variant { dehn_filling, gluing, thickening };

    Variant variant = Variant::thickening;
    Slope slope;              // dehn_filling, in `marking`
    std::string marking = "(l,m)";
    long long p = 0, q = 0, n = 0, alpha = 0;  // gluing data
};

/// The surgery map on classification data: loxodromic gives the (0,1)
/// filling, elliptic of type (p/n, q/n) with |q| = 1 gives the (n, sign(q) p)
/// filling, |p|, |q| > 1 gives the V(p,q,n) gluing with alpha = p^{-1} q
/// mod n, parabolic gives a thickening.
inline SurgeryOutcome surgery_outcome(const IsometryClass& cls,
                                      const std::optional<EllipticType>& type = std::nullopt) {
    SurgeryOutcome out;
    if (cls.kind == Kind::identity) throw IdentityInput("surgery_outcome of the identity");
    if (cls.kind == Kind::loxodromic) {
        out.variant = SurgeryOutcome::Variant::dehn_filling;
        out.slope = {0, 1};
        return out;
    }
    if (is_parabolic(cls.kind)) {
        out.variant = SurgeryOutcome::Variant::thickening;
        return out;
    }
    if (!type) throw IrrationalElliptic("elliptic element without a rational type");
    const auto& t = *type;
    if (std::llabs(t.q) == 1) {
        out.variant = SurgeryOutcome::Variant::dehn_filling;
        out.slope = {t.n, t.q > 0 ? t.p : -t.p};
        return out;
    }
    if (std::llabs(t.p) > 1 && std::llabs(t.q) > 1) {
        out.variant = SurgeryOutcome::Variant::gluing;
        out.p = t.p;
        out.q = t.q;
        out.n = t.n;
        out.alpha = (mod_inverse(t.p, t.n) * (((t.q % t.n) + t.n) % t.n)) % t.n;
        return out;
    }
    throw UnsupportedEllipticType("elliptic type (" + std::to_string(t.p) + "/" +
                                  std::to_string(t.n) + ", " + std::to_string(t.q) + "/" +
                                  std::to_string(t.n) +
                                  ") is outside the surgery theorem's cases");
}

/// The paper's stated figure-eight slope for the elliptic case, in (l0,m0):
/// (-n, sign(q) p + 3n). Kept verbatim for the reconciliation report; the
/// general transport mechanism is change_marking.
inline Slope paper_fig8_elliptic_slope(long long p, long long n, int sign_q) {
    return {-n, sign_q * p + 3 * n};
}

}  // namespace crkit
