#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "crkit/fig8.hpp"
#include "crkit/linking.hpp"

namespace crkit {

using json = nlohmann::ordered_json;

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

/// Row-major array of [re, im] pairs; the matrix format shared by all
/// modules and the CLI.
inline json to_json(const Mat3& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < 3; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < 3; ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline json to_json(const Vec3& v) {
    json out = json::array();
    for (std::size_t i = 0; i < 3; ++i) out.push_back(to_json(v[i]));
    return out;
}

inline cplx cplx_from_json(const json& j) {
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

inline Mat3 mat_from_json(const json& j) {
    Mat3 m;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < 3; ++k) m(i, k) = cplx_from_json(j.at(i).at(k));
    return m;
}

inline json to_json(const HeisPoint& h) {
    if (h.inf) return json{{"inf", true}};
    return json{{"z", to_json(h.z)}, {"t", h.t}};
}

inline HeisPoint heis_from_json(const json& j) {
    if (j.contains("inf") && j.at("inf").get<bool>()) return HeisPoint::infinity();
    return {cplx_from_json(j.at("z")), j.at("t").get<double>()};
}

inline json to_json(const EllipticType& t) {
    return json{{"p", t.p}, {"q", t.q}, {"n", t.n}};
}

inline json to_json(const SurgeryOutcome& o) {
    switch (o.variant) {
        case SurgeryOutcome::Variant::dehn_filling:
            return json{{"variant", "dehn"},
                        {"slope", {o.slope.a, o.slope.b}},
                        {"marking", o.marking}};
        case SurgeryOutcome::Variant::gluing:
            return json{{"variant", "gluing"},
                        {"p", o.p},
                        {"q", o.q},
                        {"n", o.n},
                        {"lens", {o.n, o.alpha}}};
        default:
            return json{{"variant", "thickening"}};
    }
}

inline json classification_report(const IsometryClass& cls, const Model& model,
                                  const Mat3& m) {
    json eigenvalues = json::array();
    for (const auto& pr : cls.eigen.pairs) eigenvalues.push_back(to_json(pr.value));
    json fixed = json::array();
    if (cls.kind != Kind::identity) {
        for (const auto& f : fixed_points(m, model))
            fixed.push_back(json{{"point", to_json(f.point.rep)},
                                 {"locus", to_string(f.locus)}});
    }
    json out{{"kind", to_string(cls.kind)},
             {"regular", cls.regular},
             {"unipotent", cls.unipotent},
             {"trace", to_json(cls.trace)},
             {"f_of_trace", cls.f_trace},
             {"eigenvalues", eigenvalues},
             {"fixed_points", fixed}};
    if (is_elliptic(cls.kind)) {
        try {
            out["elliptic_type"] = to_json(elliptic_type(m, model));
        } catch (const NotRationalType&) {
            out["elliptic_type"] = nullptr;
        }
    }
    return out;
}

namespace io {

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw error("IoError", "cannot open " + path + " for writing");
    f << content;
}

/// Orbit CSV: t, x, y, z in the Heisenberg chart.
inline std::string orbit_csv(const OrbitPolyline& orbit) {
    std::ostringstream os;
    os << "t,x,y,z\n";
    const auto pts = orbit.r3();
    for (std::size_t k = 0; k < pts.size(); ++k)
        os << fmt(orbit.t[k]) << ',' << fmt(pts[k][0]) << ',' << fmt(pts[k][1]) << ','
           << fmt(pts[k][2]) << '\n';
    return os.str();
}

/// C-circle CSV polyline: theta, z_re, z_im, t in Heisenberg coordinates.
inline std::string ccircle_csv(const CCircle& circle, int samples) {
    std::ostringstream os;
    os << "theta,z_re,z_im,t\n";
    for (int k = 0; k <= samples; ++k) {
        const double theta = 2.0 * M_PI * k / samples;
        const ProjectivePoint p = circle.sample(theta);
        const HeisPoint h = heis_coords(p);
        if (h.inf) continue;
        os << fmt(theta) << ',' << fmt(h.z.real()) << ',' << fmt(h.z.imag()) << ','
           << fmt(h.t) << '\n';
    }
    return os.str();
}

inline std::string mesh_obj(const QuadMesh& mesh) {
    std::ostringstream os;
    for (const auto& v : mesh.vertices)
        os << "v " << fmt(v[0]) << ' ' << fmt(v[1]) << ' ' << fmt(v[2]) << '\n';
    for (const auto& f : mesh.faces())
        os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << ' ' << f[3] + 1
           << '\n';
    return os.str();
}

/// Scan CSV with the fixed header x,y,delta,f,delta_sign,f_sign,in_component.
inline std::string scan_csv(const fig8::ScanGrid& grid) {
    std::ostringstream os;
    os << "x,y,delta,f,delta_sign,f_sign,in_component\n";
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const std::size_t k = grid.at(i, j);
            os << fmt(grid.x[i]) << ',' << fmt(grid.y[j]) << ',' << fmt(grid.delta[k])
               << ',' << fmt(grid.f[k]) << ',' << grid.delta_sign[k] << ','
               << grid.f_sign[k] << ',' << int(grid.in_component[k]) << '\n';
        }
    return os.str();
}

inline std::string contour_csv(const std::vector<std::array<double, 4>>& segs) {
    std::ostringstream os;
    os << "x1,y1,x2,y2\n";
    for (const auto& s : segs)
        os << fmt(s[0]) << ',' << fmt(s[1]) << ',' << fmt(s[2]) << ',' << fmt(s[3]) << '\n';
    return os.str();
}

/// Parse a CSV of 3D points; accepts either x,y,z or t,x,y,z headers.
inline std::vector<R3> polyline_from_csv(const std::string& text) {
    std::vector<R3> pts;
    std::istringstream is(text);
    std::string line;
    bool header = true;
    int offset = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            offset = line.rfind("t,", 0) == 0 ? 1 : 0;
            continue;
        }
        std::array<double, 4> vals{};
        int n = 0;
        std::istringstream ls(line);
        std::string cell;
        while (n < 4 && std::getline(ls, cell, ',')) vals[n++] = std::stod(cell);
        if (n >= 3 + offset)
            pts.push_back({vals[offset], vals[offset + 1], vals[offset + 2]});
    }
    return pts;
}

}  // namespace io

inline json to_json(const fig8::ClassifyAtReport& r, const Model& model, const Mat3& m) {
    json out{{"u", to_json(r.u)},
             {"generator", r.generator == fig8::Generator::a ? "a=m0^-1" : "m0"}};
    out["classification"] = classification_report(r.cls, model, m);
    if (r.type) out["elliptic_type"] = to_json(*r.type);
    if (r.outcome) out["outcome"] = to_json(*r.outcome);
    if (r.slope_l0m0)
        out["slope_l0m0"] = {r.slope_l0m0->a, r.slope_l0m0->b};
    if (!r.reconciliation.empty()) out["reconciliation"] = r.reconciliation;
    return out;
}

}  // namespace crkit
