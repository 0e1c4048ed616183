// Command-line front end: classification reports, normal forms, flow
// orbits, invariant surfaces, horotube meshes, linking numbers, and the
// figure-eight family, all emitted as JSON/CSV/OBJ plot-ready files.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "crkit/crkit.hpp"

namespace {

using namespace crkit;

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw error("IoError", "cannot read " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        io::write_file(out_path, text);
}

Mat3 load_matrix(const std::string& path) {
    return mat_from_json(json::parse(slurp(path)));
}

Model parse_model(const std::string& name) {
    if (name == "ball") return Model::ball();
    if (name == "siegel") return Model::siegel();
    throw error("UsageError", "model must be ball or siegel");
}

cplx parse_cplx(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) return cplx(std::stod(s), 0.0);
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

std::pair<double, double> parse_range(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw error("UsageError", "range must be lo:hi");
    return {std::stod(s.substr(0, colon)), std::stod(s.substr(colon + 1))};
}

// Angles arrive in turns unless --radians is given.
double to_radians(double value, bool radians) { return radians ? value : 2.0 * M_PI * value; }

struct Options {
    bool radians = false;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string out;
};

int run(int argc, char** argv) {
    CLI::App app{"complex hyperbolic plane toolkit"};
    app.require_subcommand(1);

    Options opt;
    app.add_flag("--radians", opt.radians, "angle arguments are radians (default: turns)");
    app.add_option("--seed", opt.seed, "seed for random sampling commands");
    app.add_option("--threads", opt.threads, "worker threads for scan commands");
    app.add_option("--out", opt.out, "output file (default: stdout)");

    // classify
    auto* c_classify = app.add_subcommand("classify", "classification report of a matrix");
    std::string cl_matrix, cl_model = "ball";
    c_classify->add_option("--matrix", cl_matrix, "matrix JSON file")->required();
    c_classify->add_option("--model", cl_model, "ball or siegel");

    // normal-form
    auto* c_nf = app.add_subcommand("normal-form", "conjugate a matrix to its normal form");
    std::string nf_matrix, nf_model = "ball";
    c_nf->add_option("--matrix", nf_matrix)->required();
    c_nf->add_option("--model", nf_model);

    // orbit
    auto* c_orbit = app.add_subcommand("orbit", "sample a one-parameter flow orbit to CSV");
    std::string or_family = "loxodromic", or_matrix, or_model = "siegel";
    std::string or_lambda = "2,0", or_z = "1,0", or_start = "1,0,0";
    double or_alpha = 0, or_beta = 0, or_s = 0, or_theta = 0;
    double or_tmin = 0, or_tmax = 1;
    int or_steps = 256;
    c_orbit->add_option("--family", or_family,
                        "elliptic | loxodromic | unipotent | ep | matrix");
    c_orbit->add_option("--matrix", or_matrix, "generator element (family=matrix)");
    c_orbit->add_option("--model", or_model);
    c_orbit->add_option("--alpha", or_alpha, "elliptic angle (turns)");
    c_orbit->add_option("--beta", or_beta, "elliptic angle (turns)");
    c_orbit->add_option("--lambda", or_lambda, "loxodromic eigenvalue re,im");
    c_orbit->add_option("--z", or_z, "unipotent translation re,im");
    c_orbit->add_option("--s", or_s, "unipotent vertical part");
    c_orbit->add_option("--theta", or_theta, "ellipto-parabolic angle (turns)");
    c_orbit->add_option("--start", or_start, "start point z_re,z_im,t (Heisenberg)");
    c_orbit->add_option("--tmin", or_tmin);
    c_orbit->add_option("--tmax", or_tmax);
    c_orbit->add_option("--steps", or_steps);

    // surface
    auto* c_surface = app.add_subcommand("surface", "invariant surface mesh to OBJ");
    std::string sf_family = "torus", sf_z = "1,0";
    double sf_r = 0.8, sf_span = 2.0;
    int sf_res = 48;
    c_surface->add_option("--family", sf_family, "torus | paraboloid | plane | ep-cylinder");
    c_surface->add_option("--r", sf_r, "surface parameter (torus r, paraboloid r, plane r, cylinder radius)");
    c_surface->add_option("--z", sf_z, "horizontal direction for plane");
    c_surface->add_option("--res", sf_res);
    c_surface->add_option("--span", sf_span, "chart extent for unbounded surfaces");

    // horotube
    auto* c_horotube = app.add_subcommand("horotube", "horotube boundary mesh to OBJ");
    std::string ht_matrix, ht_model = "siegel", ht_center = "0,0";
    double ht_t0 = 0, ht_radius = 1, ht_tmin = 0, ht_tmax = 1;
    int ht_res = 48;
    c_horotube->add_option("--matrix", ht_matrix, "unipotent element")->required();
    c_horotube->add_option("--model", ht_model);
    c_horotube->add_option("--circle-center", ht_center, "circle center z re,im (Heisenberg)");
    c_horotube->add_option("--circle-t", ht_t0, "circle height t");
    c_horotube->add_option("--circle-radius", ht_radius);
    c_horotube->add_option("--tmin", ht_tmin);
    c_horotube->add_option("--tmax", ht_tmax);
    c_horotube->add_option("--res", ht_res);

    // linking
    auto* c_linking = app.add_subcommand("linking", "Gauss linking number of two closed CSV polylines");
    std::string lk_a, lk_b;
    int lk_segments = 256;
    c_linking->add_option("--a", lk_a)->required();
    c_linking->add_option("--b", lk_b)->required();
    c_linking->add_option("--segments", lk_segments);

    // fig8-rho0
    auto* c_rho0 = app.add_subcommand("fig8-rho0", "the explicit unipotent representation");

    // fig8-eval
    auto* c_eval = app.add_subcommand("fig8-eval", "evaluate a word in the family at u");
    std::string ev_u = "3,0", ev_word;
    int ev_branch = +1;
    c_eval->add_option("--u", ev_u)->required();
    c_eval->add_option("--word", ev_word, "word over g1,g2,g3 (e.g. \"g1 g3^-1 g2\")");
    c_eval->add_option("--branch", ev_branch, "+1 or -1 sqrt(Delta) branch");

    // fig8-scan
    auto* c_scan = app.add_subcommand("fig8-scan", "scan delta/f signs over a parameter window");
    std::string sc_x = "0:5", sc_y = "-2:2", sc_contour;
    int sc_res = 200;
    c_scan->add_option("--x", sc_x, "x range lo:hi");
    c_scan->add_option("--y", sc_y, "y range lo:hi");
    c_scan->add_option("--res", sc_res);
    c_scan->add_option("--contour-out", sc_contour, "write Delta=0 contour segments CSV");

    // fig8-classify
    auto* c_fclassify = app.add_subcommand("fig8-classify", "classify the peripheral holonomy at u");
    std::string fc_u, fc_generator = "a";
    long long fc_p = 0, fc_n = 0;
    int fc_branch = +1;
    c_fclassify->add_option("--u", fc_u, "parameter re,im");
    c_fclassify->add_option("--p", fc_p, "use u from the (p,n) construction");
    c_fclassify->add_option("--n", fc_n);
    c_fclassify->add_option("--branch", fc_branch);
    c_fclassify->add_option("--generator", fc_generator, "a (= m0^-1, default) or m0");

    // slope-change
    auto* c_slope = app.add_subcommand("slope-change", "transport a slope between markings");
    std::string sl_slope = "0,1", sl_from = "(l,m)", sl_to = "(l0,m0)";
    c_slope->add_option("--slope", sl_slope, "a,b");
    c_slope->add_option("--from", sl_from, "(l,m) | (-l,m) | (l0,m0)");
    c_slope->add_option("--to", sl_to);

    // outcome
    auto* c_outcome = app.add_subcommand("outcome", "surgery outcome of a classification");
    std::string oc_kind = "loxodromic", oc_type;
    c_outcome->add_option("--kind", oc_kind, "loxodromic | elliptic | parabolic");
    c_outcome->add_option("--type", oc_type, "p,q,n for the elliptic case");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*c_classify) {
            const Model model = parse_model(cl_model);
            const Mat3 m = load_matrix(cl_matrix);
            emit(classification_report(classify(m, model), model, m).dump(2) + "\n", opt.out);
        } else if (*c_nf) {
            const Model model = parse_model(nf_model);
            const Mat3 m = load_matrix(nf_matrix);
            const NormalForm nf = normal_form(m, model);
            const Mat3 shown = model.tag == nf.model ? m
                                                     : cayley_transfer(m, model.tag, nf.model);
            const double res = frob(nf.conjugator * shown * inverse(nf.conjugator) -
                                    nf.representative);
            json out{{"model", to_string(nf.model)},
                     {"representative", to_json(nf.representative)},
                     {"conjugator", to_json(nf.conjugator)},
                     {"residual", res}};
            emit(out.dump(2) + "\n", opt.out);
        } else if (*c_orbit) {
            FlowGenerator gen{Mat3::zero(), ModelTag::siegel};
            if (or_family == "matrix") {
                const Model model = parse_model(or_model);
                gen = FlowGenerator::from_element(load_matrix(or_matrix), model);
            } else if (or_family == "elliptic") {
                gen = generator_of(EllipticFlow{to_radians(or_alpha, opt.radians),
                                                to_radians(or_beta, opt.radians)});
            } else if (or_family == "loxodromic") {
                gen = generator_of(LoxodromicFlow{parse_cplx(or_lambda)});
            } else if (or_family == "unipotent") {
                gen = generator_of(UnipotentFlow{parse_cplx(or_z), or_s});
            } else if (or_family == "ep") {
                gen = generator_of(EpFlow{to_radians(or_theta, opt.radians)});
            } else {
                throw UnknownFamily("unknown flow family " + or_family);
            }
            double sx = 0, sy = 0, st = 0;
            std::sscanf(or_start.c_str(), "%lf,%lf,%lf", &sx, &sy, &st);
            ProjectivePoint x0 = heis_embed({cplx(sx, sy), st});
            const OrbitPolyline orbit = sample_orbit(gen, x0, or_tmin, or_tmax, or_steps);
            emit(io::orbit_csv(orbit), opt.out);
        } else if (*c_surface) {
            InvariantSurface surface = TorusSurface{sf_r};
            if (sf_family == "torus") surface = TorusSurface{sf_r};
            else if (sf_family == "paraboloid") surface = ParaboloidSurface{sf_r};
            else if (sf_family == "plane") surface = PlaneSurface{parse_cplx(sf_z), sf_r};
            else if (sf_family == "ep-cylinder") surface = EpCylinderSurface{sf_r};
            else throw UnknownFamily("unknown surface family " + sf_family);
            emit(io::mesh_obj(surface_mesh(surface, sf_res, sf_span)), opt.out);
        } else if (*c_horotube) {
            const Model model = parse_model(ht_model);
            const Mat3 p = load_matrix(ht_matrix);
            const cplx center = parse_cplx(ht_center);
            std::vector<ProjectivePoint> circle;
            const int samples = std::max(8, ht_res);
            for (int k = 0; k < samples; ++k) {
                const double phi = 2.0 * M_PI * k / samples;
                circle.push_back(heis_embed({center + ht_radius * std::exp(iu * phi), ht_t0}));
            }
            emit(io::mesh_obj(horotube_boundary(p, model, circle, ht_tmin, ht_tmax, ht_res)),
                 opt.out);
        } else if (*c_linking) {
            const auto a = io::polyline_from_csv(slurp(lk_a));
            const auto b = io::polyline_from_csv(slurp(lk_b));
            const LinkingResult r = gauss_linking(a, b, lk_segments);
            json out{{"linking", r.link}, {"integral", r.integral}, {"error", r.error}};
            emit(out.dump(2) + "\n", opt.out);
        } else if (*c_rho0) {
            const fig8::Fig8Rep rep = fig8::rho0();
            const double r2 =
                fig8::projective_identity_residual(fig8::word_eval(fig8::word_r2(), rep));
            const Mat3 m0cubed = fig8::word_eval({3, 3, 3}, rep);
            const Mat3 l0 = fig8::word_eval(fig8::word_l0(), rep);
            const double m03_l0 =
                fig8::projective_identity_residual(m0cubed * inverse(l0));
            json out{{"u", to_json(rep.param.u)},
                     {"g1", to_json(rep.g1)},
                     {"g2", to_json(rep.g2)},
                     {"g3", to_json(rep.g3)},
                     {"form", to_json(rep.form)},
                     {"relator_r2_residual", r2},
                     {"m0_cubed_equals_l0_residual", m03_l0}};
            emit(out.dump(2) + "\n", opt.out);
        } else if (*c_eval) {
            const fig8::Fig8Rep rep = fig8::family_rep(parse_cplx(ev_u), ev_branch);
            json out{{"u", to_json(rep.param.u)},
                     {"delta", rep.param.delta},
                     {"g1", to_json(rep.g1)},
                     {"g2", to_json(rep.g2)},
                     {"g3", to_json(rep.g3)},
                     {"form", to_json(rep.form)}};
            if (!ev_word.empty()) {
                fig8::Word w;
                std::istringstream is(ev_word);
                std::string tok;
                while (is >> tok) {
                    bool inv = false;
                    if (const auto caret = tok.find('^'); caret != std::string::npos) {
                        inv = tok.substr(caret) == "^-1";
                        tok = tok.substr(0, caret);
                    }
                    if (tok.size() != 2 || tok[0] != 'g' || tok[1] < '1' || tok[1] > '3')
                        throw error("UsageError", "word tokens are g1|g2|g3[^-1]");
                    w.push_back(inv ? -(tok[1] - '0') : (tok[1] - '0'));
                }
                const Mat3 value = fig8::word_eval(w, rep);
                out["word"] = ev_word;
                out["value"] = to_json(value);
                out["trace"] = to_json(trace(value));
            }
            emit(out.dump(2) + "\n", opt.out);
        } else if (*c_scan) {
            const auto [xa, xb] = parse_range(sc_x);
            const auto [ya, yb] = parse_range(sc_y);
            const fig8::ScanGrid grid =
                fig8::scan_region(xa, xb, ya, yb, sc_res, opt.threads);
            emit(io::scan_csv(grid), opt.out);
            if (!sc_contour.empty())
                io::write_file(sc_contour,
                               io::contour_csv(fig8::contour_segments(grid, grid.delta)));
        } else if (*c_fclassify) {
            cplx u;
            if (!fc_u.empty()) u = parse_cplx(fc_u);
            else if (fc_n > 0) u = fig8::u_from_pn(fc_p, fc_n);
            else throw error("UsageError", "give --u or --p/--n");
            const auto gen = fc_generator == "m0" ? fig8::Generator::m0 : fig8::Generator::a;
            const auto report = fig8::classify_at(u, fc_branch, gen);
            const auto rep = fig8::family_rep(u, fc_branch);
            const auto ball = fig8::to_ball(rep);
            const Mat3 m = gen == fig8::Generator::a ? inverse(ball.g3) : ball.g3;
            emit(to_json(report, Model::ball(), m).dump(2) + "\n", opt.out);
        } else if (*c_slope) {
            auto marking_of = [](const std::string& name) -> Marking {
                if (name == "(l,m)") return fig8_marking(false);
                if (name == "(-l,m)") return fig8_marking(true);
                if (name == "(l0,m0)") return reference_marking();
                throw error("UsageError", "unknown marking " + name);
            };
            long long a = 0, b = 0;
            std::sscanf(sl_slope.c_str(), "%lld,%lld", &a, &b);
            const Slope s = change_marking({a, b}, marking_of(sl_from), marking_of(sl_to));
            json out{{"slope", {s.a, s.b}}, {"marking", sl_to}};
            emit(out.dump(2) + "\n", opt.out);
        } else if (*c_outcome) {
            SurgeryOutcome outc;
            if (oc_kind == "loxodromic") {
                IsometryClass cls;
                cls.kind = Kind::loxodromic;
                outc = surgery_outcome(cls);
            } else if (oc_kind == "parabolic") {
                IsometryClass cls;
                cls.kind = Kind::horizontal_parabolic;
                outc = surgery_outcome(cls);
            } else if (oc_kind == "elliptic") {
                long long p = 0, q = 0, n = 0;
                if (std::sscanf(oc_type.c_str(), "%lld,%lld,%lld", &p, &q, &n) != 3)
                    throw error("UsageError", "--type p,q,n required for elliptic");
                IsometryClass cls;
                cls.kind = Kind::regular_elliptic;
                outc = surgery_outcome(cls, EllipticType{p, q, n});
            } else {
                throw error("UsageError", "unknown kind " + oc_kind);
            }
            emit(to_json(outc).dump(2) + "\n", opt.out);
        }
    } catch (const error& e) {
        json out{{"error", e.name()}, {"message", e.what()}};
        std::cout << out.dump(2) << "\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
