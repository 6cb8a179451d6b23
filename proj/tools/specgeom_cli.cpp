// Command-line front end: bound evaluation, model-ball eigenvalues, mesh
// spectra, eps-nets, and verification reports.
//
// Exit codes: 0 success, 1 internal error, 2 validation/hypothesis error,
// 3 mesh-quality error, 4 verification row failure.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "specgeom/bounds.hpp"
#include "specgeom/dec.hpp"
#include "specgeom/mesh.hpp"
#include "specgeom/spaceform.hpp"
#include "specgeom/verify.hpp"
#include "specgeom/version.hpp"

namespace {

using namespace specgeom;

constexpr double kPi = std::numbers::pi;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitValidation = 2;
constexpr int kExitMeshQuality = 3;
constexpr int kExitRowFailure = 4;

std::string fmt(double v) { return verify::format_float(v); }

int env_threads() {
    if (const char* t = std::getenv("SPECGEOM_THREADS")) {
        const int n = std::atoi(t);
        if (n > 0) return n;
    }
    return 1;
}

std::string class_to_json(const bounds::ManifoldClass& mc) {
    std::ostringstream os;
    os << "{\"D\": " << (mc.D ? fmt(*mc.D) : "null") << ", \"V\": " << (mc.V ? fmt(*mc.V) : "null")
       << ", \"convention\": \"" << bounds::to_string(mc.convention) << "\", \"n\": " << mc.n
       << ", \"r0\": " << (mc.r0 ? fmt(*mc.r0) : "null") << ", \"rH\": " << fmt(mc.rH)
       << ", \"xi\": " << fmt(mc.xi) << "}";
    return os.str();
}

std::string bound_to_json(const bounds::BoundResult& b) {
    std::ostringstream os;
    os << "{\"inputs\": " << class_to_json(b.inputs) << ", \"k\": " << b.k << ", \"p\": " << b.p
       << ", \"regime\": \"" << bounds::to_string(b.regime) << "\", \"source\": \"" << b.source
       << "\", \"value\": " << (b.value ? fmt(*b.value) : "null")
       << ", \"version\": \"" << kVersion << "\"}";
    return os.str();
}

std::string spectrum_to_json(const dec::SpectrumResult& s) {
    std::ostringstream os;
    os << "{\"eigenvalues\": [";
    for (size_t i = 0; i < s.eigenvalues.size(); ++i)
        os << (i ? ", " : "") << fmt(s.eigenvalues[i]);
    os << "], \"iterations\": " << s.iterations << ", \"kernel_dim\": " << s.kernel_dim
       << ", \"method\": \"" << dec::to_string(s.method) << "\", \"multiplicities\": [";
    for (size_t i = 0; i < s.multiplicities.size(); ++i)
        os << (i ? ", " : "") << s.multiplicities[i];
    os << "], \"p\": " << s.p << ", \"residual_norms\": [";
    for (size_t i = 0; i < s.residual_norms.size(); ++i)
        os << (i ? ", " : "") << fmt(s.residual_norms[i]);
    os << "], \"seed\": " << s.seed << ", \"threads\": " << env_threads()
       << ", \"tol\": " << fmt(s.tol) << ", \"warnings\": [";
    for (size_t i = 0; i < s.warnings.size(); ++i)
        os << (i ? ", " : "") << '"' << s.warnings[i] << '"';
    os << "], \"version\": \"" << kVersion << "\"}";
    return os.str();
}

struct MeshSpec {
    std::string kind;  // torus | icosphere | off
    int param = 0;
    std::string path;
};

MeshSpec parse_mesh_flag(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw DomainError("--mesh expects torus:m, icosphere:s, or off:path");
    MeshSpec spec;
    spec.kind = text.substr(0, colon);
    const std::string rest = text.substr(colon + 1);
    if (spec.kind == "torus" || spec.kind == "icosphere") {
        size_t used = 0;
        spec.param = std::stoi(rest, &used);
        if (used != rest.size()) throw DomainError("--mesh parameter must be an integer");
    } else if (spec.kind == "off") {
        spec.path = rest;
        if (spec.path.empty()) throw DomainError("--mesh off: requires a path");
    } else {
        throw DomainError("--mesh kind must be torus, icosphere, or off");
    }
    return spec;
}

mesh::SurfaceMesh build_mesh(const MeshSpec& spec) {
    if (spec.kind == "torus") return mesh::build_flat_torus(spec.param);
    if (spec.kind == "icosphere") return mesh::build_icosphere(spec.param);
    return mesh::load_off(spec.path);
}

std::vector<int> parse_p_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        int p = -1;
        size_t used = 0;
        try {
            p = std::stoi(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size() || p < 0 || p > 2)
            throw DomainError("--p-list must be comma-separated degrees in {0,1,2}");
        out.push_back(p);
    }
    if (out.empty()) throw DomainError("--p-list is empty");
    return out;
}

// Defaults for the generator meshes: the flat torus has a global flat
// chart, so its class is (n=2, xi=0, D=sqrt(2) pi, rH=pi); the sphere's
// harmonic radius is user-supplied with a conservative pi/2 default.
bounds::ManifoldClass default_class(const MeshSpec& spec) {
    bounds::ManifoldClass mc;
    mc.n = 2;
    if (spec.kind == "torus") {
        mc.xi = 0.0;
        mc.D = std::sqrt(2.0) * kPi;
        mc.rH = kPi;
    } else if (spec.kind == "icosphere") {
        mc.xi = 1.0;
        mc.D = kPi;
        mc.rH = 0.5 * kPi;
    } else {
        mc.rH = 1.0;
    }
    return mc;
}

int run(int argc, char** argv) {
    CLI::App app{"spectral-geometry bounds and discrete verification"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // ---- bound ----
    auto* cmd_bound = app.add_subcommand("bound", "evaluate an eigenvalue upper bound");
    std::string source, convention = "lower", rh_text;
    int n = 2, k = 1, p = 0;
    double xi = 0.0;
    std::optional<double> D, V, r0;
    cmd_bound->add_option("--source", source, "thm1.1|thm1.2|cor3.3|cor3.4|thm3.5|cor3.7|sigma")
        ->required();
    cmd_bound->add_option("--n", n);
    cmd_bound->add_option("--xi", xi);
    cmd_bound->add_option("--convention", convention, "lower|neg-lower");
    cmd_bound->add_option("--D", D);
    cmd_bound->add_option("--rH", rh_text, "harmonic radius (decimal or inf)");
    cmd_bound->add_option("--V", V);
    cmd_bound->add_option("--r0", r0);
    cmd_bound->add_option("--k", k);
    cmd_bound->add_option("--p", p);

    // ---- ball-eig ----
    auto* cmd_ball = app.add_subcommand("ball-eig", "first Dirichlet eigenvalue of a model ball");
    int ball_n = 2;
    double ball_xi = 0.0, ball_r = 1.0, ball_tol = 1e-10;
    cmd_ball->add_option("--n", ball_n)->required();
    cmd_ball->add_option("--xi", ball_xi)->required();
    cmd_ball->add_option("--r", ball_r)->required();
    cmd_ball->add_option("--tol", ball_tol);

    // ---- spectrum ----
    auto* cmd_spec = app.add_subcommand("spectrum", "Hodge-Laplacian spectrum of a mesh");
    std::string mesh_flag;
    int spec_p = 0, spec_num = 6;
    double spec_tol = 1e-8;
    std::uint64_t seed = dec::SolveOptions{}.seed;
    cmd_spec->add_option("--mesh", mesh_flag, "torus:m | icosphere:s | off:path")->required();
    cmd_spec->add_option("--p", spec_p)->required();
    cmd_spec->add_option("--num", spec_num);
    cmd_spec->add_option("--tol", spec_tol);
    cmd_spec->add_option("--seed", seed);

    // ---- net ----
    auto* cmd_net = app.add_subcommand("net", "greedy eps-discretization of a mesh");
    std::string net_mesh_flag;
    double net_eps = 0.0;
    cmd_net->add_option("--mesh", net_mesh_flag)->required();
    cmd_net->add_option("--eps", net_eps)->required();

    // ---- verify ----
    auto* cmd_verify = app.add_subcommand("verify", "run a verification suite and write a report");
    std::string verify_mesh_flag, suite = "main", out_path, format = "json", p_list_text = "0,1,2";
    int k_max = 20;
    std::optional<double> v_xi, v_D, v_rH;
    std::uint64_t v_seed = dec::SolveOptions{}.seed;
    cmd_verify->add_option("--mesh", verify_mesh_flag)->required();
    cmd_verify->add_option("--suite", suite, "main|decomp|all");
    cmd_verify->add_option("--k-max", k_max);
    cmd_verify->add_option("--p-list", p_list_text);
    cmd_verify->add_option("--out", out_path)->required();
    cmd_verify->add_option("--format", format, "json|csv");
    cmd_verify->add_option("--xi", v_xi, "defaults: torus 0, icosphere 1");
    cmd_verify->add_option("--D", v_D,
                           "defaults: torus 4.44288293816, icosphere 3.14159265359");
    cmd_verify->add_option("--rH", v_rH,
                           "defaults: torus 3.14159265359, icosphere 1.57079632679");
    cmd_verify->add_option("--seed", v_seed);

    CLI11_PARSE(app, argc, argv);

    if (cmd_bound->parsed()) {
        bounds::ManifoldClass mc;
        mc.n = n;
        mc.xi = xi;
        if (convention == "lower") mc.convention = bounds::RicciSignConvention::LowerBound;
        else if (convention == "neg-lower") mc.convention = bounds::RicciSignConvention::NegativeLowerBound;
        else throw HypothesisError("--convention must be lower or neg-lower");
        mc.D = D;
        mc.V = V;
        mc.r0 = r0;
        if (!rh_text.empty()) {
            mc.rH = std::stod(rh_text);  // accepts "inf"
        } else if (source != "thm1.1") {
            throw HypothesisError("--rH (harmonic radius) is required for source " + source);
        }
        if (source == "thm1.1") {
            if (rh_text.empty()) mc.rH = 1.0;  // unused by the formula, keeps the class valid
            std::cout << bound_to_json(bounds::cheng_function_bound(mc, k)) << '\n';
        } else if (source == "thm1.2") {
            std::cout << bound_to_json(bounds::hodge_bound(mc, k, p)) << '\n';
        } else if (source == "cor3.3") {
            std::cout << bound_to_json(bounds::nonneg_ricci_bound(mc, k, p)) << '\n';
        } else if (source == "cor3.4") {
            std::cout << bound_to_json(bounds::neg_ricci_bound(mc, k, p)) << '\n';
        } else if (source == "thm3.5") {
            std::cout << bound_to_json(bounds::volume_bound(mc, k, p)) << '\n';
        } else if (source == "cor3.7") {
            std::cout << bound_to_json(bounds::connection_laplacian_bound(mc, p)) << '\n';
        } else if (source == "sigma") {
            const auto list = bounds::sigma_p_bounds(mc, p);
            std::cout << "[";
            for (size_t i = 0; i < list.size(); ++i)
                std::cout << (i ? ", " : "") << bound_to_json(list[i]);
            std::cout << "]\n";
        } else {
            throw HypothesisError("unknown --source " + source);
        }
        return kExitOk;
    }

    if (cmd_ball->parsed()) {
        spaceform::ShootingOptions opts;
        opts.bisect_rel_tol = ball_tol;
        const auto res =
            spaceform::ball_dirichlet_eigenvalue({ball_n, ball_xi}, ball_r, opts);
        const char* method = res.method == spaceform::BallEigMethod::Shooting ? "Shooting"
                             : res.method == spaceform::BallEigMethod::BesselFastPath
                                 ? "BesselFastPath"
                                 : "ClosedForm";
        std::cout << "{\"iterations\": " << res.iterations << ", \"lambda\": " << fmt(res.lambda)
                  << ", \"method\": \"" << method << "\", \"radius\": " << fmt(res.radius)
                  << ", \"residual\": " << fmt(res.residual) << ", \"version\": \"" << kVersion
                  << "\"}\n";
        return kExitOk;
    }

    if (cmd_spec->parsed()) {
        const auto mesh_obj = build_mesh(parse_mesh_flag(mesh_flag));
        const auto ops = dec::assemble(mesh_obj);
        dec::SolveOptions opts;
        opts.tol = spec_tol;
        opts.seed = seed;
        const auto pencil = dec::hodge_laplacian(ops, spec_p);
        const auto result = dec::solve_spectrum(pencil, spec_num, opts);
        std::cout << spectrum_to_json(result) << '\n';
        return kExitOk;
    }

    if (cmd_net->parsed()) {
        const MeshSpec spec = parse_mesh_flag(net_mesh_flag);
        const auto mesh_obj = build_mesh(spec);
        const auto net = mesh::build_eps_net(mesh_obj, net_eps);
        std::ostringstream os;
        os << "{\"centers\": [";
        for (size_t i = 0; i < net.centers.size(); ++i)
            os << (i ? ", " : "") << net.centers[i];
        os << "], \"covering_ok\": " << (net.covering_ok ? "true" : "false")
           << ", \"eps\": " << fmt(net.eps)
           << ", \"separation_ok\": " << (net.separation_ok ? "true" : "false")
           << ", \"size\": " << net.centers.size();
        // Volume-comparison context for the generator models: the valid
        // covering lower bound uses 2 eps balls; the half-eps ratio is
        // printed as stated alongside it for reference.
        if (spec.kind == "torus" || spec.kind == "icosphere") {
            const double xi_model = (spec.kind == "torus") ? 0.0 : 1.0;
            const double area = mesh_obj.total_area();
            const spaceform::ModelSpace ms{2, xi_model};
            const double v_half = spaceform::model_ball_volume(ms, 0.5 * net.eps);
            const double cap = xi_model > 0.0 ? kPi / std::sqrt(xi_model)
                                              : std::numeric_limits<double>::infinity();
            const double two_eps = std::min(2.0 * net.eps, cap);
            const double v_two = spaceform::model_ball_volume(ms, two_eps);
            os << ", \"bishop\": {\"area\": " << fmt(area)
               << ", \"lower_bound_cover\": " << fmt(area / v_two)
               << ", \"lower_bound_half\": " << fmt(area / v_half)
               << ", \"v_eps_half\": " << fmt(v_half) << ", \"v_two_eps\": " << fmt(v_two) << "}";
        } else {
            os << ", \"bishop\": null";
        }
        os << ", \"version\": \"" << kVersion << "\"}";
        std::cout << os.str() << '\n';
        return kExitOk;
    }

    if (cmd_verify->parsed()) {
        const MeshSpec spec = parse_mesh_flag(verify_mesh_flag);
        const auto p_list = parse_p_list(p_list_text);
        if (k_max < 1) throw DomainError("--k-max must be >= 1");
        if (suite != "main" && suite != "decomp" && suite != "all")
            throw DomainError("--suite must be main, decomp, or all");
        if (format != "json" && format != "csv")
            throw DomainError("--format must be json or csv");

        const auto mesh_obj = build_mesh(spec);
        const auto ops = dec::assemble(mesh_obj);

        bounds::ManifoldClass mc = default_class(spec);
        if (v_xi) mc.xi = *v_xi;
        if (v_D) mc.D = *v_D;
        if (v_rH) mc.rH = *v_rH;
        if (spec.kind == "off" && (!v_D || !v_rH))
            throw HypothesisError("verify on an OFF mesh requires --D and --rH");

        verify::HarnessOptions hopts;
        hopts.solve.seed = v_seed;

        std::vector<verify::VerificationReport> parts;
        if (suite == "main" || suite == "all") {
            for (int deg : p_list)
                parts.push_back(
                    verify::check_main_theorem(mesh_obj, ops, mc, k_max, deg, verify::MainBound::Thm12, hopts));
        }
        if (suite == "decomp" || suite == "all") {
            verify::HarnessOptions dopts = hopts;
            dopts.report_tol = 1e-9;
            const auto net = mesh::build_eps_net(mesh_obj, 0.5 * kPi);
            std::vector<mesh::GeodesicBall> balls;
            for (int c : net.centers)
                balls.push_back(mesh::geodesic_ball(mesh_obj, c, 0.5 * kPi));
            for (int deg : p_list) {
                if (deg > 1) continue;  // decomposition suite covers p in {0,1}
                parts.push_back(
                    verify::check_domain_decomposition(mesh_obj, ops, balls, 1, deg, dopts));
            }
        }
        auto report = verify::merge_reports(parts);
        report.diagnostics.threads = env_threads();

        std::ofstream out(out_path);
        if (!out) throw IoError("cannot open output path " + out_path);
        out << verify::emit_report(report, format == "json" ? verify::ReportFormat::Json
                                                            : verify::ReportFormat::Csv);
        if (!out) throw IoError("write failed for " + out_path);
        out.close();

        std::cout << "{\"fail\": " << report.fail_count() << ", \"out\": \"" << out_path
                  << "\", \"pass\": " << report.pass_count() << "}\n";
        return report.fail_count() == 0 ? kExitOk : kExitRowFailure;
    }

    return kExitInternal;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const specgeom::MeshValidationError& e) {
        std::cerr << "mesh validation error: " << e.what();
        if (!e.offending_edges.empty()) {
            std::cerr << " [edges:";
            for (size_t i = 0; i < e.offending_edges.size() && i < 16; ++i)
                std::cerr << ' ' << e.offending_edges[i];
            std::cerr << ']';
        }
        std::cerr << '\n';
        return kExitMeshQuality;
    } catch (const specgeom::MeshQualityError& e) {
        std::cerr << "mesh quality error: " << e.what() << '\n';
        return kExitMeshQuality;
    } catch (const specgeom::DegenerateDomainError& e) {
        std::cerr << "degenerate domain: " << e.what() << '\n';
        return kExitValidation;
    } catch (const specgeom::DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const specgeom::HypothesisError& e) {
        std::cerr << "hypothesis violation: " << e.what() << '\n';
        return kExitValidation;
    } catch (const specgeom::ParseError& e) {
        std::cerr << "parse error (line " << e.line << "): " << e.what() << '\n';
        return kExitValidation;
    } catch (const specgeom::SolverError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInternal;
    }
}
