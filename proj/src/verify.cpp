#include "specgeom/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include <Eigen/Dense>

#include <json.hpp>

#include "specgeom/version.hpp"

namespace specgeom::verify {

namespace {

std::string join_unique(std::vector<std::string> items) {
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    std::string out;
    for (size_t i = 0; i < items.size(); ++i) {
        if (i) out += ',';
        out += items[i];
    }
    return out;
}

} // namespace

int VerificationReport::pass_count() const {
    return static_cast<int>(std::count_if(rows.begin(), rows.end(),
                                          [](const ReportRow& r) { return r.pass; }));
}

int VerificationReport::fail_count() const {
    return static_cast<int>(rows.size()) - pass_count();
}

std::vector<double> reference_spectrum(AnalyticManifold m, int p, int count) {
    if (count < 1) throw DomainError("reference_spectrum: count >= 1 required");
    if (p < 0 || p > 2) throw DomainError("reference_spectrum: p in {0, 1, 2} required");

    std::vector<double> vals;
    if (m == AnalyticManifold::FlatTorus2D) {
        const int radius = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(count)))) + 2;
        for (int a = -radius; a <= radius; ++a)
            for (int b = -radius; b <= radius; ++b)
                vals.push_back(static_cast<double>(a) * a + static_cast<double>(b) * b);
        std::sort(vals.begin(), vals.end());
        if (p == 1) {
            std::vector<double> doubled;
            doubled.reserve(2 * vals.size());
            for (double v : vals) {
                doubled.push_back(v);
                doubled.push_back(v);
            }
            vals = std::move(doubled);
        }
    } else {
        for (int l = 0; static_cast<int>(vals.size()) < count; ++l) {
            const double lam = static_cast<double>(l) * (l + 1);
            int mult;
            if (p == 1) {
                if (l == 0) continue;
                mult = 2 * (2 * l + 1);
            } else {
                mult = 2 * l + 1;
            }
            for (int i = 0; i < mult; ++i) vals.push_back(lam);
        }
    }
    if (static_cast<int>(vals.size()) < count)
        throw Error("reference_spectrum: enumeration shorter than requested");
    vals.resize(count);
    return vals;
}

int reference_kernel_dim(AnalyticManifold m, int p) {
    if (p < 0 || p > 2) throw DomainError("reference_kernel_dim: p in {0, 1, 2} required");
    if (m == AnalyticManifold::FlatTorus2D) return p == 1 ? 2 : 1;
    return p == 1 ? 0 : 1;
}

MeshInfo describe_mesh(const mesh::SurfaceMesh& m, bool with_diameter) {
    MeshInfo info;
    info.descriptor = m.descriptor;
    info.V = m.num_vertices();
    info.E = m.num_edges();
    info.F = m.num_triangles();
    info.area = m.total_area();
    if (with_diameter) {
        const auto d = mesh::estimate_diameter(m);
        info.diameter_graph = d.value;
        info.diameter_exact = d.exact;
    }
    return info;
}

namespace {

std::optional<AnalyticManifold> analytic_model(const std::string& descriptor) {
    if (descriptor.rfind("torus:", 0) == 0) return AnalyticManifold::FlatTorus2D;
    if (descriptor.rfind("icosphere:", 0) == 0) return AnalyticManifold::RoundSphere2D;
    return std::nullopt;
}

bounds::BoundResult eval_bound(MainBound source, const bounds::ManifoldClass& mc, int k, int p,
                               const spaceform::ShootingOptions& shooting) {
    switch (source) {
        case MainBound::Thm12: return bounds::hodge_bound(mc, k, p, shooting);
        case MainBound::Cor33: return bounds::nonneg_ricci_bound(mc, k, p);
        default: return bounds::neg_ricci_bound(mc, k, p);
    }
}

} // namespace

VerificationReport check_main_theorem(const mesh::SurfaceMesh& m, const dec::DecOperators& ops,
                                      const bounds::ManifoldClass& mc, int k_max, int p,
                                      MainBound source, const HarnessOptions& opts) {
    if (k_max < 1) throw DomainError("check_main_theorem: k_max >= 1 required");
    mc.validate();

    VerificationReport rep;
    rep.report_tol = opts.report_tol;
    rep.mesh = describe_mesh(m);
    rep.manifold = mc;
    rep.diagnostics.seed = opts.solve.seed;
    rep.diagnostics.tol = opts.solve.tol;

    if (mc.D && mc.rH >= *mc.D)
        rep.diagnostics.warnings.push_back(
            "hypothesis warning: harmonic radius rH >= diameter D; supplied class is suspicious");

    const dec::HodgePencil pencil = dec::hodge_laplacian(ops, p);
    int num = k_max + 4;
    dec::SpectrumResult spec = dec::solve_spectrum(pencil, num, opts.solve);
    if (spec.kernel_dim + k_max > static_cast<int>(spec.eigenvalues.size())) {
        num = spec.kernel_dim + k_max + 2;
        spec = dec::solve_spectrum(pencil, num, opts.solve);
    }
    rep.diagnostics.method = dec::to_string(spec.method);
    for (const auto& w : spec.warnings) rep.diagnostics.warnings.push_back(w);

    const auto& e = spec.eigenvalues;
    for (int k = 1; k <= k_max; ++k) {
        const auto b = eval_bound(source, mc, k, p, opts.shooting);
        ReportRow row;
        row.k = k;
        row.p = p;
        row.lambda = e.at(spec.kernel_dim + k - 1);
        row.lambda_incl = e.at(std::min<size_t>(k, e.size() - 1));
        row.bound = b.value.value();
        row.source = b.source;
        row.regime = bounds::to_string(b.regime);
        row.margin = row.bound - row.lambda;
        row.pass = row.margin >= -rep.report_tol * row.bound;
        rep.rows.push_back(std::move(row));
    }

    if (const auto model = analytic_model(m.descriptor)) {
        const int ref_kern = reference_kernel_dim(*model, p);
        const auto ref = reference_spectrum(*model, p, ref_kern + k_max);
        double dev = 0.0;
        for (int k = 1; k <= k_max; ++k) {
            const double target = ref.at(ref_kern + k - 1);
            if (target > 0.0)
                dev = std::max(dev, std::abs(e.at(spec.kernel_dim + k - 1) - target) / target);
        }
        rep.diagnostics.deviation = dev;
        if (dev > 0.02)
            rep.diagnostics.warnings.push_back(
                "discretization deviation vs reference spectrum exceeds 2%; "
                "bound comparisons may reflect mesh error");
        if (spec.kernel_dim != ref_kern)
            rep.diagnostics.warnings.push_back("kernel dimension differs from the reference value");
    }
    return rep;
}

VerificationReport check_domain_decomposition(const mesh::SurfaceMesh& m,
                                              const dec::DecOperators& ops,
                                              const std::vector<mesh::GeodesicBall>& balls,
                                              int l, int p, HarnessOptions opts) {
    if (balls.empty()) throw DomainError("check_domain_decomposition: at least one ball required");
    if (l < 1) throw DomainError("check_domain_decomposition: l >= 1 required");

    VerificationReport rep;
    rep.report_tol = opts.report_tol;
    rep.mesh = describe_mesh(m);
    rep.diagnostics.seed = opts.solve.seed;
    rep.diagnostics.tol = opts.solve.tol;

    std::vector<dec::DirichletSubproblem> subs;
    subs.reserve(balls.size());
    for (const auto& b : balls) subs.push_back(dec::dirichlet_subproblem(m, b));

    // Pairwise disjointness of the kept simplices in degree p.
    std::set<int> seen;
    for (const auto& s : subs)
        for (int id : s.kept[p])
            if (!seen.insert(id).second)
                throw DomainError(
                    "check_domain_decomposition: kept simplices overlap in degree " +
                    std::to_string(p));

    const int j = static_cast<int>(balls.size());
    double bound = 0.0;
    std::vector<std::string> methods;
    for (const auto& s : subs) {
        const auto spec = dec::dirichlet_spectrum(s, ops, p, l, opts.solve);
        if (static_cast<int>(spec.eigenvalues.size()) < l)
            throw DegenerateDomainError(
                "check_domain_decomposition: subdomain has fewer than l degrees of freedom");
        bound = std::max(bound, spec.eigenvalues[l - 1]);
        methods.push_back(dec::to_string(spec.method));
    }

    const dec::HodgePencil pencil = dec::hodge_laplacian(ops, p);
    const int index = j * l - 1;
    const auto closed = dec::solve_spectrum(pencil, index + 2 <= pencil.dim() ? index + 2 : pencil.dim(),
                                            opts.solve);
    if (static_cast<int>(closed.eigenvalues.size()) <= index)
        throw DomainError("check_domain_decomposition: closed spectrum shorter than j*l");
    methods.push_back(dec::to_string(closed.method));
    rep.diagnostics.method = join_unique(methods);
    for (const auto& w : closed.warnings) rep.diagnostics.warnings.push_back(w);

    ReportRow row;
    row.k = index;  // bottom-inclusive index jl-1
    row.p = p;
    row.lambda = closed.eigenvalues[index];
    row.lambda_incl = row.lambda;
    row.bound = bound;
    row.source = (l == 1) ? "Cor 2.6" : "Lem 2.5";
    row.regime = "NotApplicable";
    row.margin = row.bound - row.lambda;
    row.pass = row.margin >= -rep.report_tol * row.bound;
    rep.rows.push_back(std::move(row));
    return rep;
}

VerificationReport merge_reports(const std::vector<VerificationReport>& parts) {
    if (parts.empty()) throw DomainError("merge_reports: empty input");
    VerificationReport rep = parts.front();
    std::vector<std::string> methods{rep.diagnostics.method};
    for (size_t i = 1; i < parts.size(); ++i) {
        const auto& q = parts[i];
        rep.rows.insert(rep.rows.end(), q.rows.begin(), q.rows.end());
        methods.push_back(q.diagnostics.method);
        for (const auto& w : q.diagnostics.warnings) rep.diagnostics.warnings.push_back(w);
        if (q.diagnostics.deviation)
            rep.diagnostics.deviation =
                std::max(rep.diagnostics.deviation.value_or(0.0), *q.diagnostics.deviation);
        rep.report_tol = std::min(rep.report_tol, q.report_tol);
    }
    rep.diagnostics.method = join_unique(methods);
    std::stable_sort(rep.rows.begin(), rep.rows.end(), [](const ReportRow& a, const ReportRow& b) {
        return std::tie(a.k, a.p) < std::tie(b.k, b.p);
    });
    std::sort(rep.diagnostics.warnings.begin(), rep.diagnostics.warnings.end());
    rep.diagnostics.warnings.erase(
        std::unique(rep.diagnostics.warnings.begin(), rep.diagnostics.warnings.end()),
        rep.diagnostics.warnings.end());
    return rep;
}

QuadformSummary quadform_comparison_check(int trials, int dim1, int dim2, std::uint64_t seed) {
    if (dim1 < 1 || dim1 > dim2)
        throw DomainError("quadform_comparison_check: need 1 <= dim1 <= dim2");

    QuadformSummary summary;
    summary.trials = trials;

    auto spd = [](std::mt19937_64& rng, int n) {
        std::normal_distribution<double> gauss(0.0, 1.0);
        Eigen::MatrixXd r(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) r(i, j) = gauss(rng);
        return Eigen::MatrixXd(r.transpose() * r + 0.1 * Eigen::MatrixXd::Identity(n, n));
    };

    for (int t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = seed + static_cast<std::uint64_t>(t);
        std::mt19937_64 rng(trial_seed);
        std::normal_distribution<double> gauss(0.0, 1.0);

        const Eigen::MatrixXd a1 = spd(rng, dim1), g1 = spd(rng, dim1);
        const Eigen::MatrixXd a2 = spd(rng, dim2), g2 = spd(rng, dim2);
        Eigen::MatrixXd phi(dim2, dim1);
        do {
            for (int i = 0; i < dim2; ++i)
                for (int j = 0; j < dim1; ++j) phi(i, j) = gauss(rng);
        } while (phi.jacobiSvd().singularValues().minCoeff() < 1e-8);

        const Eigen::MatrixXd pg2p = phi.transpose() * g2 * phi;
        const Eigen::MatrixXd pa2p = phi.transpose() * a2 * phi;

        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> c1_solver(g1, pg2p);
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> c2_solver(a1, pa2p);
        const double c1 = c1_solver.eigenvalues().maxCoeff();
        const double c2 = c2_solver.eigenvalues().minCoeff();

        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> e1(a1, g1);
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> e2(a2, g2);

        bool ok = true;
        for (int k = 0; k < dim1; ++k) {
            const double lhs = e1.eigenvalues()[k];
            const double rhs = (c2 / c1) * e2.eigenvalues()[k];
            if (lhs < rhs * (1.0 - 1e-9) - 1e-12) { ok = false; break; }
        }
        if (!ok) {
            ++summary.violations;
            summary.failing_seeds.push_back(trial_seed);
        }
    }
    return summary;
}

// ---------------------------------------------------------------------------
// Serialization

std::string format_float(double v) {
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    if (std::isnan(v)) return "\"nan\"";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

namespace {

std::string json_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

std::string opt_float(const std::optional<double>& v) {
    return v ? format_float(*v) : "null";
}

std::string class_json(const std::optional<bounds::ManifoldClass>& mc, const std::string& pad) {
    if (!mc) return "null";
    std::ostringstream os;
    os << "{\n";
    os << pad << "  \"D\": " << opt_float(mc->D) << ",\n";
    os << pad << "  \"V\": " << opt_float(mc->V) << ",\n";
    os << pad << "  \"convention\": " << json_string(bounds::to_string(mc->convention)) << ",\n";
    os << pad << "  \"n\": " << mc->n << ",\n";
    os << pad << "  \"r0\": " << opt_float(mc->r0) << ",\n";
    os << pad << "  \"rH\": " << format_float(mc->rH) << ",\n";
    os << pad << "  \"xi\": " << format_float(mc->xi) << "\n";
    os << pad << "}";
    return os.str();
}

} // namespace

std::string emit_report(const VerificationReport& rep, ReportFormat format) {
    if (format == ReportFormat::Csv) {
        std::ostringstream os;
        os << "k,p,lambda,bound,source,regime,margin,pass\n";
        for (const auto& r : rep.rows) {
            os << r.k << ',' << r.p << ',' << format_float(r.lambda) << ','
               << format_float(r.bound) << ',' << r.source << ',' << r.regime << ','
               << format_float(r.margin) << ',' << (r.pass ? "true" : "false") << '\n';
        }
        return os.str();
    }

    std::ostringstream os;
    os << "{\n";
    os << "  \"class\": " << class_json(rep.manifold, "  ") << ",\n";
    os << "  \"diagnostics\": {\n";
    os << "    \"deviation\": " << opt_float(rep.diagnostics.deviation) << ",\n";
    os << "    \"method\": " << json_string(rep.diagnostics.method) << ",\n";
    os << "    \"seed\": " << rep.diagnostics.seed << ",\n";
    os << "    \"threads\": " << rep.diagnostics.threads << ",\n";
    os << "    \"tol\": " << format_float(rep.diagnostics.tol) << ",\n";
    os << "    \"warnings\": [";
    for (size_t i = 0; i < rep.diagnostics.warnings.size(); ++i) {
        if (i) os << ", ";
        os << json_string(rep.diagnostics.warnings[i]);
    }
    os << "]\n  },\n";
    os << "  \"mesh\": {\n";
    os << "    \"E\": " << rep.mesh.E << ",\n";
    os << "    \"F\": " << rep.mesh.F << ",\n";
    os << "    \"V\": " << rep.mesh.V << ",\n";
    os << "    \"area\": " << format_float(rep.mesh.area) << ",\n";
    os << "    \"descriptor\": " << json_string(rep.mesh.descriptor) << ",\n";
    os << "    \"diameter_exact\": " << (rep.mesh.diameter_exact ? "true" : "false") << ",\n";
    os << "    \"diameter_graph\": " << opt_float(rep.mesh.diameter_graph) << "\n";
    os << "  },\n";
    os << "  \"rows\": [";
    for (size_t i = 0; i < rep.rows.size(); ++i) {
        const auto& r = rep.rows[i];
        os << (i ? ",\n    " : "\n    ");
        os << "{\"bound\": " << format_float(r.bound) << ", \"k\": " << r.k
           << ", \"lambda\": " << format_float(r.lambda)
           << ", \"lambda_incl\": " << format_float(r.lambda_incl)
           << ", \"margin\": " << format_float(r.margin) << ", \"p\": " << r.p
           << ", \"pass\": " << (r.pass ? "true" : "false")
           << ", \"regime\": " << json_string(r.regime)
           << ", \"source\": " << json_string(r.source) << "}";
    }
    os << (rep.rows.empty() ? "]" : "\n  ]") << ",\n";
    os << "  \"summary\": {\n";
    os << "    \"fail\": " << rep.fail_count() << ",\n";
    os << "    \"pass\": " << rep.pass_count() << ",\n";
    os << "    \"rows\": " << rep.rows.size() << "\n";
    os << "  },\n";
    os << "  \"version\": " << json_string(kVersion) << "\n";
    os << "}\n";
    return os.str();
}

VerificationReport parse_report(const std::string& json_text) {
    const auto j = nlohmann::json::parse(json_text);
    VerificationReport rep;

    auto opt_double = [](const nlohmann::json& v) -> std::optional<double> {
        if (v.is_null()) return std::nullopt;
        if (v.is_string()) {
            const std::string s = v.get<std::string>();
            if (s == "inf") return std::numeric_limits<double>::infinity();
            if (s == "-inf") return -std::numeric_limits<double>::infinity();
            return std::stod(s);
        }
        return v.get<double>();
    };

    if (!j.at("class").is_null()) {
        const auto& c = j.at("class");
        bounds::ManifoldClass mc;
        mc.n = c.at("n").get<int>();
        mc.xi = *opt_double(c.at("xi"));
        mc.convention = c.at("convention").get<std::string>() == "lower"
                            ? bounds::RicciSignConvention::LowerBound
                            : bounds::RicciSignConvention::NegativeLowerBound;
        mc.r0 = opt_double(c.at("r0"));
        mc.rH = *opt_double(c.at("rH"));
        mc.D = opt_double(c.at("D"));
        mc.V = opt_double(c.at("V"));
        rep.manifold = mc;
    }

    const auto& d = j.at("diagnostics");
    rep.diagnostics.deviation = opt_double(d.at("deviation"));
    rep.diagnostics.method = d.at("method").get<std::string>();
    rep.diagnostics.seed = d.at("seed").get<std::uint64_t>();
    rep.diagnostics.threads = d.at("threads").get<int>();
    rep.diagnostics.tol = *opt_double(d.at("tol"));
    for (const auto& w : d.at("warnings")) rep.diagnostics.warnings.push_back(w.get<std::string>());

    const auto& m = j.at("mesh");
    rep.mesh.E = m.at("E").get<int>();
    rep.mesh.F = m.at("F").get<int>();
    rep.mesh.V = m.at("V").get<int>();
    rep.mesh.area = *opt_double(m.at("area"));
    rep.mesh.descriptor = m.at("descriptor").get<std::string>();
    rep.mesh.diameter_exact = m.at("diameter_exact").get<bool>();
    rep.mesh.diameter_graph = opt_double(m.at("diameter_graph"));

    for (const auto& r : j.at("rows")) {
        ReportRow row;
        row.bound = *opt_double(r.at("bound"));
        row.k = r.at("k").get<int>();
        row.lambda = *opt_double(r.at("lambda"));
        row.lambda_incl = *opt_double(r.at("lambda_incl"));
        row.margin = *opt_double(r.at("margin"));
        row.p = r.at("p").get<int>();
        row.pass = r.at("pass").get<bool>();
        row.regime = r.at("regime").get<std::string>();
        row.source = r.at("source").get<std::string>();
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

} // namespace specgeom::verify
