#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "specgeom/bounds.hpp"
#include "specgeom/dec.hpp"
#include "specgeom/mesh.hpp"

namespace specgeom::verify {

enum class AnalyticManifold { FlatTorus2D, RoundSphere2D };

/// First `count` Hodge-Laplacian eigenvalues with multiplicity on the
/// 2 pi x 2 pi flat torus (lattice values |m|^2) or the unit sphere
/// (l(l+1) ladders), kernel included.
std::vector<double> reference_spectrum(AnalyticManifold m, int p, int count);

/// Harmonic-form count: (1, 2, 1) for the torus, (1, 0, 1) for the sphere.
int reference_kernel_dim(AnalyticManifold m, int p);

/// One inequality row. `lambda` is the k-th positive eigenvalue
/// (counted with multiplicity, kernel excluded) and governs pass/fail;
/// `lambda_incl` is the value at index k counted from the bottom with
/// the kernel included. The first convention dominates the second, so
/// passing under it passes under both.
struct ReportRow {
    int k = 0;
    int p = 0;
    double lambda = 0.0;
    double lambda_incl = 0.0;
    double bound = 0.0;
    std::string source;
    std::string regime;
    double margin = 0.0;
    bool pass = false;
};

struct MeshInfo {
    std::string descriptor;
    int V = 0, E = 0, F = 0;
    double area = 0.0;
    std::optional<double> diameter_graph;
    bool diameter_exact = false;
};

struct Diagnostics {
    std::uint64_t seed = 0;
    double tol = 0.0;
    std::string method;
    int threads = 1;
    std::optional<double> deviation;  ///< max relative gap to the reference spectrum
    std::vector<std::string> warnings;
};

struct VerificationReport {
    MeshInfo mesh;
    std::optional<bounds::ManifoldClass> manifold;
    std::vector<ReportRow> rows;
    Diagnostics diagnostics;
    double report_tol = 1e-8;  ///< row fails iff margin < -report_tol * bound

    int pass_count() const;
    int fail_count() const;
};

enum class MainBound { Thm12, Cor33, Cor34 };

struct HarnessOptions {
    dec::SolveOptions solve;
    double report_tol = 1e-8;
    spaceform::ShootingOptions shooting;
};

/// Eigenvalue rows lambda_{k,p} vs the selected bound for k = 1..k_max.
VerificationReport check_main_theorem(const mesh::SurfaceMesh& mesh, const dec::DecOperators& ops,
                                      const bounds::ManifoldClass& mc, int k_max, int p,
                                      MainBound source = MainBound::Thm12,
                                      const HarnessOptions& opts = {});

/// Domain-decomposition row: the closed eigenvalue at bottom-index
/// j*l - 1 (kernel included) against max_i of the (l-1)-th Dirichlet
/// eigenvalue over the pairwise-disjoint subdomains. Exact for the
/// discrete operators, so the default tolerance is 1e-9 relative.
VerificationReport check_domain_decomposition(const mesh::SurfaceMesh& mesh,
                                              const dec::DecOperators& ops,
                                              const std::vector<mesh::GeodesicBall>& balls,
                                              int l, int p, HarnessOptions opts = {});

/// Merges reports (rows re-sorted by (k, p)); diagnostics are combined.
VerificationReport merge_reports(const std::vector<VerificationReport>& parts);

struct QuadformSummary {
    int trials = 0;
    int violations = 0;
    std::vector<std::uint64_t> failing_seeds;
};

/// Randomized check of the quadratic-form eigenvalue comparison under a
/// random injective map: with the tight constants
///   C1 = max <f,f>_1 / <Phi f, Phi f>_2,  C2 = min Q1(f) / Q2(Phi f)
/// (computed exactly by dense generalized eigensolves), verifies
/// lambda_k(Q1) >= (C2/C1) lambda_k(Q2) for k = 1..dim1 per trial.
QuadformSummary quadform_comparison_check(int trials, int dim1, int dim2, std::uint64_t seed);

enum class ReportFormat { Json, Csv };

/// Deterministic serialization: sorted keys, every float as %.12e.
std::string emit_report(const VerificationReport& report, ReportFormat format);

/// Inverse of the JSON emitter (structural; floats carry the %.12e
/// precision of the serialized text).
VerificationReport parse_report(const std::string& json_text);

/// %.12e float field used across all report emitters.
std::string format_float(double v);

MeshInfo describe_mesh(const mesh::SurfaceMesh& mesh, bool with_diameter = true);

} // namespace specgeom::verify
