#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specgeom/spaceform.hpp"

namespace specgeom::bounds {

/// Sign convention for the Ricci lower-bound parameter xi.
/// LowerBound:          Ric >= (n-1) xi, xi of any sign.
/// NegativeLowerBound:  Ric >= -(n-1) xi, xi >= 0.
/// Always explicit; never inferred from the sign of xi.
enum class RicciSignConvention { LowerBound, NegativeLowerBound };

/// Geometric class of a manifold: the hypothesis data every bound
/// formula consumes. rH may be +infinity (used by the spectral-gap
/// bound in the limit of a global harmonic chart).
struct ManifoldClass {
    int n = 2;                     ///< dimension, n >= 2
    double xi = 0.0;               ///< Ricci parameter under `convention`
    RicciSignConvention convention = RicciSignConvention::LowerBound;
    std::optional<double> r0;      ///< injectivity-radius lower bound
    double rH = 0.0;               ///< harmonic-radius lower bound, > 0
    std::optional<double> D;       ///< diameter
    std::optional<double> V;       ///< volume

    /// Throws HypothesisError / DomainError on inconsistent data
    /// (rH > r0, Myers violation D > pi/sqrt(xi), ...).
    void validate() const;
};

enum class Regime { LargeK, SmallK, NotApplicable };

/// A computed upper bound together with its provenance. For bounds with
/// a single formula the regime tag records the formula shape: LargeK for
/// D/2k-ball expressions, SmallK for rH-ball expressions.
struct BoundResult {
    std::optional<double> value;   ///< absent iff regime == NotApplicable
    Regime regime = Regime::NotApplicable;
    std::string source;            ///< "Thm 1.2", "Cor 3.3", ...
    int k = 0;
    int p = 0;
    ManifoldClass inputs;
};

/// Function-Laplacian eigenvalue bound lambda_k <= lambda_0^D(B_xi(D/2k)).
BoundResult cheng_function_bound(const ManifoldClass& mc, int k,
                                 const spaceform::ShootingOptions& opts = {});

/// Hodge-Laplacian bound on p-forms:
///   2^{2p+1} lambda_0^D(B_xi(D/2k))  for k >= D/(2 rH),
///   2^{2p+1} lambda_0^D(B_xi(rH))    for k <= D/(2 rH),
/// the minimum of both at equality.
BoundResult hodge_bound(const ManifoldClass& mc, int k, int p,
                        const spaceform::ShootingOptions& opts = {});

/// Closed-form surrogate for nonnegative Ricci curvature:
///   2^{2p+1} n^2 pi^2 k^2 / D^2   (large k)
///   2^{2p-1} n^2 pi^2 / rH^2      (small k)
BoundResult nonneg_ricci_bound(const ManifoldClass& mc, int k, int p);

/// Closed-form bound under Ric >= -(n-1) xi, split by parity of n.
BoundResult neg_ricci_bound(const ManifoldClass& mc, int k, int p);

/// Volume-only bound 2^{2p+n+5} (k+1) (alpha_n / V)^{2/n}, applicable
/// for k > 2^n V / (alpha_{n-1} rH^n); NotApplicable below the threshold.
BoundResult volume_bound(const ManifoldClass& mc, int k, int p);

/// Connection (rough) Laplacian bound on 1-forms for Ric >= 0:
/// 2^{2p+1} n^2 pi^2 / rH^2. The exponent parameter p defaults to 1.
BoundResult connection_laplacian_bound(const ManifoldClass& mc, int p = 1);

/// Bounds on the bottom of the L^2 spectrum of p-forms on a complete
/// non-compact manifold. Returns every entry whose hypotheses match:
///   2^{2p-1} (n-1)^2 xi           (NegativeLowerBound, rH infinite)
///   2^{2p+1} lambda_0^D(B_xi(rH)) (LowerBound, rH finite)
std::vector<BoundResult> sigma_p_bounds(const ManifoldClass& mc, int p,
                                        const spaceform::ShootingOptions& opts = {});

/// Bottom of the p-form spectrum of hyperbolic n-space:
/// 0 for p <= (n+1)/2, (2p-n-1)^2/4 otherwise.
double savo_hyperbolic_sigma(int n, int p);

const char* to_string(Regime r);
const char* to_string(RicciSignConvention c);

} // namespace specgeom::bounds
