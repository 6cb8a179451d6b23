#include "specgeom/bounds.hpp"

#include <cmath>
#include <numbers>

namespace specgeom::bounds {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool ok, const std::string& msg) {
    if (!ok) throw HypothesisError(msg);
}

double need_D(const ManifoldClass& mc, const char* who) {
    require(mc.D.has_value(), std::string(who) + ": diameter D required");
    return *mc.D;
}

double need_V(const ManifoldClass& mc, const char* who) {
    require(mc.V.has_value(), std::string(who) + ": volume V required");
    return *mc.V;
}

double need_finite_rH(const ManifoldClass& mc, const char* who) {
    require(std::isfinite(mc.rH), std::string(who) + ": finite harmonic radius rH required");
    return mc.rH;
}

void require_lower_convention(const ManifoldClass& mc, const char* who) {
    require(mc.convention == RicciSignConvention::LowerBound,
            std::string(who) + ": requires the LowerBound convention (Ric >= (n-1) xi)");
}

spaceform::ModelSpace model_of(const ManifoldClass& mc) {
    return spaceform::ModelSpace{mc.n, mc.xi};
}

// Regime selection at threshold tau = D / (2 rH). At exact equality both
// branch values are computed and the minimum is returned, tagged LargeK.
struct RegimePick {
    Regime regime;
    bool take_min;
};

RegimePick pick_regime(double k, double tau) {
    if (k > tau) return {Regime::LargeK, false};
    if (k < tau) return {Regime::SmallK, false};
    return {Regime::LargeK, true};
}

} // namespace

const char* to_string(Regime r) {
    switch (r) {
        case Regime::LargeK: return "LargeK";
        case Regime::SmallK: return "SmallK";
        default: return "NotApplicable";
    }
}

const char* to_string(RicciSignConvention c) {
    return c == RicciSignConvention::LowerBound ? "lower" : "neg-lower";
}

void ManifoldClass::validate() const {
    if (n < 2) throw DomainError("ManifoldClass: n >= 2 required");
    if (!(rH > 0.0)) throw DomainError("ManifoldClass: rH > 0 required");
    if (D && !(*D > 0.0)) throw DomainError("ManifoldClass: D > 0 required when present");
    if (V && !(*V > 0.0)) throw DomainError("ManifoldClass: V > 0 required when present");
    if (r0) {
        if (!(*r0 > 0.0)) throw DomainError("ManifoldClass: r0 > 0 required when present");
        if (rH > *r0)
            throw HypothesisError("ManifoldClass: harmonic radius rH must not exceed r0");
    }
    if (convention == RicciSignConvention::NegativeLowerBound && xi < 0.0)
        throw HypothesisError("ManifoldClass: NegativeLowerBound convention requires xi >= 0");
    if (convention == RicciSignConvention::LowerBound && xi > 0.0 && D) {
        const double myers = kPi / std::sqrt(xi);
        if (*D > myers)
            throw HypothesisError("ManifoldClass: Myers violation, D > pi/sqrt(xi)");
    }
}

BoundResult cheng_function_bound(const ManifoldClass& mc, int k,
                                 const spaceform::ShootingOptions& opts) {
    mc.validate();
    require_lower_convention(mc, "cheng_function_bound");
    if (k < 1) throw DomainError("cheng_function_bound: k >= 1 required");
    const double D = need_D(mc, "cheng_function_bound");

    BoundResult out;
    out.value = spaceform::ball_dirichlet_eigenvalue(model_of(mc), D / (2.0 * k), opts).lambda;
    out.regime = Regime::LargeK;
    out.source = "Thm 1.1";
    out.k = k;
    out.p = 0;
    out.inputs = mc;
    return out;
}

BoundResult hodge_bound(const ManifoldClass& mc, int k, int p,
                        const spaceform::ShootingOptions& opts) {
    mc.validate();
    require_lower_convention(mc, "hodge_bound");
    if (k < 1) throw DomainError("hodge_bound: k >= 1 required");
    if (p < 0 || p > mc.n) throw DomainError("hodge_bound: 0 <= p <= n required");
    const double D = need_D(mc, "hodge_bound");
    const double rH = need_finite_rH(mc, "hodge_bound");

    const double factor = std::ldexp(1.0, 2 * p + 1);
    const auto ms = model_of(mc);
    const auto pick = pick_regime(static_cast<double>(k), D / (2.0 * rH));

    double value;
    if (pick.take_min) {
        const double large = factor * spaceform::ball_dirichlet_eigenvalue(ms, D / (2.0 * k), opts).lambda;
        const double small = factor * spaceform::ball_dirichlet_eigenvalue(ms, rH, opts).lambda;
        value = std::min(large, small);
    } else if (pick.regime == Regime::LargeK) {
        value = factor * spaceform::ball_dirichlet_eigenvalue(ms, D / (2.0 * k), opts).lambda;
    } else {
        value = factor * spaceform::ball_dirichlet_eigenvalue(ms, rH, opts).lambda;
    }

    BoundResult out;
    out.value = value;
    out.regime = pick.regime;
    out.source = "Thm 1.2";
    out.k = k;
    out.p = p;
    out.inputs = mc;
    return out;
}

BoundResult nonneg_ricci_bound(const ManifoldClass& mc, int k, int p) {
    mc.validate();
    require_lower_convention(mc, "nonneg_ricci_bound");
    require(mc.xi >= 0.0, "nonneg_ricci_bound: requires xi >= 0 (nonnegative Ricci)");
    if (k < 1) throw DomainError("nonneg_ricci_bound: k >= 1 required");
    if (p < 0 || p > mc.n) throw DomainError("nonneg_ricci_bound: 0 <= p <= n required");
    const double D = need_D(mc, "nonneg_ricci_bound");
    const double rH = need_finite_rH(mc, "nonneg_ricci_bound");

    const double n2pi2 = mc.n * mc.n * kPi * kPi;
    const double large = std::ldexp(1.0, 2 * p + 1) * n2pi2 * k * k / (D * D);
    const double small = std::ldexp(1.0, 2 * p - 1) * n2pi2 / (rH * rH);

    const auto pick = pick_regime(static_cast<double>(k), D / (2.0 * rH));
    BoundResult out;
    out.value = pick.take_min ? std::min(large, small)
                              : (pick.regime == Regime::LargeK ? large : small);
    out.regime = pick.regime;
    out.source = "Cor 3.3";
    out.k = k;
    out.p = p;
    out.inputs = mc;
    return out;
}

BoundResult neg_ricci_bound(const ManifoldClass& mc, int k, int p) {
    mc.validate();
    require(mc.convention == RicciSignConvention::NegativeLowerBound,
            "neg_ricci_bound: requires the NegativeLowerBound convention (Ric >= -(n-1) xi)");
    if (k < 1) throw DomainError("neg_ricci_bound: k >= 1 required");
    if (p < 0 || p > mc.n) throw DomainError("neg_ricci_bound: 0 <= p <= n required");
    const double D = need_D(mc, "neg_ricci_bound");
    const double rH = need_finite_rH(mc, "neg_ricci_bound");

    double large, small;
    const char* source;
    if (mc.n % 2 == 0) {
        // n = 2(m+1)
        const int m = mc.n / 2 - 1;
        const double curv = std::ldexp(1.0, 2 * p - 1) * (2 * m + 1) * (2 * m + 1) * mc.xi;
        const double c = (1.0 + std::ldexp(1.0, m)) * (1.0 + std::ldexp(1.0, m)) * kPi * kPi;
        large = curv + std::ldexp(1.0, 2 * p + 3) * c * k * k / (D * D);
        small = curv + std::ldexp(1.0, 2 * p + 1) * c / (rH * rH);
        source = "Cor 3.4(even)";
    } else {
        // n = 2m+3, requires n >= 3
        if (mc.n < 3) throw DomainError("neg_ricci_bound: odd branch requires n >= 3");
        const int m = (mc.n - 3) / 2;
        const double curv = std::ldexp(1.0, 2 * p - 1) * (2 * m + 2) * (2 * m + 2) * mc.xi;
        const double c = (1.0 + std::ldexp(1.0, 2 * m)) * (1.0 + std::ldexp(1.0, 2 * m)) * (1.0 + kPi * kPi);
        large = curv + std::ldexp(1.0, 2 * p + 3) * c * k * k / (D * D);
        small = curv + std::ldexp(1.0, 2 * p + 1) * c / (rH * rH);
        source = "Cor 3.4(odd)";
    }

    const auto pick = pick_regime(static_cast<double>(k), D / (2.0 * rH));
    BoundResult out;
    out.value = pick.take_min ? std::min(large, small)
                              : (pick.regime == Regime::LargeK ? large : small);
    out.regime = pick.regime;
    out.source = source;
    out.k = k;
    out.p = p;
    out.inputs = mc;
    return out;
}

BoundResult volume_bound(const ManifoldClass& mc, int k, int p) {
    mc.validate();
    require_lower_convention(mc, "volume_bound");
    require(mc.xi < 0.0, "volume_bound: requires xi < 0 (hyperbolic comparison)");
    if (k < 1) throw DomainError("volume_bound: k >= 1 required");
    if (p < 0 || p > mc.n) throw DomainError("volume_bound: 0 <= p <= n required");
    const double V = need_V(mc, "volume_bound");
    const double rH = need_finite_rH(mc, "volume_bound");
    require(rH <= 1.0 / std::sqrt(std::abs(mc.xi)),
            "volume_bound: requires rH <= 1/sqrt(|xi|)");

    BoundResult out;
    out.source = "Thm 3.5";
    out.k = k;
    out.p = p;
    out.inputs = mc;

    const double threshold =
        std::ldexp(1.0, mc.n) * V / (spaceform::sphere_volume(mc.n - 1) * std::pow(rH, mc.n));
    if (!(k > threshold)) {
        out.regime = Regime::NotApplicable;
        return out;
    }
    out.value = std::ldexp(1.0, 2 * p + mc.n + 5) * (k + 1) *
                std::pow(spaceform::sphere_volume(mc.n) / V, 2.0 / mc.n);
    out.regime = Regime::LargeK;
    return out;
}

BoundResult connection_laplacian_bound(const ManifoldClass& mc, int p) {
    mc.validate();
    require_lower_convention(mc, "connection_laplacian_bound");
    require(mc.xi >= 0.0, "connection_laplacian_bound: requires xi >= 0 (Ric >= 0)");
    const double rH = need_finite_rH(mc, "connection_laplacian_bound");

    BoundResult out;
    out.value = std::ldexp(1.0, 2 * p + 1) * mc.n * mc.n * kPi * kPi / (rH * rH);
    out.regime = Regime::SmallK;
    out.source = "Cor 3.7";
    out.k = 1;
    out.p = p;
    out.inputs = mc;
    return out;
}

std::vector<BoundResult> sigma_p_bounds(const ManifoldClass& mc, int p,
                                        const spaceform::ShootingOptions& opts) {
    mc.validate();
    if (p < 0 || p > mc.n) throw DomainError("sigma_p_bounds: 0 <= p <= n required");

    std::vector<BoundResult> out;
    if (mc.convention == RicciSignConvention::NegativeLowerBound && std::isinf(mc.rH)) {
        BoundResult b;
        b.value = std::ldexp(1.0, 2 * p - 1) * (mc.n - 1) * (mc.n - 1) * mc.xi;
        b.regime = Regime::SmallK;
        b.source = "Cor 4.2";
        b.k = 0;
        b.p = p;
        b.inputs = mc;
        out.push_back(std::move(b));
    }
    if (mc.convention == RicciSignConvention::LowerBound && std::isfinite(mc.rH)) {
        BoundResult b;
        b.value = std::ldexp(1.0, 2 * p + 1) *
                  spaceform::ball_dirichlet_eigenvalue(model_of(mc), mc.rH, opts).lambda;
        b.regime = Regime::SmallK;
        b.source = "Thm 4.5";
        b.k = 0;
        b.p = p;
        b.inputs = mc;
        out.push_back(std::move(b));
    }
    if (out.empty())
        throw HypothesisError(
            "sigma_p_bounds: no applicable bound (need NegativeLowerBound with infinite rH, "
            "or LowerBound with finite rH)");
    return out;
}

double savo_hyperbolic_sigma(int n, int p) {
    if (n < 2) throw DomainError("savo_hyperbolic_sigma: n >= 2 required");
    if (p < 0 || p > n) throw DomainError("savo_hyperbolic_sigma: 0 <= p <= n required");
    if (2.0 * p <= n + 1) return 0.0;
    const double q = 2.0 * p - n - 1.0;
    return q * q / 4.0;
}

} // namespace specgeom::bounds
