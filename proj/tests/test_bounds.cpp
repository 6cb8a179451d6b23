#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "specgeom/bounds.hpp"

using namespace specgeom;
using bounds::ManifoldClass;
using bounds::Regime;
using bounds::RicciSignConvention;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kJ01 = 2.404825557695773;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

ManifoldClass torus_class() {
    ManifoldClass mc;
    mc.n = 2;
    mc.xi = 0.0;
    mc.D = std::sqrt(2.0) * kPi;
    mc.rH = kPi;
    return mc;
}
}

TEST_CASE("ManifoldClass validation") {
    ManifoldClass mc = torus_class();
    CHECK_NOTHROW(mc.validate());

    mc.r0 = 1.0;  // rH = pi > r0
    CHECK_THROWS_AS(mc.validate(), HypothesisError);

    ManifoldClass myers;
    myers.n = 3;
    myers.xi = 1.0;
    myers.rH = 0.5;
    myers.D = 2.0 * kPi;  // exceeds pi/sqrt(xi)
    CHECK_THROWS_AS(myers.validate(), HypothesisError);
    myers.D = 3.0;
    CHECK_NOTHROW(myers.validate());

    ManifoldClass neg;
    neg.convention = RicciSignConvention::NegativeLowerBound;
    neg.xi = -1.0;
    neg.rH = 1.0;
    CHECK_THROWS_AS(neg.validate(), HypothesisError);
}

TEST_CASE("cheng_function_bound examples") {
    ManifoldClass mc;
    mc.n = 3;
    mc.xi = 0.0;
    mc.D = 2.0;
    mc.rH = 0.5;
    CHECK(rel(bounds::cheng_function_bound(mc, 1).value.value(), kPi * kPi) < 1e-12);

    mc.n = 2;
    CHECK(rel(bounds::cheng_function_bound(mc, 1).value.value(), kJ01 * kJ01) < 1e-10);
    CHECK(rel(bounds::cheng_function_bound(mc, 2).value.value(), 4.0 * kJ01 * kJ01) < 1e-10);

    mc.D.reset();
    CHECK_THROWS_WITH_AS(bounds::cheng_function_bound(mc, 1),
                         doctest::Contains("diameter"), HypothesisError);
}

TEST_CASE("hodge_bound regimes and values") {
    const ManifoldClass mc = torus_class();

    // D/(2 rH) = sqrt(2)/2 < 1, so every k >= 1 is in the large-k regime.
    const auto b = bounds::hodge_bound(mc, 1, 0);
    CHECK(b.regime == Regime::LargeK);
    const double expect = 2.0 * kJ01 * kJ01 * std::pow(2.0 / (std::sqrt(2.0) * kPi), 2.0);
    CHECK(rel(b.value.value(), expect) < 1e-9);
    CHECK(b.value.value() == doctest::Approx(2.3440).epsilon(1e-4));
    CHECK(b.source == "Thm 1.2");

    ManifoldClass small;
    small.n = 3;
    small.xi = 0.0;
    small.D = 2.0;
    small.rH = 0.5;
    const auto s = bounds::hodge_bound(small, 1, 0);
    CHECK(s.regime == Regime::SmallK);
    CHECK(rel(s.value.value(), 8.0 * kPi * kPi) < 1e-12);

    // p-scaling by exactly 4 per degree
    const auto p0 = bounds::hodge_bound(mc, 3, 0).value.value();
    const auto p1 = bounds::hodge_bound(mc, 3, 1).value.value();
    const auto p2 = bounds::hodge_bound(mc, 3, 2).value.value();
    CHECK(p1 == 4.0 * p0);
    CHECK(p2 == 4.0 * p1);

    CHECK_THROWS_AS(bounds::hodge_bound(mc, 0, 0), DomainError);
    CHECK_THROWS_AS(bounds::hodge_bound(mc, 1, 3), DomainError);
}

TEST_CASE("hodge_bound takes the minimum at the regime boundary") {
    ManifoldClass mc;
    mc.n = 2;
    mc.xi = 0.0;
    mc.D = 2.0;
    mc.rH = 0.5;  // D/(2 rH) = 2 exactly
    const auto at = bounds::hodge_bound(mc, 2, 0);
    CHECK(at.regime == Regime::LargeK);
    const double large = 2.0 * kJ01 * kJ01 / (0.5 * 0.5);
    const double small = 2.0 * kJ01 * kJ01 / (0.5 * 0.5);
    CHECK(at.value.value() <= std::min(large, small) * (1 + 1e-12));

    // both admissible formulas bound from above; consistency across the seam
    const auto lo = bounds::hodge_bound(mc, 1, 0);
    const auto hi = bounds::hodge_bound(mc, 3, 0);
    CHECK(lo.regime == Regime::SmallK);
    CHECK(hi.regime == Regime::LargeK);
    CHECK(std::isfinite(lo.value.value()));
    CHECK(std::isfinite(hi.value.value()));
}

TEST_CASE("regime seam: the selected branch is the larger, valid formula") {
    // The two branch formulas coincide at k = D/(2 rH) (same ball radius)
    // and cross there: below the seam the rH-ball value is the larger and
    // is the one the theorem licenses; above it the D/2k-ball value is.
    for (double xi : {0.0, -1.0}) {
        ManifoldClass mc;
        mc.n = 2;
        mc.xi = xi;
        mc.D = 2.6;
        mc.rH = 0.5;  // tau = 2.6
        const spaceform::ModelSpace ms{2, xi};
        const double small_val =
            2.0 * spaceform::ball_dirichlet_eigenvalue(ms, mc.rH).lambda;
        for (int k = 1; k <= 5; ++k) {
            const double large_val =
                2.0 * spaceform::ball_dirichlet_eigenvalue(ms, *mc.D / (2.0 * k)).lambda;
            const auto b = bounds::hodge_bound(mc, k, 0);
            CHECK(std::isfinite(b.value.value()));
            CHECK(b.value.value() ==
                  doctest::Approx(std::max(large_val, small_val)).epsilon(1e-12));
            CHECK(b.regime == (k < 2.6 ? Regime::SmallK : Regime::LargeK));
        }
    }
}

TEST_CASE("nonneg_ricci_bound closed forms") {
    ManifoldClass mc;
    mc.n = 2;
    mc.xi = 0.0;
    mc.D = std::sqrt(2.0) * kPi;
    mc.rH = kPi;
    const auto b = bounds::nonneg_ricci_bound(mc, 2, 0);
    CHECK(b.regime == Regime::LargeK);
    CHECK(rel(b.value.value(), 16.0) < 1e-12);
    CHECK(b.source == "Cor 3.3");

    // all k >= 1 sit in the large-k regime for this class
    for (int k = 1; k <= 8; ++k)
        CHECK(bounds::nonneg_ricci_bound(mc, k, 0).regime == Regime::LargeK);

    ManifoldClass small;
    small.n = 3;
    small.xi = 0.0;
    small.rH = 1.0;
    small.D = 10.0;  // D/(2 rH) = 5, k = 1 is small-k
    const auto s = bounds::nonneg_ricci_bound(small, 1, 1);
    CHECK(s.regime == Regime::SmallK);
    CHECK(rel(s.value.value(), 18.0 * kPi * kPi) < 1e-12);

    ManifoldClass bad = small;
    bad.xi = -0.5;
    CHECK_THROWS_AS(bounds::nonneg_ricci_bound(bad, 1, 0), HypothesisError);
}

TEST_CASE("neg_ricci_bound parity branches") {
    ManifoldClass even;
    even.n = 2;
    even.xi = 1.0;
    even.convention = RicciSignConvention::NegativeLowerBound;
    even.D = 2.0 * kPi;
    even.rH = 2.0;  // tau = pi/2, so k = 4 is large-k
    const auto b = bounds::neg_ricci_bound(even, 4, 0);
    CHECK(b.regime == Regime::LargeK);
    CHECK(rel(b.value.value(), 128.5) < 1e-12);
    CHECK(b.source == "Cor 3.4(even)");

    ManifoldClass odd;
    odd.n = 3;
    odd.xi = 0.0;
    odd.convention = RicciSignConvention::NegativeLowerBound;
    odd.D = 10.0;
    odd.rH = 1.0;
    const auto o = bounds::neg_ricci_bound(odd, 1, 0);
    CHECK(o.regime == Regime::SmallK);
    CHECK(rel(o.value.value(), 8.0 * (1.0 + kPi * kPi)) < 1e-12);
    CHECK(o.source == "Cor 3.4(odd)");

    // wrong convention rejected
    ManifoldClass wrong = even;
    wrong.convention = RicciSignConvention::LowerBound;
    wrong.xi = 0.0;
    CHECK_THROWS_AS(bounds::neg_ricci_bound(wrong, 1, 0), HypothesisError);
}

TEST_CASE("neg_ricci dominates nonneg_ricci at xi = 0 on a grid") {
    for (double D : {2.0, 4.0, 8.0})
        for (double rH : {0.4, 1.0, 1.8})
            for (int k : {1, 2, 5, 9})
                for (int p : {0, 1}) {
                    ManifoldClass lower;
                    lower.n = 2;
                    lower.xi = 0.0;
                    lower.D = D;
                    lower.rH = rH;
                    ManifoldClass neg = lower;
                    neg.convention = RicciSignConvention::NegativeLowerBound;
                    const double a = bounds::neg_ricci_bound(neg, k, p).value.value();
                    const double b = bounds::nonneg_ricci_bound(lower, k, p).value.value();
                    CHECK(a >= b * (1.0 - 1e-12));
                }
}

TEST_CASE("volume_bound value, threshold, and scaling") {
    ManifoldClass mc;
    mc.n = 2;
    mc.xi = -1.0;
    mc.V = 4.0 * kPi;
    mc.rH = 0.95;  // threshold 8/rH^2 ~ 8.86 < 10, and rH <= 1/sqrt|xi|
    mc.D = 10.0;
    const auto b = bounds::volume_bound(mc, 10, 0);
    CHECK(b.regime == Regime::LargeK);
    CHECK(rel(b.value.value(), 1408.0) < 1e-12);
    CHECK(b.source == "Thm 3.5");

    const auto below = bounds::volume_bound(mc, 2, 0);
    CHECK(below.regime == Regime::NotApplicable);
    CHECK(!below.value.has_value());

    ManifoldClass doubled = mc;
    doubled.V = 8.0 * kPi;
    const auto half = bounds::volume_bound(doubled, 20, 0);
    const auto full = bounds::volume_bound(mc, 20, 0);
    CHECK(rel(half.value.value(), 0.5 * full.value.value()) < 1e-12);

    ManifoldClass bad = mc;
    bad.rH = 1.5;  // violates rH <= 1/sqrt(|xi|)
    CHECK_THROWS_AS(bounds::volume_bound(bad, 10, 0), HypothesisError);
    ManifoldClass flat = mc;
    flat.xi = 0.0;
    CHECK_THROWS_AS(bounds::volume_bound(flat, 10, 0), HypothesisError);
}

TEST_CASE("connection_laplacian_bound") {
    ManifoldClass mc;
    mc.n = 2;
    mc.xi = 0.0;
    mc.rH = kPi;
    CHECK(rel(bounds::connection_laplacian_bound(mc).value.value(), 32.0) < 1e-12);

    ManifoldClass big = mc;
    big.rH = 2.0 * kPi;
    CHECK(rel(bounds::connection_laplacian_bound(big).value.value(), 8.0) < 1e-12);

    ManifoldClass n3;
    n3.n = 3;
    n3.xi = 0.0;
    n3.rH = 1.0;
    CHECK(rel(bounds::connection_laplacian_bound(n3).value.value(), 72.0 * kPi * kPi) < 1e-12);

    ManifoldClass neg = mc;
    neg.xi = -1.0;
    CHECK_THROWS_AS(bounds::connection_laplacian_bound(neg), HypothesisError);
}

TEST_CASE("sigma_p_bounds applicability and values") {
    ManifoldClass inf_class;
    inf_class.n = 3;
    inf_class.xi = 1.0;
    inf_class.convention = RicciSignConvention::NegativeLowerBound;
    inf_class.rH = std::numeric_limits<double>::infinity();
    const auto a = bounds::sigma_p_bounds(inf_class, 3);
    REQUIRE(a.size() == 1);
    CHECK(a[0].source == "Cor 4.2");
    CHECK(rel(a[0].value.value(), 128.0) < 1e-12);

    ManifoldClass finite;
    finite.n = 3;
    finite.xi = 0.0;
    finite.rH = 1.0;
    const auto b = bounds::sigma_p_bounds(finite, 0);
    REQUIRE(b.size() == 1);
    CHECK(b[0].source == "Thm 4.5");
    CHECK(rel(b[0].value.value(), 2.0 * kPi * kPi) < 1e-12);

    // p increment scales both formulas by 4
    const auto a1 = bounds::sigma_p_bounds(inf_class, 2);
    CHECK(rel(a[0].value.value(), 4.0 * a1[0].value.value()) < 1e-12);
    const auto b1 = bounds::sigma_p_bounds(finite, 1);
    CHECK(rel(b1[0].value.value(), 4.0 * b[0].value.value()) < 1e-12);

    ManifoldClass mismatch = finite;
    mismatch.convention = RicciSignConvention::NegativeLowerBound;
    CHECK_THROWS_AS(bounds::sigma_p_bounds(mismatch, 0), HypothesisError);
}

TEST_CASE("savo_hyperbolic_sigma piecewise values and cross-check") {
    CHECK(bounds::savo_hyperbolic_sigma(3, 1) == 0.0);
    CHECK(bounds::savo_hyperbolic_sigma(3, 3) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(bounds::savo_hyperbolic_sigma(1, 0), DomainError);
    CHECK_THROWS_AS(bounds::savo_hyperbolic_sigma(3, 4), DomainError);

    // dominated by the general non-compact bound at xi = 1
    for (int n = 2; n <= 8; ++n)
        for (int p = 0; p <= n; ++p) {
            ManifoldClass mc;
            mc.n = n;
            mc.xi = 1.0;
            mc.convention = RicciSignConvention::NegativeLowerBound;
            mc.rH = std::numeric_limits<double>::infinity();
            const auto s = bounds::sigma_p_bounds(mc, std::min(p, n));
            CHECK(bounds::savo_hyperbolic_sigma(n, p) <= s[0].value.value() + 1e-12);
        }
}

TEST_CASE("cheng dominance: model-ball bounds stay below the closed forms") {
    for (double xi : {0.0, -1.0})
        for (int n : {2, 3, 4})
            for (int p : {0, 1})
                for (int i = 0; i < 10; ++i) {
                    const double D = 1.0 + 0.7 * i;
                    const double rH = 0.21 + 0.05 * i;
                    const int k = 2 + i;  // keep k >= D/(2 rH) on most of the grid
                    ManifoldClass mc;
                    mc.n = n;
                    mc.xi = xi;
                    mc.D = D;
                    mc.rH = rH;
                    if (static_cast<double>(k) < D / (2.0 * rH)) continue;
                    const double sharp = bounds::hodge_bound(mc, k, p).value.value();
                    double closed;
                    if (xi == 0.0) {
                        closed = bounds::nonneg_ricci_bound(mc, k, p).value.value();
                    } else {
                        ManifoldClass neg = mc;
                        neg.xi = 1.0;
                        neg.convention = RicciSignConvention::NegativeLowerBound;
                        closed = bounds::neg_ricci_bound(neg, k, p).value.value();
                    }
                    CHECK(sharp <= closed * (1.0 + 1e-9));
                }
}
