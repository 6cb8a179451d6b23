#pragma once

// Independent numerical oracles used by the test suites. These
// deliberately avoid the library's code paths: Bessel zeros come from
// the standard library's cyl_bessel_j plus plain bisection, and the
// radial eigenvalue uses a staggered finite-difference discretization
// with a Sturm-sequence eigenvalue count.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace oracles {

inline double bessel_zero(double nu) {
    auto f = [&](double x) { return std::cyl_bessel_j(nu, x); };
    double a = std::max(0.5, nu + 1e-3), b = a;
    double fa = f(a);
    const double step = 0.3 * (1.0 + std::cbrt(std::max(nu, 1.0)));
    bool ok = false;
    for (int i = 0; i < 300; ++i) {
        b = a + step;
        const double fb = f(b);
        if (fa > 0.0 && fb <= 0.0) { ok = true; break; }
        a = b;
        fa = fb;
    }
    if (!ok) throw std::runtime_error("bessel_zero oracle: no bracket");
    for (int i = 0; i < 200; ++i) {
        const double m = 0.5 * (a + b);
        if (f(m) > 0.0) a = m; else b = m;
    }
    return 0.5 * (a + b);
}

// Smallest eigenvalue of u'' + (n-1)(s'/s)u' + lambda u = 0 with
// u'(0) = 0, u(r) = 0, discretized in flux form on nodes (j+1/2)h.
inline double fd_radial_lambda0(int n, double xi, double r, int grid_points) {
    const int N = grid_points;
    const double h = r / N;

    auto warp = [&](double t) {
        if (xi == 0.0) return t;
        if (xi > 0.0) {
            const double s = std::sqrt(xi);
            return std::sin(s * t) / s;
        }
        const double s = std::sqrt(-xi);
        return std::sinh(s * t) / s;
    };
    auto w = [&](double t) { return std::pow(warp(t), n - 1); };

    std::vector<double> diag(N), off(N - 1), mass(N);
    for (int j = 0; j < N; ++j) {
        const double wl = w(j * h);
        const double wr = w((j + 1) * h);
        if (j == 0) diag[j] = wr / (h * h);
        else if (j == N - 1) diag[j] = (wl + 2.0 * wr) / (h * h);
        else diag[j] = (wl + wr) / (h * h);
        if (j < N - 1) off[j] = -wr / (h * h);
        mass[j] = w((j + 0.5) * h);
    }

    auto count_below = [&](double lam) {
        int count = 0;
        double d = diag[0] - lam * mass[0];
        if (d == 0.0) d = -1e-300;
        if (d < 0.0) ++count;
        for (int j = 1; j < N; ++j) {
            d = diag[j] - lam * mass[j] - off[j - 1] * off[j - 1] / d;
            if (d == 0.0) d = -1e-300;
            if (d < 0.0) ++count;
        }
        return count;
    };

    double lo = 0.0, hi = 1.0;
    while (count_below(hi) < 1) {
        hi *= 2.0;
        if (hi > 1e12) throw std::runtime_error("fd_radial_lambda0: no eigenvalue below 1e12");
    }
    for (int i = 0; i < 200 && (hi - lo) > 1e-12 * hi; ++i) {
        const double m = 0.5 * (lo + hi);
        if (count_below(m) >= 1) hi = m; else lo = m;
    }
    return 0.5 * (lo + hi);
}

} // namespace oracles
