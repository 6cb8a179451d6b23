#include "specgeom/spaceform.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace specgeom::spaceform {

namespace {

constexpr double kPi = std::numbers::pi;

double sphere_cap(double xi) { return kPi / std::sqrt(xi); }

} // namespace

void ModelSpace::validate() const {
    if (n < 2) throw DomainError("ModelSpace: dimension must satisfy n >= 2, got " + std::to_string(n));
    if (!std::isfinite(xi)) throw DomainError("ModelSpace: curvature must be finite");
}

double warp(const ModelSpace& ms, double t) {
    ms.validate();
    if (!(t >= 0.0)) throw DomainError("warp: t must be nonnegative");
    if (ms.xi > 0.0 && t > sphere_cap(ms.xi))
        throw DomainError("warp: t exceeds pi/sqrt(xi), ball leaves the sphere");
    if (ms.xi == 0.0) return t;
    if (ms.xi > 0.0) {
        const double s = std::sqrt(ms.xi);
        return std::sin(s * t) / s;
    }
    const double s = std::sqrt(-ms.xi);
    return std::sinh(s * t) / s;
}

double sphere_volume(int n) {
    if (n < 1) throw DomainError("sphere_volume: n must be >= 1");
    const double half = 0.5 * (n + 1);
    return std::exp(std::log(2.0) + half * std::log(kPi) - std::lgamma(half));
}

namespace {

// Adaptive Simpson on [a, b] with absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double tol = std::max(std::abs(whole), 1e-300) * rel_tol;
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

} // namespace

double model_ball_volume(const ModelSpace& ms, double r, double quad_rel_tol) {
    ms.validate();
    if (!(r > 0.0)) throw DomainError("model_ball_volume: radius must be positive");
    if (ms.xi > 0.0 && r > sphere_cap(ms.xi))
        throw DomainError("model_ball_volume: radius exceeds pi/sqrt(xi)");
    const double area = sphere_volume(ms.n - 1);
    if (ms.xi == 0.0)
        return area * std::pow(r, ms.n) / ms.n;
    auto integrand = [&](double t) { return std::pow(warp(ms, t), ms.n - 1); };
    return area * integrate(integrand, 0.0, r, quad_rel_tol);
}

double bessel_j(double nu, double x) {
    // Power series sum_k (-1)^k (x/2)^{nu+2k} / (k! Gamma(nu+k+1)).
    const double h = 0.5 * x;
    double term = std::exp(nu * std::log(h) - std::lgamma(nu + 1.0));
    if (x == 0.0) term = (nu == 0.0) ? 1.0 : 0.0;
    double sum = term;
    for (int k = 0; k < 400; ++k) {
        term *= -(h * h) / ((k + 1.0) * (nu + k + 1.0));
        sum += term;
        if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300) && k > h) break;
    }
    return sum;
}

double bessel_first_zero(double nu, double rel_tol) {
    if (!(nu >= 0.0)) throw DomainError("bessel_first_zero: order must be nonnegative");
    // J_nu > 0 on (0, j_{nu,1}); walk right until the sign flips.
    double a = std::max(0.5, nu * 1.0001 + 1e-3);
    double fa = bessel_j(nu, a);
    const double step = 0.25 * (1.0 + std::cbrt(std::max(nu, 1.0)));
    double b = a, fb = fa;
    bool bracketed = false;
    for (int i = 0; i < 400; ++i) {
        b = a + step;
        fb = bessel_j(nu, b);
        if (fa > 0.0 && fb <= 0.0) { bracketed = true; break; }
        a = b;
        fa = fb;
    }
    if (!bracketed) throw SolverError("bessel_first_zero: no sign change located");
    for (int i = 0; i < 200 && (b - a) > rel_tol * 0.25 * (a + b); ++i) {
        const double m = 0.5 * (a + b);
        const double fm = bessel_j(nu, m);
        if (fm > 0.0) { a = m; fa = fm; } else { b = m; fb = fm; }
    }
    return 0.5 * (a + b);
}

namespace {

struct ShotResult {
    double u_end = 0.0;
    double u_max = 0.0;
    bool crossed = false; // u reached <= 0 somewhere in (t0, r]
};

// Radial coefficient (n-1) s'(t)/s(t).
double radial_drift(int n, double xi, double t) {
    if (xi == 0.0) return (n - 1) / t;
    if (xi > 0.0) {
        const double s = std::sqrt(xi);
        return (n - 1) * s / std::tan(s * t);
    }
    const double s = std::sqrt(-xi);
    return (n - 1) * s / std::tanh(s * t);
}

// Integrates u'' + (n-1)(s'/s)u' + lambda u = 0 from the series start at
// t0 = 1e-6 r to r with an adaptive Dormand-Prince 5(4) step.
ShotResult shoot(const ModelSpace& ms, double r, double lambda, const ShootingOptions& opts) {
    const double t0 = 1e-6 * r;
    double u = 1.0 - lambda * t0 * t0 / (2.0 * ms.n);
    double v = -lambda * t0 / ms.n;

    auto rhs = [&](double t, double y0, double y1, double& d0, double& d1) {
        d0 = y1;
        d1 = -radial_drift(ms.n, ms.xi, t) * y1 - lambda * y0;
    };

    // Dormand-Prince coefficients.
    static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                        e6 = 22.0 / 525, e7 = -1.0 / 40;

    ShotResult res;
    res.u_max = std::abs(u);

    double t = t0;
    double h = (r - t0) / 100.0;
    double k10, k11;
    rhs(t, u, v, k10, k11);
    int guard = 0;
    while (t < r) {
        if (++guard > 2000000) throw SolverError("shoot: step limit exceeded");
        if (t + h > r) h = r - t;

        double y0, y1;
        y0 = u + h * a21 * k10; y1 = v + h * a21 * k11;
        double k20, k21; rhs(t + c2 * h, y0, y1, k20, k21);
        y0 = u + h * (a31 * k10 + a32 * k20); y1 = v + h * (a31 * k11 + a32 * k21);
        double k30, k31; rhs(t + c3 * h, y0, y1, k30, k31);
        y0 = u + h * (a41 * k10 + a42 * k20 + a43 * k30);
        y1 = v + h * (a41 * k11 + a42 * k21 + a43 * k31);
        double k40, k41; rhs(t + c4 * h, y0, y1, k40, k41);
        y0 = u + h * (a51 * k10 + a52 * k20 + a53 * k30 + a54 * k40);
        y1 = v + h * (a51 * k11 + a52 * k21 + a53 * k31 + a54 * k41);
        double k50, k51; rhs(t + c5 * h, y0, y1, k50, k51);
        y0 = u + h * (a61 * k10 + a62 * k20 + a63 * k30 + a64 * k40 + a65 * k50);
        y1 = v + h * (a61 * k11 + a62 * k21 + a63 * k31 + a64 * k41 + a65 * k51);
        double k60, k61; rhs(t + h, y0, y1, k60, k61);
        const double un = u + h * (b1 * k10 + b3 * k30 + b4 * k40 + b5 * k50 + b6 * k60);
        const double vn = v + h * (b1 * k11 + b3 * k31 + b4 * k41 + b5 * k51 + b6 * k61);
        double k70, k71; rhs(t + h, un, vn, k70, k71);

        const double err0 = h * (e1 * k10 + e3 * k30 + e4 * k40 + e5 * k50 + e6 * k60 + e7 * k70);
        const double err1 = h * (e1 * k11 + e3 * k31 + e4 * k41 + e5 * k51 + e6 * k61 + e7 * k71);
        const double sc0 = opts.ode_abs_tol + opts.ode_rel_tol * std::max(std::abs(u), std::abs(un));
        const double sc1 = opts.ode_abs_tol + opts.ode_rel_tol * std::max(std::abs(v), std::abs(vn));
        const double err = std::max(std::abs(err0) / sc0, std::abs(err1) / sc1);

        if (err <= 1.0) {
            t += h;
            u = un;
            v = vn;
            k10 = k70;
            k11 = k71;
            res.u_max = std::max(res.u_max, std::abs(u));
            if (u <= 0.0) res.crossed = true;
        }
        const double fac = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(fac, 0.2, 5.0);
        if (h < 1e-15 * r) throw SolverError("shoot: step underflow");
    }
    res.u_end = u;
    return res;
}

} // namespace

BallEigenvalueResult ball_dirichlet_eigenvalue(const ModelSpace& ms, double r,
                                               const ShootingOptions& opts) {
    ms.validate();
    if (!(r > 0.0)) throw DomainError("ball_dirichlet_eigenvalue: radius must be positive");
    if (ms.xi > 0.0 && !(r < sphere_cap(ms.xi)))
        throw DomainError("ball_dirichlet_eigenvalue: need r < pi/sqrt(xi) for xi > 0");

    // Flat reference eigenvalue j_{n/2-1,1}^2 / r^2; also the fast path.
    const double lambda_flat = (ms.n == 3)
        ? kPi * kPi / (r * r)
        : [&] { const double j = bessel_first_zero(0.5 * ms.n - 1.0); return j * j / (r * r); }();

    if (ms.xi == 0.0 && opts.use_fast_paths) {
        BallEigenvalueResult out;
        out.lambda = lambda_flat;
        out.radius = r;
        out.method = (ms.n == 3) ? BallEigMethod::ClosedForm : BallEigMethod::BesselFastPath;
        return out;
    }

    auto crossed = [&](double lambda) { return shoot(ms, r, lambda, opts).crossed; };

    // Bracket the first node: lo has none, hi has at least one.
    double lo = 0.5 * lambda_flat;
    double hi = 2.0 * lambda_flat;
    int doublings = 0;
    while (crossed(lo)) {
        lo *= 0.5;
        if (++doublings > opts.max_bracket_doublings)
            throw SolverError("ball_dirichlet_eigenvalue: lower bracket expansion failed");
    }
    while (!crossed(hi)) {
        hi *= 2.0;
        if (++doublings > opts.max_bracket_doublings)
            throw SolverError("ball_dirichlet_eigenvalue: upper bracket expansion failed");
    }

    int iters = 0;
    while (hi - lo > opts.bisect_rel_tol * 0.5 * (hi + lo)) {
        const double mid = 0.5 * (lo + hi);
        if (crossed(mid)) hi = mid; else lo = mid;
        if (++iters > 200) break;
    }

    BallEigenvalueResult out;
    out.lambda = 0.5 * (lo + hi);
    out.radius = r;
    out.iterations = iters;
    out.method = BallEigMethod::Shooting;
    const ShotResult fin = shoot(ms, r, out.lambda, opts);
    out.residual = fin.u_end / std::max(fin.u_max, 1e-300);
    return out;
}

} // namespace specgeom::spaceform
