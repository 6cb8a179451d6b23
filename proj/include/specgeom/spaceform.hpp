#pragma once

#include <cstdint>

#include "specgeom/errors.hpp"

namespace specgeom::spaceform {

/// Simply connected model space of constant sectional curvature.
struct ModelSpace {
    int n = 2;       ///< dimension, n >= 2
    double xi = 0.0; ///< sectional curvature (1/length^2), any sign

    void validate() const;
};

enum class BallEigMethod { Shooting, BesselFastPath, ClosedForm };

struct BallEigenvalueResult {
    double lambda = 0.0;   ///< first Dirichlet eigenvalue (1/length^2)
    double radius = 0.0;
    int iterations = 0;    ///< bisection steps (0 on fast paths)
    double residual = 0.0; ///< u(r) normalized by max |u| on [0, r]
    BallEigMethod method = BallEigMethod::Shooting;
};

/// Tolerances for the radial solver. Defaults give eigenvalues to
/// ~1e-10 relative; all overridable.
struct ShootingOptions {
    double bisect_rel_tol = 1e-10;  ///< bracket width termination, relative to lambda
    double ode_rel_tol = 1e-12;
    double ode_abs_tol = 1e-14;
    int max_bracket_doublings = 60;
    bool use_fast_paths = true;     ///< disable to force shooting even for xi = 0
};

/// Warping function s_xi(t): the radius-t geodesic sphere in the model
/// space has area alpha_{n-1} * s_xi(t)^{n-1}.
/// sin(sqrt(xi) t)/sqrt(xi) for xi > 0, t for xi = 0,
/// sinh(sqrt(-xi) t)/sqrt(-xi) for xi < 0.
double warp(const ModelSpace& ms, double t);

/// Volume of the unit n-sphere, 2 pi^{(n+1)/2} / Gamma((n+1)/2).
double sphere_volume(int n);

/// Volume of a geodesic ball of radius r in the model space:
/// alpha_{n-1} * integral_0^r s_xi(t)^{n-1} dt.
/// Closed form for xi = 0, adaptive quadrature otherwise.
double model_ball_volume(const ModelSpace& ms, double r,
                         double quad_rel_tol = 1e-10);

/// First positive zero of the Bessel function J_nu, nu >= 0.
/// Series evaluation plus bracketed bisection, ~1e-12 relative.
double bessel_first_zero(double nu, double rel_tol = 1e-12);

/// Bessel function J_nu(x) by power series; adequate for the zero
/// bracketing range (x up to ~20, nu up to ~10).
double bessel_j(double nu, double x);

/// First Dirichlet eigenvalue of the Laplacian on a geodesic ball of
/// radius r in the model space. Radial reduction
///   u'' + (n-1) (s'/s) u' + lambda u = 0,  u'(0) = 0,  u(r) = 0,
/// solved by shooting from a series start at t0 = 1e-6 r and bisection
/// on the first node of u. Fast paths for xi = 0.
BallEigenvalueResult ball_dirichlet_eigenvalue(const ModelSpace& ms, double r,
                                               const ShootingOptions& opts = {});

} // namespace specgeom::spaceform
