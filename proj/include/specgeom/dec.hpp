#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "specgeom/errors.hpp"
#include "specgeom/mesh.hpp"

namespace specgeom::dec {

using SpMat = Eigen::SparseMatrix<double>;

/// Signed incidence matrices and diagonal Hodge stars for a closed
/// oriented surface. star0 uses barycentric dual areas, star1 the
/// half-cotangent weights, star2 inverse triangle areas. Exact right
/// angles produce exact zero star1 entries (weights with magnitude
/// below 1e-12 are snapped to zero); `quality` is the fraction of
/// strictly negative star1 entries.
struct DecOperators {
    SpMat d0;               ///< E x V
    SpMat d1;               ///< F x E
    Eigen::VectorXd star0;  ///< V, > 0
    Eigen::VectorXd star1;  ///< E, may contain zeros / negatives
    Eigen::VectorXd star2;  ///< F, > 0
    double quality = 0.0;
};

DecOperators assemble(const mesh::SurfaceMesh& mesh);

/// Symmetric generalized pencil (A, B) whose eigenvalues are the finite
/// eigenvalues of the Hodge Laplacian on p-forms. B is diagonal and
/// nonnegative; zero entries mark constrained degrees of freedom that
/// the solver eliminates by a Schur complement. For p = 2 on meshes
/// with zero star1 entries the pencil is expressed on merged dual
/// 0-cells (faces joined across zero-weight edges), which is the finite
/// part of the degenerate limit; face_class records the merge.
struct HodgePencil {
    int p = 0;
    SpMat A;
    Eigen::VectorXd B;
    std::vector<int> face_class;   ///< p == 2 merged: face -> dof; else empty
    std::vector<std::string> warnings;

    int dim() const { return static_cast<int>(B.size()); }
};

HodgePencil hodge_laplacian(const DecOperators& ops, int p, bool allow_indefinite = false);

enum class SolveMethod { Dense, Iterative };

struct SolveOptions {
    double tol = 1e-8;            ///< relative residual per eigenpair
    std::uint64_t seed = 0x5ec9e0u;
    int dense_threshold = 2000;   ///< dense solver for dim <= threshold
    int max_iterations = 600;
};

struct SpectrumResult {
    int p = 0;
    std::vector<double> eigenvalues;      ///< ascending
    int kernel_dim = 0;
    double tol = 0.0;
    SolveMethod method = SolveMethod::Dense;
    std::vector<double> residual_norms;
    std::uint64_t seed = 0;
    int iterations = 0;
    /// Cluster sizes under a 1e-6 relative gap; reporting only (the last
    /// cluster may be cut off by the requested count).
    std::vector<int> multiplicities;
    std::vector<std::string> warnings;
};

/// num smallest generalized eigenvalues of the pencil. Dense complete
/// solve below the threshold, otherwise deterministic seeded
/// shift-invert subspace iteration.
SpectrumResult solve_spectrum(const HodgePencil& pencil, int num, const SolveOptions& opts = {});

/// Dirichlet subdomain of a metric ball: a p-simplex is kept iff every
/// (p+1)-simplex containing it lies in the induced subcomplex, so
/// extension by zero preserves both the energy and the norm. The
/// restricted pencil is therefore exactly the principal submatrix of
/// the closed pencil on the kept degrees of freedom.
struct DirichletSubproblem {
    const mesh::SurfaceMesh* parent = nullptr;
    mesh::GeodesicBall ball;
    std::array<std::vector<int>, 3> kept;  ///< parent simplex ids per degree
};

DirichletSubproblem dirichlet_subproblem(const mesh::SurfaceMesh& mesh,
                                         const mesh::GeodesicBall& ball);

/// Pencil degrees of freedom corresponding to the kept simplices of the
/// subproblem in the pencil's degree (handles merged p = 2 dofs).
std::vector<int> kept_dofs(const DirichletSubproblem& sub, const HodgePencil& pencil);

/// Principal-submatrix restriction of a pencil to a dof subset.
HodgePencil restrict_pencil(const HodgePencil& pencil, const std::vector<int>& dofs);

SpectrumResult dirichlet_spectrum(const DirichletSubproblem& sub, const DecOperators& ops,
                                  int p, int num, const SolveOptions& opts = {});

const char* to_string(SolveMethod m);

} // namespace specgeom::dec
