#include "specgeom/dec.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

namespace specgeom::dec {

namespace {

constexpr double kCotSnap = 1e-12;

struct TriGeometry {
    double area;
    std::array<double, 3> cot; // cotangent at corner c (opposite edge tri_edges[f][c])
};

TriGeometry tri_geometry(const mesh::SurfaceMesh& m, int f) {
    const auto& e = m.tri_edges[f];
    const double a = m.edge_length[e[0]];
    const double b = m.edge_length[e[1]];
    const double c = m.edge_length[e[2]];
    TriGeometry g;
    g.area = m.triangle_area(f);
    if (!(g.area > 0.0))
        throw MeshQualityError("assemble: degenerate (zero-area) triangle " + std::to_string(f));
    g.cot[0] = (b * b + c * c - a * a) / (4.0 * g.area);
    g.cot[1] = (a * a + c * c - b * b) / (4.0 * g.area);
    g.cot[2] = (a * a + b * b - c * c) / (4.0 * g.area);
    return g;
}

} // namespace

const char* to_string(SolveMethod m) {
    return m == SolveMethod::Dense ? "Dense" : "Iterative";
}

DecOperators assemble(const mesh::SurfaceMesh& m) {
    const int nv = m.num_vertices(), ne = m.num_edges(), nf = m.num_triangles();
    DecOperators ops;

    std::vector<Eigen::Triplet<double>> t0;
    t0.reserve(2 * ne);
    for (int e = 0; e < ne; ++e) {
        t0.emplace_back(e, m.edges[e][0], -1.0);
        t0.emplace_back(e, m.edges[e][1], 1.0);
    }
    ops.d0.resize(ne, nv);
    ops.d0.setFromTriplets(t0.begin(), t0.end());

    std::vector<Eigen::Triplet<double>> t1;
    t1.reserve(3 * nf);
    for (int f = 0; f < nf; ++f) {
        const auto& t = m.triangles[f];
        for (int c = 0; c < 3; ++c) {
            const int u = t[c], v = t[(c + 1) % 3];
            const int e = m.tri_edges[f][(c + 2) % 3]; // edge opposite the remaining corner
            t1.emplace_back(f, e, (u < v) ? 1.0 : -1.0);
        }
    }
    ops.d1.resize(nf, ne);
    ops.d1.setFromTriplets(t1.begin(), t1.end());

    ops.star0 = Eigen::VectorXd::Zero(nv);
    ops.star1 = Eigen::VectorXd::Zero(ne);
    ops.star2 = Eigen::VectorXd::Zero(nf);
    for (int f = 0; f < nf; ++f) {
        const auto g = tri_geometry(m, f);
        ops.star2[f] = 1.0 / g.area;
        for (int c = 0; c < 3; ++c) {
            ops.star0[m.triangles[f][c]] += g.area / 3.0;
            ops.star1[m.tri_edges[f][c]] += 0.5 * g.cot[c];
        }
    }
    int negatives = 0;
    for (int e = 0; e < ne; ++e) {
        if (std::abs(ops.star1[e]) <= kCotSnap) ops.star1[e] = 0.0;
        if (ops.star1[e] < 0.0) ++negatives;
    }
    ops.quality = static_cast<double>(negatives) / std::max(ne, 1);
    return ops;
}

namespace {

SpMat diag_sparse(const Eigen::VectorXd& d) {
    SpMat s(d.size(), d.size());
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(d.size());
    for (int i = 0; i < d.size(); ++i) t.emplace_back(i, i, d[i]);
    s.setFromTriplets(t.begin(), t.end());
    return s;
}

SpMat symmetrized(const SpMat& a) {
    SpMat at = SpMat(a.transpose());
    SpMat out = 0.5 * (a + at);
    // Drop stored roundoff-level entries; they carry no information and
    // defeat structural fast paths downstream.
    double scale = 0.0;
    for (int c = 0; c < out.outerSize(); ++c)
        for (SpMat::InnerIterator it(out, c); it; ++it)
            scale = std::max(scale, std::abs(it.value()));
    if (scale > 0.0)
        out.prune([scale](int, int, double v) { return std::abs(v) > 1e-14 * scale; });
    return out;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace

HodgePencil hodge_laplacian(const DecOperators& ops, int p, bool allow_indefinite) {
    if (p < 0 || p > 2) throw DomainError("hodge_laplacian: p in {0, 1, 2} required");

    const int ne = static_cast<int>(ops.star1.size());
    const int nf = static_cast<int>(ops.star2.size());
    const bool has_negative = (ops.star1.array() < 0.0).any();
    const bool has_zero = (ops.star1.array() == 0.0).any();

    HodgePencil pencil;
    pencil.p = p;

    if (has_negative && (p == 0 || p == 1)) {
        if (!allow_indefinite)
            throw MeshQualityError(
                "hodge_laplacian: negative cotangent weights (fraction " +
                std::to_string(ops.quality) + "); pass the indefinite override to proceed");
        pencil.warnings.push_back("indefinite cotangent weights permitted by override");
    }

    if (p == 0) {
        pencil.A = symmetrized(SpMat(ops.d0.transpose() * diag_sparse(ops.star1) * ops.d0));
        pencil.B = ops.star0;
        return pencil;
    }

    if (p == 1) {
        const Eigen::VectorXd inv0 = ops.star0.cwiseInverse();
        SpMat w = diag_sparse(ops.star1);
        SpMat exact_part = SpMat(w * ops.d0 * diag_sparse(inv0) * SpMat(ops.d0.transpose()) * w);
        SpMat coexact_part = SpMat(ops.d1.transpose() * diag_sparse(ops.star2) * ops.d1);
        pencil.A = symmetrized(SpMat(exact_part + coexact_part));
        pencil.B = ops.star1;
        if (has_zero)
            pencil.warnings.push_back("zero star1 entries: constrained 1-form dofs eliminated at solve time");
        return pencil;
    }

    // p == 2
    if (!has_zero) {
        if (has_negative)
            pencil.warnings.push_back("negative star1 entries make the 2-form energy indefinite");
        const Eigen::VectorXd inv1 = ops.star1.cwiseInverse();
        SpMat s2 = diag_sparse(ops.star2);
        pencil.A = symmetrized(
            SpMat(s2 * ops.d1 * diag_sparse(inv1) * SpMat(ops.d1.transpose()) * s2));
        pencil.B = ops.star2;
        return pencil;
    }

    // Zero dual lengths identify the adjacent dual vertices; the finite
    // spectrum lives on the merged cells.
    UnionFind uf(nf);
    std::vector<std::array<int, 2>> edge_faces(ne, {-1, -1});
    // Gather the two incident faces of each edge from d1 (F x E, column = edge).
    for (int col = 0; col < ops.d1.cols(); ++col) {
        int slot = 0;
        for (SpMat::InnerIterator it(ops.d1, col); it; ++it) {
            if (slot < 2) edge_faces[col][slot] = static_cast<int>(it.row());
            ++slot;
        }
    }
    for (int e = 0; e < ne; ++e)
        if (ops.star1[e] == 0.0) uf.unite(edge_faces[e][0], edge_faces[e][1]);

    std::vector<int> klass(nf, -1);
    int nclass = 0;
    for (int f = 0; f < nf; ++f) {
        const int root = uf.find(f);
        if (klass[root] == -1) klass[root] = nclass++;
        klass[f] = klass[root];
    }

    Eigen::VectorXd mass = Eigen::VectorXd::Zero(nclass);
    for (int f = 0; f < nf; ++f) mass[klass[f]] += 1.0 / ops.star2[f];

    std::vector<Eigen::Triplet<double>> trips;
    for (int e = 0; e < ne; ++e) {
        const double w = ops.star1[e];
        if (w == 0.0) continue;
        const int c1 = klass[edge_faces[e][0]], c2 = klass[edge_faces[e][1]];
        if (c1 == c2) continue;
        const double s = 1.0 / w;
        trips.emplace_back(c1, c1, s);
        trips.emplace_back(c2, c2, s);
        trips.emplace_back(c1, c2, -s);
        trips.emplace_back(c2, c1, -s);
    }
    pencil.A.resize(nclass, nclass);
    pencil.A.setFromTriplets(trips.begin(), trips.end());
    pencil.B = mass;
    pencil.face_class = std::move(klass);
    pencil.warnings.push_back("zero star1 entries: 2-form dofs expressed on merged dual cells");
    if (has_negative)
        pencil.warnings.push_back("negative star1 entries make the 2-form energy indefinite");
    return pencil;
}

namespace {

struct ReducedPencil {
    bool dense = false;
    SpMat As;
    Eigen::MatrixXd Ad;
    Eigen::VectorXd B;
    std::vector<std::string> warnings;

    Eigen::MatrixXd matvec(const Eigen::MatrixXd& x) const {
        return dense ? Eigen::MatrixXd(Ad * x) : Eigen::MatrixXd(As * x);
    }
    int dim() const { return static_cast<int>(B.size()); }
    double diag(int i) const { return dense ? Ad(i, i) : As.coeff(i, i); }
};

SpMat submatrix(const SpMat& a, const std::vector<int>& rows) {
    const int n = static_cast<int>(rows.size());
    std::vector<int> where(a.rows(), -1);
    for (int i = 0; i < n; ++i) where[rows[i]] = i;
    std::vector<Eigen::Triplet<double>> trips;
    for (int col = 0; col < a.outerSize(); ++col) {
        if (where[col] < 0) continue;
        for (SpMat::InnerIterator it(a, col); it; ++it)
            if (where[it.row()] >= 0)
                trips.emplace_back(where[it.row()], where[col], it.value());
    }
    SpMat out(n, n);
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

// Eliminates zero-mass dofs through the Schur complement on the
// constraint block; finite eigenvalues are preserved exactly.
ReducedPencil reduce_zero_mass(const HodgePencil& pencil) {
    ReducedPencil red;
    red.warnings = pencil.warnings;

    std::vector<int> keep, drop;
    for (int i = 0; i < pencil.B.size(); ++i)
        (pencil.B[i] == 0.0 ? drop : keep).push_back(i);

    if (drop.empty()) {
        red.As = pencil.A;
        red.B = pencil.B;
        return red;
    }

    SpMat a_kk = submatrix(pencil.A, keep);
    SpMat a_dd = submatrix(pencil.A, drop);

    // Cross block keep x drop.
    std::vector<int> wkeep(pencil.A.rows(), -1), wdrop(pencil.A.rows(), -1);
    for (size_t i = 0; i < keep.size(); ++i) wkeep[keep[i]] = static_cast<int>(i);
    for (size_t i = 0; i < drop.size(); ++i) wdrop[drop[i]] = static_cast<int>(i);
    std::vector<Eigen::Triplet<double>> cross;
    for (int col = 0; col < pencil.A.outerSize(); ++col) {
        if (wdrop[col] < 0) continue;
        for (SpMat::InnerIterator it(pencil.A, col); it; ++it)
            if (wkeep[it.row()] >= 0)
                cross.emplace_back(wkeep[it.row()], wdrop[col], it.value());
    }
    SpMat a_kd(static_cast<int>(keep.size()), static_cast<int>(drop.size()));
    a_kd.setFromTriplets(cross.begin(), cross.end());

    red.B = Eigen::VectorXd(keep.size());
    for (size_t i = 0; i < keep.size(); ++i) red.B[i] = pencil.B[keep[i]];

    // The constraint block is diagonal whenever no (p+1)-simplex holds two
    // constrained dofs; detect that by value so stored zeros don't matter.
    double dd_offdiag = 0.0, dd_diag_max = 0.0;
    for (int c = 0; c < a_dd.outerSize(); ++c)
        for (SpMat::InnerIterator it(a_dd, c); it; ++it) {
            if (it.row() == c) dd_diag_max = std::max(dd_diag_max, std::abs(it.value()));
            else dd_offdiag = std::max(dd_offdiag, std::abs(it.value()));
        }
    const bool dd_diagonal = dd_offdiag <= 1e-13 * dd_diag_max;
    if (dd_diagonal) {
        Eigen::VectorXd dinv(drop.size());
        for (size_t i = 0; i < drop.size(); ++i) {
            const double d = a_dd.coeff(static_cast<int>(i), static_cast<int>(i));
            if (!(d > 0.0))
                throw SolverError("solve_spectrum: constraint block is singular");
            dinv[static_cast<int>(i)] = 1.0 / d;
        }
        red.As = symmetrized(SpMat(a_kd * diag_sparse(dinv) * SpMat(a_kd.transpose())));
        red.As = SpMat(a_kk - red.As);
        red.As = symmetrized(red.As);
        return red;
    }

    Eigen::SimplicialLDLT<SpMat> ldlt(a_dd);
    if (ldlt.info() != Eigen::Success)
        throw SolverError("solve_spectrum: constraint block factorization failed");
    Eigen::MatrixXd x = ldlt.solve(Eigen::MatrixXd(SpMat(a_kd.transpose())));
    red.Ad = Eigen::MatrixXd(a_kk) - Eigen::MatrixXd(a_kd) * x;
    red.Ad = 0.5 * (red.Ad + red.Ad.transpose()).eval();
    red.dense = true;
    return red;
}

struct EigPairs {
    std::vector<double> values;
    Eigen::MatrixXd vectors; // columns, B-orthonormal
    int iterations = 0;
};

EigPairs dense_solve(const ReducedPencil& red, int num) {
    const int n = red.dim();
    const Eigen::VectorXd s = red.B.cwiseSqrt();
    const Eigen::VectorXd sinv = s.cwiseInverse();
    Eigen::MatrixXd a = red.dense ? red.Ad : Eigen::MatrixXd(red.As);
    a = sinv.asDiagonal() * a * sinv.asDiagonal();
    a = 0.5 * (a + a.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    if (es.info() != Eigen::Success) throw SolverError("solve_spectrum: dense eigensolver failed");
    EigPairs out;
    out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + num);
    out.vectors = sinv.asDiagonal() * es.eigenvectors().leftCols(num);
    (void)n;
    return out;
}

EigPairs subspace_solve(const ReducedPencil& red, int num, const SolveOptions& opts) {
    const int n = red.dim();
    const int block = std::min(n, num + std::max(8, num));

    double rho = 0.0;
    for (int i = 0; i < n; ++i) rho = std::max(rho, red.diag(i) / red.B[i]);
    // Shift just below zero: far enough for a definite factorization,
    // close enough that the smallest eigenvalues dominate the iteration.
    const double sigma = -1e-3 * std::max(rho, 1e-30);

    Eigen::SimplicialLDLT<SpMat> sldlt;
    Eigen::LDLT<Eigen::MatrixXd> dldlt;
    if (red.dense) {
        Eigen::MatrixXd k = red.Ad;
        k.diagonal() -= sigma * red.B;
        dldlt.compute(k);
        if (dldlt.info() != Eigen::Success)
            throw SolverError("solve_spectrum: shift factorization failed");
    } else {
        SpMat k = red.As;
        k += SpMat(diag_sparse((-sigma) * red.B));
        sldlt.compute(k);
        if (sldlt.info() != Eigen::Success)
            throw SolverError("solve_spectrum: shift factorization failed");
    }
    auto solve_k = [&](const Eigen::MatrixXd& rhs) {
        return red.dense ? Eigen::MatrixXd(dldlt.solve(rhs)) : Eigen::MatrixXd(sldlt.solve(rhs));
    };

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Eigen::MatrixXd x(n, block);
    for (int j = 0; j < block; ++j)
        for (int i = 0; i < n; ++i) x(i, j) = unif(rng);

    Eigen::VectorXd theta;
    EigPairs out;
    bool converged = false;
    for (int it = 1; it <= opts.max_iterations && !converged; ++it) {
        Eigen::MatrixXd y = solve_k(red.B.asDiagonal() * x);
        Eigen::MatrixXd gram = y.transpose() * (red.B.asDiagonal() * y);
        gram = 0.5 * (gram + gram.transpose()).eval();
        Eigen::LLT<Eigen::MatrixXd> llt(gram);
        if (llt.info() != Eigen::Success) {
            // Rank-deficient block; refresh with new random directions.
            for (int j = 0; j < block; ++j)
                for (int i = 0; i < n; ++i) y(i, j) = unif(rng);
            x = y;
            continue;
        }
        y = llt.matrixL().solve(y.transpose()).transpose().eval();

        Eigen::MatrixXd h = y.transpose() * red.matvec(y);
        h = 0.5 * (h + h.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
        if (es.info() != Eigen::Success) throw SolverError("solve_spectrum: Ritz step failed");
        theta = es.eigenvalues();
        x = y * es.eigenvectors();

        // Residual check on the wanted pairs.
        const double scale = std::max(std::abs(theta[block - 1]), std::max(rho, 1e-300));
        Eigen::MatrixXd r = red.matvec(x.leftCols(num)) -
                            red.B.asDiagonal() * x.leftCols(num) * theta.head(num).asDiagonal();
        bool done = true;
        for (int j = 0; j < num; ++j) {
            const double rn = (red.B.cwiseInverse().cwiseSqrt().asDiagonal() * r.col(j)).norm();
            const double xn = (red.B.cwiseSqrt().asDiagonal() * x.col(j)).norm();
            if (rn > opts.tol * scale * std::max(xn, 1e-300)) { done = false; break; }
        }
        if (done) {
            out.iterations = it;
            converged = true;
        }
    }
    if (!converged) {
        std::vector<double> partial;
        if (theta.size() >= num) partial.assign(theta.data(), theta.data() + num);
        throw SolverError("solve_spectrum: no convergence after " +
                              std::to_string(opts.max_iterations) + " iterations",
                          std::move(partial));
    }
    out.values.assign(theta.data(), theta.data() + num);
    out.vectors = x.leftCols(num);
    return out;
}

} // namespace

SpectrumResult solve_spectrum(const HodgePencil& pencil, int num, const SolveOptions& opts) {
    if (num < 1) throw DomainError("solve_spectrum: num >= 1 required");
    if (pencil.dim() == 0) throw DegenerateDomainError("solve_spectrum: empty pencil");
    for (int i = 0; i < pencil.B.size(); ++i)
        if (pencil.B[i] < 0.0)
            throw SolverError("solve_spectrum: negative mass entries; pencil is not definite");

    ReducedPencil red = reduce_zero_mass(pencil);
    SpectrumResult res;
    res.p = pencil.p;
    res.tol = opts.tol;
    res.seed = opts.seed;
    res.warnings = red.warnings;

    const int n = red.dim();
    if (n == 0) throw DegenerateDomainError("solve_spectrum: all dofs constrained");
    if (num > n) {
        res.warnings.push_back("requested " + std::to_string(num) + " eigenvalues of a " +
                               std::to_string(n) + "-dim pencil; truncated");
        num = n;
    }

    EigPairs pairs;
    if (n <= opts.dense_threshold) {
        res.method = SolveMethod::Dense;
        pairs = dense_solve(red, num);
    } else {
        res.method = SolveMethod::Iterative;
        pairs = subspace_solve(red, num, opts);
    }
    res.iterations = pairs.iterations;

    // Residual norms in the B^{-1} metric relative to the spectral scale.
    double rho = 0.0;
    for (int i = 0; i < n; ++i) rho = std::max(rho, red.diag(i) / red.B[i]);
    double lam_max = 0.0;
    for (double v : pairs.values) lam_max = std::max(lam_max, std::abs(v));
    const double scale = std::max(lam_max, std::max(rho, 1e-300));
    const Eigen::VectorXd binv_sqrt = red.B.cwiseInverse().cwiseSqrt();
    const Eigen::VectorXd b_sqrt = red.B.cwiseSqrt();
    res.residual_norms.resize(num);
    {
        Eigen::MatrixXd ax = red.matvec(pairs.vectors);
        for (int j = 0; j < num; ++j) {
            Eigen::VectorXd r = ax.col(j) - pairs.values[j] * (red.B.asDiagonal() * pairs.vectors.col(j));
            const double xn = (b_sqrt.asDiagonal() * pairs.vectors.col(j)).norm();
            res.residual_norms[j] =
                (binv_sqrt.asDiagonal() * r).norm() / (scale * std::max(xn, 1e-300));
        }
    }

    // Nonnegativity: clamp roundoff-level negatives, reject real ones.
    res.eigenvalues = std::move(pairs.values);
    const double clamp = opts.tol * scale;
    for (double& v : res.eigenvalues) {
        if (v < -clamp)
            throw SolverError("solve_spectrum: negative eigenvalue " + std::to_string(v),
                              res.eigenvalues);
        if (v < 0.0) v = 0.0;
    }
    std::sort(res.eigenvalues.begin(), res.eigenvalues.end());

    // Eigenvalue clusters under a 1e-6 relative gap.
    for (size_t i = 0; i < res.eigenvalues.size(); ++i) {
        const bool same =
            i > 0 && (res.eigenvalues[i] - res.eigenvalues[i - 1]) <=
                         1e-6 * std::max(res.eigenvalues[i], res.eigenvalues[i - 1]);
        if (same) ++res.multiplicities.back();
        else res.multiplicities.push_back(1);
    }

    // Kernel: eigenvalues below 1e-8 x (first nonzero eigenvalue).
    double lam_ref = res.eigenvalues.empty() ? 0.0 : res.eigenvalues.back();
    if (lam_ref <= 1e-12 * rho) {
        res.kernel_dim = static_cast<int>(res.eigenvalues.size());
    } else {
        double first_nonzero = lam_ref;
        for (double v : res.eigenvalues)
            if (v > 1e-8 * lam_ref) { first_nonzero = v; break; }
        res.kernel_dim = static_cast<int>(std::count_if(
            res.eigenvalues.begin(), res.eigenvalues.end(),
            [&](double v) { return v < 1e-8 * first_nonzero; }));
    }
    return res;
}

DirichletSubproblem dirichlet_subproblem(const mesh::SurfaceMesh& m,
                                         const mesh::GeodesicBall& ball) {
    DirichletSubproblem sub;
    sub.parent = &m;
    sub.ball = ball;

    std::vector<char> in(m.num_vertices(), 0);
    for (int v : ball.verts) in[v] = 1;

    // Vertex kept iff every incident edge stays in the induced
    // subcomplex, i.e. every neighbour lies in the ball.
    for (int v : ball.verts) {
        bool interior = true;
        for (int e : m.vertex_edges[v]) {
            const auto& ed = m.edges[e];
            const int w = (ed[0] == v) ? ed[1] : ed[0];
            if (!in[w]) { interior = false; break; }
        }
        if (interior) sub.kept[0].push_back(v);
    }
    // Edge kept iff both incident triangles lie in the subcomplex.
    for (int e : ball.edge_ids) {
        bool interior = true;
        for (int f : m.edge_tris[e]) {
            const auto& t = m.triangles[f];
            if (!(in[t[0]] && in[t[1]] && in[t[2]])) { interior = false; break; }
        }
        if (interior) sub.kept[1].push_back(e);
    }
    sub.kept[2] = ball.tri_ids;

    if (sub.kept[0].empty() && sub.kept[1].empty() && sub.kept[2].empty())
        throw DegenerateDomainError(
            "dirichlet_subproblem: ball around vertex " + std::to_string(ball.center) +
            " has no interior simplices at radius " + std::to_string(ball.radius));
    return sub;
}

std::vector<int> kept_dofs(const DirichletSubproblem& sub, const HodgePencil& pencil) {
    if (pencil.p < 2 || pencil.face_class.empty()) {
        return sub.kept[pencil.p];
    }
    // Merged 2-form dofs: a class is kept iff all of its faces are kept.
    const int nclass = pencil.dim();
    std::vector<int> total(nclass, 0), inside(nclass, 0);
    for (int c : pencil.face_class) ++total[c];
    for (int f : sub.kept[2]) ++inside[pencil.face_class[f]];
    std::vector<int> dofs;
    for (int c = 0; c < nclass; ++c)
        if (total[c] > 0 && inside[c] == total[c]) dofs.push_back(c);
    return dofs;
}

HodgePencil restrict_pencil(const HodgePencil& pencil, const std::vector<int>& dofs) {
    HodgePencil out;
    out.p = pencil.p;
    out.warnings = pencil.warnings;
    out.A = submatrix(pencil.A, dofs);
    out.B = Eigen::VectorXd(dofs.size());
    for (size_t i = 0; i < dofs.size(); ++i) out.B[i] = pencil.B[dofs[i]];
    return out;
}

SpectrumResult dirichlet_spectrum(const DirichletSubproblem& sub, const DecOperators& ops,
                                  int p, int num, const SolveOptions& opts) {
    const HodgePencil closed = hodge_laplacian(ops, p);
    const std::vector<int> dofs = kept_dofs(sub, closed);
    if (dofs.empty())
        throw DegenerateDomainError("dirichlet_spectrum: no interior degree-" +
                                    std::to_string(p) + " simplices in the ball");
    return solve_spectrum(restrict_pencil(closed, dofs), std::min<int>(num, dofs.size()), opts);
}

} // namespace specgeom::dec
