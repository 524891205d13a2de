#include "collapse/korn.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>

namespace collapse {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Trip = Eigen::Triplet<double>;

constexpr double kKernelTol = 1e-10;

}  // namespace

KornEstimate korn_estimate(const ThinGrid& grid, int n_iter, int block) {
    require(n_iter > 0 && block >= 2, "korn: need n_iter > 0 and block >= 2");
    const FiberProfile& pf = grid.profile();
    const bool per = grid.periodic();
    const int nx = grid.nx(), ns = grid.ns();
    const int nvx = per ? nx : nx + 1, nvs = ns + 1;
    auto vid = [&](int i, int j) { return (per ? (i % nx) : i) * nvs + j; };
    const int nv = nvx * nvs;

    // reduction: full vertex dofs (2 per vertex) from free parameters
    std::vector<Trip> tt;
    int nfree = 0;
    for (int i = 0; i < nvx; ++i) {
        for (int j = 0; j < nvs; ++j) {
            const int v = vid(i, j);
            const bool end = !per && (i == 0 || i == nx);
            const bool wall = j == 0 || j == ns;
            if (end) continue;
            if (wall) {
                const Vec2 t = boundary_frame(pf, grid.eps(), grid.xv(i), j == 0 ? Side::bottom : Side::top).tangent;
                tt.emplace_back(2 * v, nfree, t.x());
                tt.emplace_back(2 * v + 1, nfree, t.y());
                ++nfree;
            } else {
                tt.emplace_back(2 * v, nfree++, 1.0);
                tt.emplace_back(2 * v + 1, nfree++, 1.0);
            }
        }
    }
    SpMat T(2 * nv, nfree);
    T.setFromTriplets(tt.begin(), tt.end());

    // element assembly on the two triangles of every quad
    std::vector<Trip> ta, tb;
    auto element = [&](const int (&ids)[3], const Vec2 (&p)[3]) {
        Eigen::Matrix2d J;
        J.col(0) = p[1] - p[0];
        J.col(1) = p[2] - p[0];
        const double det = J.determinant();
        const double area = 0.5 * std::abs(det);
        const Eigen::Matrix2d Jit = J.inverse().transpose();
        Vec2 dN[3];
        dN[1] = Jit.col(0);
        dN[2] = Jit.col(1);
        dN[0] = -dN[1] - dN[2];
        Eigen::Matrix<double, 3, 6> B = Eigen::Matrix<double, 3, 6>::Zero();
        const double r2 = std::sqrt(0.5);
        for (int a = 0; a < 3; ++a) {
            B(0, 2 * a) = dN[a].x();
            B(1, 2 * a + 1) = dN[a].y();
            B(2, 2 * a) = r2 * dN[a].y();
            B(2, 2 * a + 1) = r2 * dN[a].x();
        }
        const Eigen::Matrix<double, 6, 6> Ka = area * B.transpose() * B;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                const double mass = area / 12.0 * (a == b ? 2.0 : 1.0);
                const double lap = area * dN[a].dot(dN[b]);
                for (int ca = 0; ca < 2; ++ca) {
                    for (int cb = 0; cb < 2; ++cb)
                        ta.emplace_back(2 * ids[a] + ca, 2 * ids[b] + cb, Ka(2 * a + ca, 2 * b + cb));
                    tb.emplace_back(2 * ids[a] + ca, 2 * ids[b] + ca, mass + lap);
                }
            }
    };
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ns; ++j) {
            const int v00 = vid(i, j), v10 = vid(i + 1, j), v11 = vid(i + 1, j + 1), v01 = vid(i, j + 1);
            // physical positions use the unwrapped column so periodic elements stay local
            const Vec2 p00 = grid.vertex(i, j), p10 = grid.vertex(i + 1, j);
            const Vec2 p11 = grid.vertex(i + 1, j + 1), p01 = grid.vertex(i, j + 1);
            element({v00, v10, v11}, {p00, p10, p11});
            element({v00, v11, v01}, {p00, p11, p01});
        }
    SpMat A(2 * nv, 2 * nv), Bm(2 * nv, 2 * nv);
    A.setFromTriplets(ta.begin(), ta.end());
    Bm.setFromTriplets(tb.begin(), tb.end());
    const SpMat Ar = SpMat(T.transpose() * A * T);
    const SpMat Br = SpMat(T.transpose() * Bm * T);

    // shift slightly left of zero so the operator stays definite with a kernel
    const double sigma = -1e-6;
    const SpMat K = SpMat(Ar - sigma * Br);
    Eigen::SimplicialLDLT<SpMat> ldlt(K);
    if (ldlt.info() != Eigen::Success) throw SolverError("korn: factorization failed");

    const int p = std::min(block, nfree);
    Eigen::MatrixXd X(nfree, p);
    for (int c = 0; c < p; ++c)
        for (int r = 0; r < nfree; ++r) X(r, c) = std::sin(0.37 * (r + 1) * (c + 1)) + 0.1 * ((r * 7 + c * 13) % 5);

    KornEstimate out;
    out.epsilon = grid.eps();
    Eigen::VectorXd prev = Eigen::VectorXd::Constant(p, -1.0);
    Eigen::VectorXd lam;
    for (int it = 1; it <= n_iter; ++it) {
        const Eigen::MatrixXd Y = ldlt.solve(Br * X);
        // Rayleigh-Ritz on span(Y)
        const Eigen::MatrixXd Ay = Y.transpose() * (Ar * Y);
        const Eigen::MatrixXd By = Y.transpose() * (Br * Y);
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(0.5 * (Ay + Ay.transpose()),
                                                                       0.5 * (By + By.transpose()));
        if (ges.info() != Eigen::Success) throw SolverError("korn: Ritz problem failed");
        lam = ges.eigenvalues();
        X = Y * ges.eigenvectors();
        out.iterations = it;
        // converge on the lowest half of the block
        double change = 0.0;
        for (int c = 0; c < std::max(2, p / 2); ++c)
            change = std::max(change, std::abs(lam[c] - prev[c]) / std::max(std::abs(lam[c]), 1e-14));
        prev = lam;
        if (it > 2 && change < 1e-10) {
            out.converged = true;
            break;
        }
    }
    out.kernel_dim = 0;
    out.constant = lam[p - 1];
    for (int c = 0; c < p; ++c) {
        if (lam[c] <= kKernelTol) {
            ++out.kernel_dim;
        } else {
            out.constant = lam[c];
            break;
        }
    }
    out.last_quotient = lam[0];
    return out;
}

}  // namespace collapse
