#ifndef SPECGAL_GMRES_HPP
#define SPECGAL_GMRES_HPP

#include "specgal/cdr_operator.hpp"
#include "specgal/errors.hpp"
#include "specgal/fast_solver.hpp"
#include "specgal/tensor.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace specgal
{

struct KrylovStats
{
    int iterations = 0;
    /// Preconditioned relative residual ||P^{-1}(b - A x_k)|| / ||P^{-1} b|| after iteration k (1-based).
    std::vector<double> residual_history;
    bool                converged = false;
    double              wall_seconds = 0.0;
    /// Unpreconditioned ||b - A x|| / ||b|| of the returned iterate.
    double true_residual = std::numeric_limits<double>::quiet_NaN();

    [[nodiscard]] double final_residual() const { return residual_history.empty() ? 0.0 : residual_history.back(); }
};

/// Full (unrestarted) GMRES on the left-preconditioned system P^{-1} A x = P^{-1} b with
/// zero initial guess. Arnoldi uses modified Gram-Schmidt plus one reorthogonalization pass
/// whenever the new direction keeps a component above 1e-8 along the existing basis.
///
/// Non-convergence is reported through stats.converged, not an exception; the returned
/// iterate is then the minimal-residual one from the full Krylov space.
template <typename ApplyOperator, typename ApplyPreconditioner>
std::pair<Vector, KrylovStats> gmres(ApplyOperator&& apply_op, ApplyPreconditioner&& apply_prec, const Vector& b,
                                     double tol, int max_iter)
{
    if (!(tol > 0.0))
        throw InvalidArgument("GMRES tolerance must be positive");
    if (max_iter < 1)
        throw InvalidArgument("GMRES needs max_iter >= 1");
    if (!b.allFinite())
        throw NumericalError("GMRES right-hand side is not finite");

    constexpr double reorth_threshold = 1e-8;
    const auto       start            = std::chrono::steady_clock::now();

    KrylovStats stats;
    const auto  n = b.size();
    Vector      x = Vector::Zero(n);

    const Vector r0   = apply_prec(b);
    const double beta = r0.norm();
    if (!std::isfinite(beta))
        throw NumericalError("GMRES breakdown: preconditioned right-hand side is not finite");
    if (beta == 0.0)
    {
        stats.converged     = true;
        stats.true_residual = 0.0;
        return {x, stats};
    }

    std::vector<Vector> basis;
    basis.reserve(max_iter + 1);
    basis.push_back(r0 / beta);
    Matrix hess = Matrix::Zero(max_iter + 1, max_iter);
    Vector cs   = Vector::Zero(max_iter);
    Vector sn   = Vector::Zero(max_iter);
    Vector g    = Vector::Zero(max_iter + 1);
    g[0]        = beta;

    int k = 0;
    for (; k < max_iter; ++k)
    {
        Vector w = apply_prec(apply_op(basis[k]));
        if (!w.allFinite())
            throw NumericalError("GMRES breakdown: NaN/Inf in preconditioned operator application");

        for (int i = 0; i <= k; ++i)
        {
            const double h = basis[i].dot(w);
            w -= h * basis[i];
            hess(i, k) = h;
        }
        double w_norm = w.norm();
        double loss   = 0.0;
        for (int i = 0; i <= k && w_norm > 0.0; ++i)
            loss = std::max(loss, std::abs(basis[i].dot(w)) / w_norm);
        if (loss > reorth_threshold)
        {
            for (int i = 0; i <= k; ++i)
            {
                const double h = basis[i].dot(w);
                w -= h * basis[i];
                hess(i, k) += h;
            }
            w_norm = w.norm();
        }
        hess(k + 1, k) = w_norm;

        for (int i = 0; i < k; ++i)
        {
            const double t  = cs[i] * hess(i, k) + sn[i] * hess(i + 1, k);
            hess(i + 1, k)  = -sn[i] * hess(i, k) + cs[i] * hess(i + 1, k);
            hess(i, k)      = t;
        }
        const double r = std::hypot(hess(k, k), hess(k + 1, k));
        if (!std::isfinite(r) || r == 0.0)
            throw NumericalError("GMRES breakdown: singular Hessenberg column");
        cs[k]          = hess(k, k) / r;
        sn[k]          = hess(k + 1, k) / r;
        hess(k, k)     = r;
        hess(k + 1, k) = 0.0;
        g[k + 1]       = -sn[k] * g[k];
        g[k]           = cs[k] * g[k];

        const double rel = std::abs(g[k + 1]) / beta;
        stats.residual_history.push_back(rel);
        if (rel <= tol || w_norm == 0.0)
        {
            stats.converged = rel <= tol;
            ++k;
            break;
        }
        if (k + 1 < max_iter)
            basis.push_back(w / w_norm);
    }
    stats.iterations = k;

    const Vector y = hess.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(g.head(k));
    for (int i = 0; i < k; ++i)
        x += y[i] * basis[i];
    if (!x.allFinite())
        throw NumericalError("GMRES breakdown: iterate is not finite");

    const double b_norm  = b.norm();
    stats.true_residual  = b_norm > 0.0 ? (b - apply_op(x)).norm() / b_norm : 0.0;
    stats.wall_seconds   = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {std::move(x), std::move(stats)};
}

/// Solves the optimality system with the fast constant-coefficient solver as left preconditioner.
inline std::pair<SaddleVector, KrylovStats> gmres_solve(const CdrOperator& op, const FastSolver& prec,
                                                        const SaddleVector& b, double tol = 1e-10,
                                                        int max_iter = 100)
{
    const int dim    = op.dim();
    const int extent = op.modes();
    if (prec.dim() != dim || prec.modes() != extent || b.first.dim() != dim || b.first.extent() != extent ||
        !b.first.same_shape(b.second))
        throw DimensionError("gmres_solve: operator, preconditioner and right-hand side shapes differ");

    auto apply_op = [&](const Vector& v) {
        return op.apply_saddle(SaddleVector::from_stacked(dim, extent, v)).stacked();
    };
    auto apply_prec = [&](const Vector& v) {
        return prec.apply_inverse(SaddleVector::from_stacked(dim, extent, v)).stacked();
    };
    auto [x, stats] = gmres(apply_op, apply_prec, b.stacked(), tol, max_iter);
    return {SaddleVector::from_stacked(dim, extent, x), std::move(stats)};
}

} // namespace specgal

#endif // SPECGAL_GMRES_HPP
