#ifndef SPECGAL_FAST_SOLVER_HPP
#define SPECGAL_FAST_SOLVER_HPP

#include "specgal/basis.hpp"
#include "specgal/coefficients.hpp"
#include "specgal/errors.hpp"
#include "specgal/tensor.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <utility>

namespace specgal
{

struct MidpointCoefficients
{
    double alpha_bar;
    double gamma_bar;
};

/// Midpoint of the range of alpha and gamma over the tensor grid built from `nodes`
/// (for LGL nodes this includes every corner of the box).
inline MidpointCoefficients coefficient_midpoint(const CoefficientField& field, const Vector& nodes)
{
    check_dim(field.dim);
    double a_min = std::numeric_limits<double>::infinity(), a_max = -a_min;
    double g_min = a_min, g_max = -a_min;
    for_each_grid_point(nodes, field.dim, [&](Eigen::Index, const Point& x) {
        const double a = field.alpha(x);
        const double g = field.gamma(x);
        a_min          = std::min(a_min, a);
        a_max          = std::max(a_max, a);
        g_min          = std::min(g_min, g);
        g_max          = std::max(g_max, g);
    });
    const MidpointCoefficients mid{0.5 * (a_max + a_min), 0.5 * (g_max + g_min)};
    if (!(mid.alpha_bar > 0.0) || !(mid.gamma_bar > 0.0))
        throw InvalidCoefficient("midpoint coefficients must be positive");
    return mid;
}

/// Direct solver for the constant-coefficient optimality system
///
///     [ Lambda     rho Sigma ] [y]   [Y]
///     [ Sigma      -Lambda   ] [u] = [F]
///
/// where in the psi basis both blocks are diagonal: Lambda = prod_a lambda_{i_a} and
/// Sigma = alpha_bar * sum_a prod_{b != a} lambda_{i_b} + gamma_bar * Lambda.
/// Each multi-index is an independent 2x2 system solved in closed form, O(N^d) per solve.
class FastSolver
{
public:
    FastSolver(const Basis1D& basis, int dim, double alpha_bar, double gamma_bar, double rho)
        : dim_{dim}, modes_{basis.modes()}, alpha_bar_{alpha_bar}, gamma_bar_{gamma_bar}, rho_{rho}
    {
        check_dim(dim);
        if (!(alpha_bar > 0.0) || !(gamma_bar > 0.0) || !(rho > 0.0))
            throw InvalidArgument("fast solver parameters alpha_bar, gamma_bar, rho must be positive");

        const Vector& lam = basis.eigenvalues();
        const int     d   = std::min(dim, 3);
        lambda_           = outer_power(lam, dim);
        sigma_.resize(lambda_.size());
        for (Eigen::Index flat = 0; flat < lambda_.size(); ++flat)
        {
            std::array<double, 3> l{1.0, 1.0, 1.0};
            auto                  rest = flat;
            for (int a = 0; a < d; ++a)
            {
                l[a] = lam[rest % modes_];
                rest /= modes_;
            }
            double cofactors = 0.0;
            for (int a = 0; a < d; ++a)
            {
                double prod = 1.0;
                for (int b = 0; b < d; ++b)
                    if (b != a)
                        prod *= l[b];
                cofactors += prod;
            }
            sigma_[flat] = alpha_bar * cofactors + gamma_bar * lambda_[flat];
        }
    }

    [[nodiscard]] int           dim() const { return dim_; }
    [[nodiscard]] int           modes() const { return modes_; }
    [[nodiscard]] double        alpha_bar() const { return alpha_bar_; }
    [[nodiscard]] double        gamma_bar() const { return gamma_bar_; }
    [[nodiscard]] double        rho() const { return rho_; }
    [[nodiscard]] const Vector& lambda_tensor() const { return lambda_; }
    [[nodiscard]] const Vector& sigma_tensor() const { return sigma_; }

    /// P v = (Lambda y + rho Sigma u, Sigma y - Lambda u).
    [[nodiscard]] SaddleVector apply_forward(const SaddleVector& v) const
    {
        check(v);
        const Vector& y = v.first.values();
        const Vector& u = v.second.values();
        return {ModalTensor(dim_, modes_, lambda_.cwiseProduct(y) + rho_ * sigma_.cwiseProduct(u)),
                ModalTensor(dim_, modes_, sigma_.cwiseProduct(y) - lambda_.cwiseProduct(u))};
    }

    /// P^{-1} rhs via the closed-form 2x2 inverse with determinant -(Lambda^2 + rho Sigma^2) < 0.
    [[nodiscard]] SaddleVector apply_inverse(const SaddleVector& rhs) const
    {
        check(rhs);
        SaddleVector  out = SaddleVector::zeros(dim_, modes_);
        const Vector& top = rhs.first.values();
        const Vector& bot = rhs.second.values();
        Vector&       y   = out.first.values();
        Vector&       u   = out.second.values();
        for (Eigen::Index i = 0; i < lambda_.size(); ++i)
        {
            const double l   = lambda_[i];
            const double s   = sigma_[i];
            const double det = -(l * l + rho_ * s * s);
            y[i]             = (-l * top[i] - rho_ * s * bot[i]) / det;
            u[i]             = (-s * top[i] + l * bot[i]) / det;
        }
        return out;
    }

private:
    void check(const SaddleVector& v) const
    {
        for (const ModalTensor* t : {&v.first, &v.second})
            if (t->dim() != dim_ || t->extent() != modes_)
                throw DimensionError("saddle vector shape does not match fast solver (" + std::to_string(dim_) +
                                     "D, extent " + std::to_string(modes_) + ")");
    }

    int    dim_;
    int    modes_;
    double alpha_bar_;
    double gamma_bar_;
    double rho_;
    Vector lambda_;
    Vector sigma_;
};

inline FastSolver build_fast_solver(const Basis1D& basis, int dim, double alpha_bar, double gamma_bar, double rho)
{
    return FastSolver(basis, dim, alpha_bar, gamma_bar, rho);
}

inline SaddleVector apply_preconditioner(const FastSolver& solver, const SaddleVector& v)
{
    return solver.apply_forward(v);
}

inline SaddleVector apply_preconditioner_inverse(const FastSolver& solver, const SaddleVector& rhs)
{
    return solver.apply_inverse(rhs);
}

/// Solves a constant-coefficient optimality system outright; same kernel as the preconditioner.
inline SaddleVector direct_solve_constant(const FastSolver& solver, const SaddleVector& b)
{
    return solver.apply_inverse(b);
}

} // namespace specgal

#endif // SPECGAL_FAST_SOLVER_HPP
