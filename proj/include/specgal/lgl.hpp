#ifndef SPECGAL_LGL_HPP
#define SPECGAL_LGL_HPP

#include "specgal/errors.hpp"

#include <Eigen/Core>

#include <cmath>
#include <numbers>
#include <string>

namespace specgal
{

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Legendre-Gauss-Lobatto rule of order N: the N+1 roots of (1-x^2) L_N'(x).
struct LglRule
{
    int    order = 0;
    Vector nodes;
    Vector weights;

    [[nodiscard]] int size() const { return order + 1; }
};

namespace detail
{
// L_n(x) and L_{n-1}(x) by the three-term recurrence.
inline void legendre_pair(int n, double x, double& l_n, double& l_nm1)
{
    double p0 = 1.0;
    double p1 = x;
    if (n == 0)
    {
        l_n   = 1.0;
        l_nm1 = 0.0;
        return;
    }
    for (int k = 1; k < n; ++k)
    {
        const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0              = p1;
        p1              = p2;
    }
    l_n   = p1;
    l_nm1 = p0;
}
} // namespace detail

/// Tabulates L_0..L_degree at every point. Result is points.size() x (degree+1).
inline Matrix legendre_table(const Vector& points, int degree)
{
    Matrix table(points.size(), degree + 1);
    for (Eigen::Index m = 0; m < points.size(); ++m)
    {
        const double x = points[m];
        table(m, 0)    = 1.0;
        if (degree >= 1)
            table(m, 1) = x;
        for (int k = 1; k < degree; ++k)
            table(m, k + 1) = ((2.0 * k + 1.0) * x * table(m, k) - k * table(m, k - 1)) / (k + 1.0);
    }
    return table;
}

/// Derivatives L_0'..L_degree' from L'_{k+1} = L'_{k-1} + (2k+1) L_k, valid up to the endpoints.
inline Matrix legendre_derivative_table(const Matrix& values)
{
    const auto degree = values.cols() - 1;
    Matrix     table  = Matrix::Zero(values.rows(), values.cols());
    if (degree >= 1)
        table.col(1).setOnes();
    for (Eigen::Index k = 1; k < degree; ++k)
        table.col(k + 1) = table.col(k - 1) + (2.0 * k + 1.0) * values.col(k);
    return table;
}

/// Newton iteration on (1-x^2) L_N'(x) seeded with Chebyshev-Gauss-Lobatto points.
/// Nodes are computed on the left half and mirrored so the rule is exactly symmetric.
inline LglRule compute_lgl_rule(int order)
{
    if (order < 1)
        throw InvalidArgument("LGL order must be >= 1, got " + std::to_string(order));

    constexpr int    max_newton = 100;
    constexpr double newton_tol = 1e-14;

    LglRule rule;
    rule.order = order;
    rule.nodes.resize(order + 1);
    rule.weights.resize(order + 1);
    rule.nodes[0]     = -1.0;
    rule.nodes[order] = 1.0;

    const double n = order;
    for (int j = 1; j <= order / 2; ++j)
    {
        double x         = -std::cos(std::numbers::pi * j / n);
        bool   converged = false;
        for (int it = 0; it < max_newton; ++it)
        {
            double l_n = 0.0, l_nm1 = 0.0;
            detail::legendre_pair(order, x, l_n, l_nm1);
            // (1-x^2) L_N' = N (L_{N-1} - x L_N) and its derivative is -N(N+1) L_N
            const double dx = (l_nm1 - x * l_n) / ((n + 1.0) * l_n);
            x += dx;
            if (std::abs(dx) <= newton_tol)
            {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw NumericalError("LGL Newton iteration did not converge for order " + std::to_string(order));
        rule.nodes[j]         = x;
        rule.nodes[order - j] = -x;
    }
    if (order % 2 == 0)
        rule.nodes[order / 2] = 0.0;

    for (int j = 0; j <= order; ++j)
    {
        double l_n = 0.0, l_nm1 = 0.0;
        detail::legendre_pair(order, rule.nodes[j], l_n, l_nm1);
        rule.weights[j] = 2.0 / (n * (n + 1.0) * l_n * l_n);
    }
    return rule;
}

} // namespace specgal

#endif // SPECGAL_LGL_HPP
