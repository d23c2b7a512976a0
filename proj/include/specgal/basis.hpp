#ifndef SPECGAL_BASIS_HPP
#define SPECGAL_BASIS_HPP

#include "specgal/errors.hpp"
#include "specgal/lgl.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace specgal
{

/// Normalization of the compact combination phi_j = c_j (L_j - L_{j+2}); makes -<phi_k'', phi_j> = delta_jk.
inline double compact_scale(int j)
{
    return 1.0 / std::sqrt(4.0 * j + 6.0);
}

/// Gram matrix <phi_j, phi_k> of the compact Legendre combinations, j, k < modes.
/// Nonzero only on the diagonal and at |j - k| = 2.
inline Matrix compact_mass_matrix(int modes)
{
    Matrix m = Matrix::Zero(modes, modes);
    for (int j = 0; j < modes; ++j)
    {
        const double cj = compact_scale(j);
        m(j, j)         = cj * cj * (2.0 / (2.0 * j + 1.0) + 2.0 / (2.0 * j + 5.0));
        if (j + 2 < modes)
        {
            // <phi_j, phi_{j+2}> = -c_j c_{j+2} ||L_{j+2}||^2
            const double off = -cj * compact_scale(j + 2) * 2.0 / (2.0 * j + 5.0);
            m(j, j + 2)      = off;
            m(j + 2, j)      = off;
        }
    }
    return m;
}

/// The Fourier-like basis psi_k = sum_j q_jk phi_j of V_N = {v in P_N : v(+-1) = 0}.
///
/// Q diagonalizes the compact mass matrix, so <psi_i, psi_j> = lambda_j delta_ij while
/// the stiffness -<psi_i'', psi_j> stays the identity. All tables are built once and the
/// object is immutable afterwards.
class Basis1D
{
public:
    /// Polynomial order N; the basis has N-1 functions.
    [[nodiscard]] int order() const { return rule_.order; }
    [[nodiscard]] int modes() const { return rule_.order - 1; }

    [[nodiscard]] const LglRule& rule() const { return rule_; }
    [[nodiscard]] const Vector&  eigenvalues() const { return eigenvalues_; }
    [[nodiscard]] const Matrix&  eigenvectors() const { return eigenvectors_; }
    [[nodiscard]] const Matrix&  compact_mass() const { return compact_mass_; }

    /// (N+1) x (N-1) tables psi_k(x_j) and psi_k'(x_j) at the LGL nodes.
    [[nodiscard]] const Matrix& psi_values() const { return psi_values_; }
    [[nodiscard]] const Matrix& psi_derivs() const { return psi_derivs_; }

    /// LU factors of the interior collocation matrix [psi_k(x_j)], j = 1..N-1.
    [[nodiscard]] const Eigen::PartialPivLU<Matrix>& interior_interp() const { return interior_interp_; }

    /// (N-1) x (N+1): nodal values -> V_N interpolant coefficients using interior nodes only.
    [[nodiscard]] const Matrix& interior_projection() const { return interior_projection_; }

    /// (N-1) x (N+1): nodal values w -> exact <I_N w, psi_j> with I_N the full LGL interpolant.
    [[nodiscard]] const Matrix& interpolant_moments() const { return interpolant_moments_; }

    /// psi_k or its first/second derivative at arbitrary points; points.size() x (N-1).
    [[nodiscard]] Matrix evaluate(const Vector& points, int derivative = 0) const
    {
        return evaluate_compact(points, derivative) * eigenvectors_;
    }

    /// phi_j or its derivatives at arbitrary points; points.size() x (N-1).
    [[nodiscard]] Matrix evaluate_compact(const Vector& points, int derivative = 0) const
    {
        const int N = order();
        Matrix    phi(points.size(), modes());
        if (derivative == 0)
        {
            const Matrix l = legendre_table(points, N);
            for (int j = 0; j < modes(); ++j)
                phi.col(j) = compact_scale(j) * (l.col(j) - l.col(j + 2));
        }
        else if (derivative == 1 || derivative == 2)
        {
            // phi_j' = -c_j (2j+3) L_{j+1}
            Matrix l = legendre_table(points, N);
            if (derivative == 2)
                l = legendre_derivative_table(l);
            for (int j = 0; j < modes(); ++j)
                phi.col(j) = -compact_scale(j) * (2.0 * j + 3.0) * l.col(j + 1);
        }
        else
            throw InvalidArgument("derivative order must be 0, 1 or 2");
        return phi;
    }

private:
    friend Basis1D build_basis(int order);

    LglRule                     rule_;
    Vector                      eigenvalues_;
    Matrix                      eigenvectors_;
    Matrix                      compact_mass_;
    Matrix                      psi_values_;
    Matrix                      psi_derivs_;
    Eigen::PartialPivLU<Matrix> interior_interp_;
    Matrix                      interior_projection_;
    Matrix                      interpolant_moments_;
};

namespace detail
{
struct EigenPair
{
    double lambda;
    Vector vector;
};

// The compact mass matrix couples only indices of equal parity; each parity class is a
// symmetric tridiagonal problem.
inline void solve_parity_block(const Matrix& mass, int parity, std::vector<EigenPair>& pairs)
{
    const int        modes = static_cast<int>(mass.rows());
    std::vector<int> idx;
    for (int j = parity; j < modes; j += 2)
        idx.push_back(j);
    const int n = static_cast<int>(idx.size());
    if (n == 0)
        return;

    Vector diag(n), sub(std::max(n - 1, 0));
    for (int i = 0; i < n; ++i)
        diag[i] = mass(idx[i], idx[i]);
    for (int i = 0; i + 1 < n; ++i)
        sub[i] = mass(idx[i + 1], idx[i]);

    Vector values;
    Matrix vectors;
    if (n == 1)
    {
        values  = diag;
        vectors = Matrix::Ones(1, 1);
    }
    else
    {
        Eigen::SelfAdjointEigenSolver<Matrix> solver;
        solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
        if (solver.info() != Eigen::Success)
            throw NumericalError("tridiagonal eigensolver failed for the compact mass matrix");
        values  = solver.eigenvalues();
        vectors = solver.eigenvectors();
    }
    for (int k = 0; k < n; ++k)
    {
        Vector full = Vector::Zero(modes);
        for (int i = 0; i < n; ++i)
            full[idx[i]] = vectors(i, k);
        pairs.push_back({values[k], std::move(full)});
    }
}
} // namespace detail

/// Offline stage for order N: LGL rule, eigen-decomposition of the compact mass matrix,
/// and the node tables used by every transform. Costs O(N^3) once.
inline Basis1D build_basis(int order)
{
    if (order < 2)
        throw InvalidArgument("basis order must be >= 2, got " + std::to_string(order));

    Basis1D b;
    b.rule_         = compute_lgl_rule(order);
    const int modes = order - 1;

    b.compact_mass_ = compact_mass_matrix(modes);
    std::vector<detail::EigenPair> pairs;
    detail::solve_parity_block(b.compact_mass_, 0, pairs);
    detail::solve_parity_block(b.compact_mass_, 1, pairs);
    std::stable_sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& c) { return a.lambda < c.lambda; });

    b.eigenvalues_.resize(modes);
    b.eigenvectors_.resize(modes, modes);
    for (int k = 0; k < modes; ++k)
    {
        Vector v = pairs[k].vector / pairs[k].vector.norm();
        // sign convention: first nonzero entry positive
        const auto first = std::find_if(v.begin(), v.end(), [](double x) { return x != 0.0; });
        if (first != v.end() && *first < 0.0)
            v = -v;
        if (!(pairs[k].lambda > 0.0))
            throw NumericalError("compact mass matrix eigenvalue is not positive");
        b.eigenvalues_[k]     = pairs[k].lambda;
        b.eigenvectors_.col(k) = v;
    }

    b.psi_values_ = b.evaluate(b.rule_.nodes, 0);
    b.psi_values_.row(0).setZero();
    b.psi_values_.row(order).setZero();
    b.psi_derivs_ = b.evaluate(b.rule_.nodes, 1);

    b.interior_interp_ = Eigen::PartialPivLU<Matrix>(b.psi_values_.middleRows(1, modes));
    b.interior_projection_            = Matrix::Zero(modes, order + 1);
    b.interior_projection_.middleCols(1, modes) = b.interior_interp_.inverse();

    // Discrete Legendre transform a_n = sum_m w_m L_n(x_m) u_m / gamma_n (gamma_N = 2/N on LGL),
    // then <L_n, psi_j> = 2/(2n+1) * (c_n q_nj - c_{n-2} q_{n-2,j}).
    const Matrix legendre = legendre_table(b.rule_.nodes, order);
    Matrix       analysis(order + 1, order + 1);
    for (int n = 0; n <= order; ++n)
    {
        const double gamma = n < order ? 2.0 / (2.0 * n + 1.0) : 2.0 / order;
        for (int m = 0; m <= order; ++m)
            analysis(n, m) = b.rule_.weights[m] * legendre(m, n) / gamma;
    }
    Matrix moments = Matrix::Zero(modes, order + 1);
    for (int j = 0; j < modes; ++j)
        for (int n = 0; n <= order; ++n)
        {
            double g = 0.0;
            if (n <= order - 2)
                g += compact_scale(n) * b.eigenvectors_(n, j);
            if (n >= 2)
                g -= compact_scale(n - 2) * b.eigenvectors_(n - 2, j);
            moments(j, n) = 2.0 / (2.0 * n + 1.0) * g;
        }
    b.interpolant_moments_ = moments * analysis;
    return b;
}

namespace detail
{
inline void require_length(Eigen::Index got, Eigen::Index expected, const char* what)
{
    if (got != expected)
        throw DimensionError(std::string(what) + ": length " + std::to_string(got) + ", expected " +
                             std::to_string(expected));
}
} // namespace detail

/// Nodal values sum_k coeffs_k psi_k(x_j) (or psi_k') at all N+1 LGL nodes.
inline Vector forward_transform(const Basis1D& basis, const Vector& coeffs, bool derivative = false)
{
    detail::require_length(coeffs.size(), basis.modes(), "forward_transform");
    return (derivative ? basis.psi_derivs() : basis.psi_values()) * coeffs;
}

/// Coefficients of the V_N interpolant of samples at the N-1 interior LGL nodes.
inline Vector backward_transform(const Basis1D& basis, const Vector& interior_values)
{
    detail::require_length(interior_values.size(), basis.modes(), "backward_transform");
    return basis.interior_interp().solve(interior_values);
}

/// LGL quadrature sum_m w_m u(x_m) psi_j(x_m); exact when u psi_j has degree <= 2N-1.
inline Vector inner_products(const Basis1D& basis, const Vector& nodal_values)
{
    detail::require_length(nodal_values.size(), basis.order() + 1, "inner_products");
    return basis.psi_values().transpose() * nodal_values.cwiseProduct(basis.rule().weights);
}

/// Derivative pairing sum_m w_m u(x_m) psi_j'(x_m).
inline Vector derivative_inner_products(const Basis1D& basis, const Vector& nodal_values)
{
    detail::require_length(nodal_values.size(), basis.order() + 1, "derivative_inner_products");
    return basis.psi_derivs().transpose() * nodal_values.cwiseProduct(basis.rule().weights);
}

/// Exact moments <I_N u, psi_j> of the full LGL interpolant of the nodal values.
inline Vector interpolant_inner_products(const Basis1D& basis, const Vector& nodal_values)
{
    detail::require_length(nodal_values.size(), basis.order() + 1, "interpolant_inner_products");
    return basis.interpolant_moments() * nodal_values;
}

} // namespace specgal

#endif // SPECGAL_BASIS_HPP
