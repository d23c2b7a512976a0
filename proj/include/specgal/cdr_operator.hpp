#ifndef SPECGAL_CDR_OPERATOR_HPP
#define SPECGAL_CDR_OPERATOR_HPP

#include "specgal/basis.hpp"
#include "specgal/coefficients.hpp"
#include "specgal/errors.hpp"
#include "specgal/tensor.hpp"

#include <array>
#include <memory>
#include <string>

namespace specgal
{

/// Matrix-free blocks of the discrete optimality system
///
///     [ M   rho B^T ] [y]   [Y]
///     [ B     -M    ] [u] = [F]
///
/// where M is the (diagonal) mass matrix and B_ij = a(psi_j, psi_i) is the
/// convection-diffusion-reaction form. Every product goes through 1D transforms applied
/// axis by axis, so a matvec costs O(N^{d+1}).
///
/// Integration rule for a(u, psi_j): along the axis that carries a test-function
/// derivative the integral is LGL quadrature against psi_j'; along every other axis
/// the integrand vanishes on the faces, is interpolated into V_N from the interior nodes
/// and integrated exactly with <psi_k, psi_j> = lambda_j delta_kj. With constant
/// alpha, gamma and no convection this reproduces the diagonal fast-solver blocks exactly.
class CdrOperator
{
public:
    CdrOperator(std::shared_ptr<const Basis1D> basis, CoefficientField coefficients, double rho)
        : basis_{std::move(basis)}, coefficients_{std::move(coefficients)}, rho_{rho}
    {
        if (!basis_)
            throw InvalidArgument("CdrOperator needs a basis");
        if (!(rho_ > 0.0))
            throw InvalidArgument("Tikhonov parameter rho must be positive");
        const int dim = coefficients_.dim;
        check_dim(dim);
        const Vector& nodes = basis_->rule().nodes;
        check_well_posed(coefficients_, nodes);

        alpha_ = sample_on_grid(coefficients_.alpha, nodes, dim);
        gamma_ = sample_on_grid(coefficients_.gamma, nodes, dim);
        for (int a = 0; a < dim; ++a)
        {
            has_beta_[a] = !coefficients_.beta[a].is_zero();
            if (has_beta_[a])
                beta_[a] = sample_on_grid(coefficients_.beta[a], nodes, dim);
        }
        lambda_ = outer_power(basis_->eigenvalues(), dim);

        values_       = basis_->psi_values();
        derivs_       = basis_->psi_derivs();
        exact_test_   = basis_->eigenvalues().asDiagonal() * basis_->interior_projection();
        deriv_test_   = derivs_.transpose() * basis_->rule().weights.asDiagonal();
        values_t_     = values_.transpose();
        derivs_t_     = derivs_.transpose();
        exact_test_t_ = exact_test_.transpose();
        deriv_test_t_ = deriv_test_.transpose();
    }

    [[nodiscard]] int                     dim() const { return coefficients_.dim; }
    [[nodiscard]] int                     modes() const { return basis_->modes(); }
    [[nodiscard]] double                  rho() const { return rho_; }
    [[nodiscard]] const Basis1D&          basis() const { return *basis_; }
    [[nodiscard]] const auto&             shared_basis() const { return basis_; }
    [[nodiscard]] const CoefficientField& coefficients() const { return coefficients_; }
    /// lambda_i lambda_j [lambda_k]: the diagonal of the mass matrix.
    [[nodiscard]] const Vector&           lambda_tensor() const { return lambda_; }

    [[nodiscard]] ModalTensor zeros() const { return ModalTensor(dim(), modes()); }

    [[nodiscard]] ModalTensor apply_mass(const ModalTensor& x) const
    {
        check(x);
        return ModalTensor(dim(), modes(), lambda_.cwiseProduct(x.values()));
    }

    /// (B x)_j = a(u, psi_j) for u = sum_k x_k psi_k.
    [[nodiscard]] ModalTensor apply_stiffness(const ModalTensor& x) const
    {
        check(x);
        const int d = dim();
        const Vector u = sweep(all(&values_), x.values());
        Vector result = sweep(all(&exact_test_), gamma_.cwiseProduct(u));
        for (int a = 0; a < d; ++a)
        {
            Vector flux = alpha_.cwiseProduct(sweep(with_axis(&values_, &derivs_, a), x.values()));
            if (has_beta_[a])
                flux += beta_[a].cwiseProduct(u);
            result += sweep(with_axis(&exact_test_, &deriv_test_, a), flux);
        }
        return ModalTensor(d, modes(), std::move(result));
    }

    /// Exact algebraic transpose of apply_stiffness, i.e. (B^T z)_j = a(psi_j, v) under the same rule.
    [[nodiscard]] ModalTensor apply_stiffness_transpose(const ModalTensor& z) const
    {
        check(z);
        const int d = dim();
        Vector    nodal = gamma_.cwiseProduct(sweep(all(&exact_test_t_), z.values()));
        Vector    result = Vector::Zero(z.size());
        for (int a = 0; a < d; ++a)
        {
            const Vector w = sweep(with_axis(&exact_test_t_, &deriv_test_t_, a), z.values());
            result += sweep(with_axis(&values_t_, &derivs_t_, a), alpha_.cwiseProduct(w));
            if (has_beta_[a])
                nodal += beta_[a].cwiseProduct(w);
        }
        result += sweep(all(&values_t_), nodal);
        return ModalTensor(d, modes(), std::move(result));
    }

    /// (M y + rho B^T u, B y - M u).
    [[nodiscard]] SaddleVector apply_saddle(const SaddleVector& v) const
    {
        check(v.first);
        check(v.second);
        ModalTensor top = apply_stiffness_transpose(v.second);
        top.values()    = lambda_.cwiseProduct(v.first.values()) + rho_ * top.values();
        ModalTensor bottom = apply_stiffness(v.first);
        bottom.values() -= lambda_.cwiseProduct(v.second.values());
        return {std::move(top), std::move(bottom)};
    }

private:
    using Ops = std::array<const Matrix*, 3>;

    struct OpList
    {
        Ops ops;
        int dim;
        operator std::span<const Matrix* const>() const { return {ops.data(), static_cast<size_t>(dim)}; }
    };

    [[nodiscard]] OpList all(const Matrix* m) const { return {{m, m, m}, dim()}; }
    [[nodiscard]] OpList with_axis(const Matrix* other, const Matrix* special, int axis) const
    {
        OpList l{{other, other, other}, dim()};
        l.ops[axis] = special;
        return l;
    }

    void check(const ModalTensor& x) const
    {
        if (x.dim() != dim() || x.extent() != modes())
            throw DimensionError("modal tensor (" + std::to_string(x.dim()) + "D, extent " +
                                 std::to_string(x.extent()) + ") does not match operator (" +
                                 std::to_string(dim()) + "D, extent " + std::to_string(modes()) + ")");
    }

    std::shared_ptr<const Basis1D> basis_;
    CoefficientField               coefficients_;
    double                         rho_;

    Vector                alpha_, gamma_, lambda_;
    std::array<Vector, 3> beta_;
    std::array<bool, 3>   has_beta_{false, false, false};

    // trial side (modal -> nodal) and test side (nodal -> modal) 1D factors
    Matrix values_, derivs_, exact_test_, deriv_test_;
    Matrix values_t_, derivs_t_, exact_test_t_, deriv_test_t_;
};

inline ModalTensor apply_mass(const CdrOperator& op, const ModalTensor& x) { return op.apply_mass(x); }
inline ModalTensor apply_stiffness(const CdrOperator& op, const ModalTensor& x) { return op.apply_stiffness(x); }
inline ModalTensor apply_stiffness_transpose(const CdrOperator& op, const ModalTensor& x)
{
    return op.apply_stiffness_transpose(x);
}
inline SaddleVector apply_saddle(const CdrOperator& op, const SaddleVector& v) { return op.apply_saddle(v); }

} // namespace specgal

#endif // SPECGAL_CDR_OPERATOR_HPP
