#ifndef SPECGAL_DENSE_HPP
#define SPECGAL_DENSE_HPP

// Dense materialization of the matrix-free blocks, for diagnostics and small-N studies.

#include "specgal/cdr_operator.hpp"
#include "specgal/errors.hpp"
#include "specgal/fast_solver.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <complex>
#include <string>
#include <vector>

namespace specgal
{

enum class Block
{
    stiffness,
    stiffness_transpose,
    mass,
    saddle,
    preconditioner,
};

/// Largest (N-1)^d for which dense assembly is allowed.
inline constexpr Eigen::Index dense_mode_limit = 4096;

namespace detail
{
inline void check_dense_size(Eigen::Index modes)
{
    if (modes > dense_mode_limit)
        throw SizeError("dense assembly refused: " + std::to_string(modes) + " modes exceeds limit " +
                        std::to_string(dense_mode_limit));
}

template <typename Apply>
Matrix columns_of(Eigen::Index n, Apply&& apply)
{
    Matrix out(n, n);
    Vector e = Vector::Zero(n);
    for (Eigen::Index j = 0; j < n; ++j)
    {
        e[j]       = 1.0;
        out.col(j) = apply(e);
        e[j]       = 0.0;
    }
    return out;
}
} // namespace detail

/// The requested block of the fast constant-coefficient system (mass, stiffness or the full P).
inline Matrix assemble_dense(const FastSolver& solver, Block which)
{
    const auto n = ipow(solver.modes(), solver.dim());
    detail::check_dense_size(n);
    switch (which)
    {
    case Block::mass: return solver.lambda_tensor().asDiagonal();
    case Block::stiffness:
    case Block::stiffness_transpose: return solver.sigma_tensor().asDiagonal();
    case Block::saddle:
    case Block::preconditioner:
        return detail::columns_of(2 * n, [&](const Vector& e) {
            return solver.apply_forward(SaddleVector::from_stacked(solver.dim(), solver.modes(), e)).stacked();
        });
    }
    throw InvalidArgument("unknown block");
}

/// Materializes a block by applying the matrix-free operator to every unit vector.
/// Block::preconditioner uses the midpoint constant coefficients of the operator's field.
inline Matrix assemble_dense(const CdrOperator& op, Block which)
{
    const int  dim    = op.dim();
    const int  extent = op.modes();
    const auto n      = ipow(extent, dim);
    detail::check_dense_size(n);

    auto modal = [&](auto&& f) {
        return detail::columns_of(n, [&](const Vector& e) { return f(ModalTensor(dim, extent, e)).values(); });
    };
    switch (which)
    {
    case Block::stiffness: return modal([&](const ModalTensor& x) { return op.apply_stiffness(x); });
    case Block::stiffness_transpose:
        return modal([&](const ModalTensor& x) { return op.apply_stiffness_transpose(x); });
    case Block::mass: return modal([&](const ModalTensor& x) { return op.apply_mass(x); });
    case Block::saddle:
        return detail::columns_of(2 * n, [&](const Vector& e) {
            return op.apply_saddle(SaddleVector::from_stacked(dim, extent, e)).stacked();
        });
    case Block::preconditioner:
    {
        const auto mid = coefficient_midpoint(op.coefficients(), op.basis().rule().nodes);
        return assemble_dense(FastSolver(op.basis(), dim, mid.alpha_bar, mid.gamma_bar, op.rho()), Block::saddle);
    }
    }
    throw InvalidArgument("unknown block");
}

/// Dense P^{-1} A.
inline Matrix assemble_preconditioned(const CdrOperator& op, const FastSolver& prec)
{
    const int  dim    = op.dim();
    const int  extent = op.modes();
    const auto n      = ipow(extent, dim);
    detail::check_dense_size(n);
    return detail::columns_of(2 * n, [&](const Vector& e) {
        return prec.apply_inverse(op.apply_saddle(SaddleVector::from_stacked(dim, extent, e))).stacked();
    });
}

/// Eigenvalues of P^{-1} A sorted by real part, then imaginary part.
inline std::vector<std::complex<double>> preconditioned_spectrum(const CdrOperator& op, const FastSolver& prec)
{
    const Matrix                     dense = assemble_preconditioned(op, prec);
    Eigen::EigenSolver<Matrix>       solver(dense, false);
    if (solver.info() != Eigen::Success)
        throw NumericalError("eigenvalue computation of the preconditioned operator failed");
    const Eigen::VectorXcd           ev = solver.eigenvalues();
    std::vector<std::complex<double>> out(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return out;
}

} // namespace specgal

#endif // SPECGAL_DENSE_HPP
