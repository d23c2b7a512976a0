#ifndef SPECGAL_PROBLEMS_HPP
#define SPECGAL_PROBLEMS_HPP

#include "specgal/basis.hpp"
#include "specgal/cdr_operator.hpp"
#include "specgal/coefficients.hpp"
#include "specgal/errors.hpp"
#include "specgal/lgl.hpp"
#include "specgal/polynomial.hpp"
#include "specgal/tensor.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

namespace specgal
{

/// Benchmark problems on [-1, 1]^d. Scalar coefficient expressions written with the
/// position vector are read coordinate-wise: "10 + x" is 10 + sum_i x_i and
/// "10 + x^2" is 10 + sum_i x_i^2.
///
///   case_i   : alpha = 1, beta = 0, gamma = 10^0.8 + x
///   c1       : alpha = 10 + x_1, beta = (10 + x_1, 0, 0), gamma = 10 + x
///   c2       : alpha = 10 + x^2, beta = (10 + x_1^2, 10 + x_2^2, 0), gamma = 10 + x
///   constant : alpha = 1, beta = 0, gamma = 10^0.8
enum class CaseStudy
{
    case_i,
    c1,
    c2,
    constant,
};

inline std::string_view to_string(CaseStudy id)
{
    switch (id)
    {
    case CaseStudy::case_i: return "case1";
    case CaseStudy::c1: return "c1";
    case CaseStudy::c2: return "c2";
    case CaseStudy::constant: return "const";
    }
    return "?";
}

inline CaseStudy parse_case_study(std::string_view name)
{
    if (name == "case1" || name == "case_i" || name == "I")
        return CaseStudy::case_i;
    if (name == "c1" || name == "C1")
        return CaseStudy::c1;
    if (name == "c2" || name == "C2")
        return CaseStudy::c2;
    if (name == "const" || name == "constant")
        return CaseStudy::constant;
    throw InvalidArgument("unknown case study '" + std::string(name) + "'");
}

/// Closed-form optimal pair used to measure discretization error.
struct ExactSolution
{
    std::function<double(const Point&)> state;
    std::function<double(const Point&)> control;
};

/// Distributed control problem with homogeneous Dirichlet data and its manufactured data
/// sampled on the (N+1)^d LGL grid.
struct ControlProblem
{
    CaseStudy                    id = CaseStudy::case_i;
    int                          dim   = 2;
    int                          order = 0;
    double                       rho   = 1e-2;
    CoefficientField             coefficients;
    LglRule                      grid;
    Vector                       source_nodes; ///< f
    Vector                       target_nodes; ///< y_d
    std::optional<ExactSolution> exact;
};

namespace detail
{
// Value, gradient and Laplacian of a scalar field at one point.
struct Jet
{
    double                v = 0.0;
    std::array<double, 3> grad{0.0, 0.0, 0.0};
    double                lap = 0.0;
};

inline Jet sine_product(const Point& x, int dim)
{
    constexpr double pi = std::numbers::pi;
    std::array<double, 3> s{1.0, 1.0, 1.0}, c{0.0, 0.0, 0.0};
    for (int a = 0; a < dim; ++a)
    {
        s[a] = std::sin(pi * x[a]);
        c[a] = std::cos(pi * x[a]);
    }
    Jet j;
    j.v = s[0] * s[1] * s[2];
    for (int a = 0; a < dim; ++a)
    {
        double g = pi * c[a];
        for (int b = 0; b < dim; ++b)
            if (b != a)
                g *= s[b];
        j.grad[a] = g;
    }
    j.lap = -dim * pi * pi * j.v;
    return j;
}

// (y * g) for a smooth y and a polynomial g.
inline Jet times_polynomial(const Jet& y, const Polynomial& g, const Point& x, int dim)
{
    const double gv = g(x);
    Jet          out;
    out.v   = y.v * gv;
    out.lap = gv * y.lap + y.v * g.laplacian(dim)(x);
    for (int a = 0; a < dim; ++a)
    {
        const double ga = g.derivative(a)(x);
        out.grad[a]     = gv * y.grad[a] + y.v * ga;
        out.lap += 2.0 * y.grad[a] * ga;
    }
    return out;
}

// L(w) = -div(alpha grad w) - div(beta w) + gamma w
inline double state_operator(const CoefficientField& c, const Jet& w, const Point& x)
{
    double r = -c.alpha(x) * w.lap + (c.gamma(x) - c.divergence_beta()(x)) * w.v;
    for (int a = 0; a < c.dim; ++a)
        r -= (c.alpha.derivative(a)(x) + c.beta[a](x)) * w.grad[a];
    return r;
}

// Formal adjoint: -div(alpha grad w) + beta . grad w + gamma w
inline double adjoint_operator(const CoefficientField& c, const Jet& w, const Point& x)
{
    double r = -c.alpha(x) * w.lap + c.gamma(x) * w.v;
    for (int a = 0; a < c.dim; ++a)
        r += (c.beta[a](x) - c.alpha.derivative(a)(x)) * w.grad[a];
    return r;
}

inline Polynomial coordinate_sum(int dim, int power)
{
    Polynomial p;
    for (int a = 0; a < dim; ++a)
    {
        std::array<int, 3> pw{0, 0, 0};
        pw[a] = power;
        p.add_term(1.0, pw);
    }
    return p;
}

inline Polynomial square(int axis)
{
    Polynomial         p;
    std::array<int, 3> pw{0, 0, 0};
    pw[axis] = 2;
    p.add_term(1.0, pw);
    return p;
}
} // namespace detail

/// Coefficient field of a benchmark case in `dim` dimensions.
inline CoefficientField case_coefficients(CaseStudy id, int dim)
{
    check_dim(dim);
    const double     case_i_reaction = std::pow(10.0, 0.8);
    CoefficientField c;
    c.dim = dim;
    switch (id)
    {
    case CaseStudy::case_i:
        c.alpha = Polynomial::constant(1.0);
        c.gamma = case_i_reaction + detail::coordinate_sum(dim, 1);
        break;
    case CaseStudy::c1:
        c.alpha   = 10.0 + Polynomial::coordinate(0);
        c.beta[0] = 10.0 + Polynomial::coordinate(0);
        c.gamma   = 10.0 + detail::coordinate_sum(dim, 1);
        break;
    case CaseStudy::c2:
        c.alpha = 10.0 + detail::coordinate_sum(dim, 2);
        for (int a = 0; a < std::min(dim, 2); ++a)
            c.beta[a] = 10.0 + detail::square(a);
        c.gamma = 10.0 + detail::coordinate_sum(dim, 1);
        break;
    case CaseStudy::constant:
        c.alpha = Polynomial::constant(1.0);
        c.gamma = Polynomial::constant(case_i_reaction);
        break;
    default: throw InvalidArgument("unknown case study");
    }
    return c;
}

/// Builds a benchmark problem whose optimal pair is y* = prod_i sin(pi x_i) and
/// u* = y* (d pi^2 alpha - div beta + gamma). The data are back-derived analytically:
/// f = L(y*) - u* and y_d = y* + rho L*(u*), so p* = rho u* solves the adjoint equation.
inline ControlProblem make_case_study(CaseStudy id, int dim, int order, double rho)
{
    check_dim(dim);
    if (order < 4)
        throw InvalidArgument("case studies need order N >= 4, got " + std::to_string(order));
    if (!(rho > 0.0))
        throw InvalidArgument("Tikhonov parameter rho must be positive");

    ControlProblem p;
    p.id           = id;
    p.dim          = dim;
    p.order        = order;
    p.rho          = rho;
    p.coefficients = case_coefficients(id, dim);
    p.grid         = compute_lgl_rule(order);
    check_well_posed(p.coefficients, p.grid.nodes);

    const CoefficientField& c = p.coefficients;
    const Polynomial weight = (dim * std::numbers::pi * std::numbers::pi) * c.alpha - c.divergence_beta() + c.gamma;

    const auto n = ipow(p.grid.nodes.size(), dim);
    p.source_nodes.resize(n);
    p.target_nodes.resize(n);
    for_each_grid_point(p.grid.nodes, dim, [&](Eigen::Index i, const Point& x) {
        const detail::Jet y = detail::sine_product(x, dim);
        const detail::Jet u = detail::times_polynomial(y, weight, x, dim);
        p.source_nodes[i]   = detail::state_operator(c, y, x) - u.v;
        p.target_nodes[i]   = y.v + rho * detail::adjoint_operator(c, u, x);
    });

    p.exact = ExactSolution{
        [dim](const Point& x) { return detail::sine_product(x, dim).v; },
        [dim, weight](const Point& x) { return detail::sine_product(x, dim).v * weight(x); },
    };
    return p;
}

/// Right-hand side blocks (Y, F) with Y_k = <I_N y_d, psi_k>, F_k = <I_N f, psi_k>.
inline SaddleVector assemble_rhs(const ControlProblem& problem, const Basis1D& basis)
{
    if (basis.order() != problem.order)
        throw DimensionError("assemble_rhs: basis order differs from the problem grid");
    const Matrix*                 m = &basis.interpolant_moments();
    const std::array<const Matrix*, 3> ops{m, m, m};
    const std::span<const Matrix* const> view(ops.data(), problem.dim);
    return {ModalTensor(problem.dim, basis.modes(), sweep(view, problem.target_nodes)),
            ModalTensor(problem.dim, basis.modes(), sweep(view, problem.source_nodes))};
}

/// Values of a function on the tensor grid built from 1D nodes.
inline Vector sample_function(const std::function<double(const Point&)>& f, const Vector& nodes, int dim)
{
    Vector out(ipow(nodes.size(), dim));
    for_each_grid_point(nodes, dim, [&](Eigen::Index i, const Point& x) { out[i] = f(x); });
    return out;
}

/// Modal coefficients of the V_N interpolant of f (interior LGL nodes in every direction).
inline ModalTensor interpolate(const Basis1D& basis, int dim, const std::function<double(const Point&)>& f)
{
    const Matrix*                      m = &basis.interior_projection();
    const std::array<const Matrix*, 3> ops{m, m, m};
    return ModalTensor(dim, basis.modes(),
                       sweep(std::span<const Matrix* const>(ops.data(), dim), sample_function(f, basis.rule().nodes, dim)));
}

/// ||u_N - exact||_{L2([-1,1]^d)} by LGL quadrature with N+16 points per direction.
inline double l2_error(const Basis1D& basis, const ModalTensor& coeffs, const std::function<double(const Point&)>& exact)
{
    if (coeffs.extent() != basis.modes())
        throw DimensionError("l2_error: coefficient extent differs from basis");
    const int     dim   = coeffs.dim();
    const LglRule rule  = compute_lgl_rule(basis.order() + 15);
    const Matrix  table = basis.evaluate(rule.nodes);

    const std::array<const Matrix*, 3> ops{&table, &table, &table};
    const Vector approx  = sweep(std::span<const Matrix* const>(ops.data(), dim), coeffs.values());
    const Vector weights = outer_power(rule.weights, dim);
    const Vector target  = sample_function(exact, rule.nodes, dim);
    return std::sqrt(weights.dot((approx - target).cwiseAbs2()));
}

/// ||A x* - b|| / ||b|| with x* the V_N interpolant of the exact optimal pair.
inline double consistency_residual(const ControlProblem& problem, const CdrOperator& op)
{
    if (!problem.exact)
        throw InvalidArgument("consistency_residual needs a problem with an exact solution");
    if (op.dim() != problem.dim || op.basis().order() != problem.order)
        throw DimensionError("consistency_residual: operator does not match problem");
    const Basis1D&     basis = op.basis();
    const SaddleVector x{interpolate(basis, problem.dim, problem.exact->state),
                         interpolate(basis, problem.dim, problem.exact->control)};
    const SaddleVector b  = assemble_rhs(problem, basis);
    const SaddleVector ax = op.apply_saddle(x);
    return (ax.stacked() - b.stacked()).norm() / b.stacked().norm();
}

} // namespace specgal

#endif // SPECGAL_PROBLEMS_HPP
