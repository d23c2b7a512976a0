#ifndef SPECGAL_COEFFICIENTS_HPP
#define SPECGAL_COEFFICIENTS_HPP

#include "specgal/errors.hpp"
#include "specgal/polynomial.hpp"
#include "specgal/tensor.hpp"

#include <array>
#include <cstdio>
#include <string>

namespace specgal
{

/// Diffusion alpha, convection beta and reaction gamma of
///   -div(alpha grad y + beta y) + gamma y.
/// Components of beta beyond `dim` are ignored.
struct CoefficientField
{
    int                       dim = 2;
    Polynomial                alpha;
    std::array<Polynomial, 3> beta;
    Polynomial                gamma;

    [[nodiscard]] Polynomial divergence_beta() const
    {
        Polynomial div;
        for (int a = 0; a < dim; ++a)
            div += beta[a].derivative(a);
        return div;
    }

    [[nodiscard]] bool has_convection() const
    {
        for (int a = 0; a < dim; ++a)
            if (!beta[a].is_zero())
                return true;
        return false;
    }

    static CoefficientField constant(int dim, double alpha, double gamma)
    {
        check_dim(dim);
        CoefficientField c;
        c.dim   = dim;
        c.alpha = Polynomial::constant(alpha);
        c.gamma = Polynomial::constant(gamma);
        return c;
    }
};

/// Checks alpha > 0, gamma > 0 and -div(beta)/2 + gamma >= 0 at every tensor-grid node.
inline void check_well_posed(const CoefficientField& field, const Vector& nodes)
{
    check_dim(field.dim);
    const Polynomial div = field.divergence_beta();
    for_each_grid_point(nodes, field.dim, [&](Eigen::Index, const Point& x) {
        const double a = field.alpha(x);
        const double g = field.gamma(x);
        const double w = -0.5 * div(x) + g;
        if (!(a > 0.0) || !(g > 0.0) || !(w >= 0.0))
        {
            char buf[160];
            std::snprintf(buf, sizeof buf, "coefficients violate positivity at (%g, %g, %g): alpha=%g gamma=%g "
                          "-div(beta)/2+gamma=%g", x[0], x[1], x[2], a, g, w);
            throw InvalidCoefficient(buf);
        }
    });
}

/// Samples of a polynomial on the tensor grid, axis-0 fastest.
inline Vector sample_on_grid(const Polynomial& p, const Vector& nodes, int dim)
{
    Vector out(ipow(nodes.size(), dim));
    for_each_grid_point(nodes, dim, [&](Eigen::Index i, const Point& x) { out[i] = p(x); });
    return out;
}

} // namespace specgal

#endif // SPECGAL_COEFFICIENTS_HPP
