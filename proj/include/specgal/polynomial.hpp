#ifndef SPECGAL_POLYNOMIAL_HPP
#define SPECGAL_POLYNOMIAL_HPP

#include "specgal/tensor.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace specgal
{

/// Sparse polynomial in up to three variables. Coefficient fields are low-order
/// polynomials, so gradients, divergences and Laplacians are exact.
class Polynomial
{
public:
    struct Term
    {
        double             coef;
        std::array<int, 3> powers;
    };

    Polynomial() = default;

    static Polynomial constant(double c)
    {
        Polynomial p;
        p.add_term(c, {0, 0, 0});
        return p;
    }

    /// The coordinate x_axis.
    static Polynomial coordinate(int axis)
    {
        Polynomial         p;
        std::array<int, 3> pw{0, 0, 0};
        pw[axis] = 1;
        p.add_term(1.0, pw);
        return p;
    }

    void add_term(double coef, std::array<int, 3> powers)
    {
        if (coef == 0.0)
            return;
        for (auto& t : terms_)
            if (t.powers == powers)
            {
                t.coef += coef;
                prune();
                return;
            }
        terms_.push_back({coef, powers});
    }

    [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
    [[nodiscard]] bool                     is_zero() const { return terms_.empty(); }

    [[nodiscard]] int degree() const
    {
        int d = 0;
        for (const auto& t : terms_)
            d = std::max(d, t.powers[0] + t.powers[1] + t.powers[2]);
        return d;
    }

    double operator()(const Point& x) const
    {
        double s = 0.0;
        for (const auto& t : terms_)
        {
            double v = t.coef;
            for (int a = 0; a < 3; ++a)
                for (int k = 0; k < t.powers[a]; ++k)
                    v *= x[a];
            s += v;
        }
        return s;
    }

    [[nodiscard]] Polynomial derivative(int axis) const
    {
        Polynomial d;
        for (const auto& t : terms_)
            if (t.powers[axis] > 0)
            {
                auto pw = t.powers;
                --pw[axis];
                d.add_term(t.coef * t.powers[axis], pw);
            }
        return d;
    }

    [[nodiscard]] Polynomial laplacian(int dim) const
    {
        Polynomial l;
        for (int a = 0; a < dim; ++a)
            l += derivative(a).derivative(a);
        return l;
    }

    Polynomial& operator+=(const Polynomial& other)
    {
        for (const auto& t : other.terms_)
            add_term(t.coef, t.powers);
        return *this;
    }

    Polynomial& operator*=(double s)
    {
        for (auto& t : terms_)
            t.coef *= s;
        prune();
        return *this;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        Polynomial out;
        for (const auto& s : a.terms_)
            for (const auto& t : b.terms_)
                out.add_term(s.coef * t.coef,
                             {s.powers[0] + t.powers[0], s.powers[1] + t.powers[1], s.powers[2] + t.powers[2]});
        return out;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, Polynomial b) { return a += (b *= -1.0); }
    friend Polynomial operator*(double s, Polynomial p) { return p *= s; }
    friend Polynomial operator+(Polynomial a, double c) { return a += constant(c); }
    friend Polynomial operator+(double c, Polynomial a) { return a += constant(c); }

private:
    void prune()
    {
        std::erase_if(terms_, [](const Term& t) { return t.coef == 0.0; });
    }

    std::vector<Term> terms_;
};

} // namespace specgal

#endif // SPECGAL_POLYNOMIAL_HPP
