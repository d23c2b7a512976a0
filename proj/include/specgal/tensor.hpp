#ifndef SPECGAL_TENSOR_HPP
#define SPECGAL_TENSOR_HPP

#include "specgal/errors.hpp"
#include "specgal/lgl.hpp"

#include <Eigen/Core>

#include <array>
#include <cstddef>
#include <span>
#include <string>

namespace specgal
{

/// Multi-index point in up to three dimensions; unused trailing components are ignored.
using Point = std::array<double, 3>;

inline void check_dim(int dim)
{
    if (dim < 1 || dim > 3)
        throw InvalidArgument("dimension must be 1, 2 or 3, got " + std::to_string(dim));
}

inline Eigen::Index ipow(Eigen::Index base, int exponent)
{
    Eigen::Index r = 1;
    for (int i = 0; i < exponent; ++i)
        r *= base;
    return r;
}

/// Coefficients of a field in the tensor-product psi basis. Storage is axis-0 fastest,
/// i.e. entry (i0, i1, i2) lives at i0 + n * (i1 + n * i2).
class ModalTensor
{
public:
    ModalTensor() = default;
    ModalTensor(int dim, int extent) : dim_{dim}, extent_{extent}, values_{Vector::Zero(ipow(extent, dim))}
    {
        check_dim(dim);
    }
    ModalTensor(int dim, int extent, Vector values) : dim_{dim}, extent_{extent}, values_{std::move(values)}
    {
        check_dim(dim);
        if (values_.size() != ipow(extent, dim))
            throw DimensionError("modal tensor data has " + std::to_string(values_.size()) + " entries, expected " +
                                 std::to_string(ipow(extent, dim)));
    }

    [[nodiscard]] int          dim() const { return dim_; }
    [[nodiscard]] int          extent() const { return extent_; }
    [[nodiscard]] Eigen::Index size() const { return values_.size(); }

    [[nodiscard]] const Vector& values() const { return values_; }
    Vector&                     values() { return values_; }

    double& operator()(int i, int j = 0, int k = 0) { return values_[i + extent_ * (j + extent_ * k)]; }
    double  operator()(int i, int j = 0, int k = 0) const { return values_[i + extent_ * (j + extent_ * k)]; }

    [[nodiscard]] bool same_shape(const ModalTensor& other) const
    {
        return dim_ == other.dim_ && extent_ == other.extent_;
    }

private:
    int    dim_    = 1;
    int    extent_ = 0;
    Vector values_;
};

inline void require_same_shape(const ModalTensor& a, const ModalTensor& b)
{
    if (!a.same_shape(b))
        throw DimensionError("modal tensor shapes differ: (" + std::to_string(a.dim()) + "D, " +
                             std::to_string(a.extent()) + ") vs (" + std::to_string(b.dim()) + "D, " +
                             std::to_string(b.extent()) + ")");
}

/// Paired state/control blocks (y, u), or the right-hand side blocks (Y, F).
struct SaddleVector
{
    ModalTensor first;
    ModalTensor second;

    SaddleVector() = default;
    SaddleVector(ModalTensor y, ModalTensor u) : first{std::move(y)}, second{std::move(u)}
    {
        require_same_shape(first, second);
    }

    static SaddleVector zeros(int dim, int extent) { return {ModalTensor(dim, extent), ModalTensor(dim, extent)}; }

    /// Concatenation [first; second].
    [[nodiscard]] Vector stacked() const
    {
        Vector v(first.size() + second.size());
        v << first.values(), second.values();
        return v;
    }

    static SaddleVector from_stacked(int dim, int extent, const Vector& v)
    {
        const auto n = ipow(extent, dim);
        if (v.size() != 2 * n)
            throw DimensionError("stacked saddle vector has wrong length");
        return {ModalTensor(dim, extent, v.head(n)), ModalTensor(dim, extent, v.tail(n))};
    }
};

namespace detail
{
// Applies op along `axis` of a tensor with the given extents (axis-0 fastest).
// extents[axis] must equal op.cols(); the output has extents[axis] = op.rows().
inline void contract_axis(const Matrix& op, const double* in, const std::array<Eigen::Index, 3>& extents, int dim,
                          int axis, double* out)
{
    Eigen::Index pre = 1, post = 1;
    for (int a = 0; a < axis; ++a)
        pre *= extents[a];
    for (int a = axis + 1; a < dim; ++a)
        post *= extents[a];
    const auto n = op.cols();
    const auto m = op.rows();

    using ConstMap = Eigen::Map<const Matrix>;
    using Map      = Eigen::Map<Matrix>;
    if (pre == 1)
    {
        Map(out, m, post).noalias() = op * ConstMap(in, n, post);
        return;
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (post > 1)
#endif
    for (Eigen::Index p = 0; p < post; ++p)
        Map(out + p * pre * m, pre, m).noalias() = ConstMap(in + p * pre * n, pre, n) * op.transpose();
}
} // namespace detail

/// Sum factorization: applies ops[a] along axis a for every a < dim, never forming the
/// Kronecker product. Input extent along axis a is ops[a]->cols().
inline Vector sweep(std::span<const Matrix* const> ops, const Vector& in)
{
    const int dim = static_cast<int>(ops.size());
    check_dim(dim);
    std::array<Eigen::Index, 3> extents{1, 1, 1};
    Eigen::Index                expected = 1;
    for (int a = 0; a < dim; ++a)
    {
        extents[a] = ops[a]->cols();
        expected *= extents[a];
    }
    if (in.size() != expected)
        throw DimensionError("tensor sweep input has " + std::to_string(in.size()) + " entries, expected " +
                             std::to_string(expected));

    Vector current = in;
    Vector next;
    for (int a = 0; a < dim; ++a)
    {
        Eigen::Index out_size = current.size() / extents[a] * ops[a]->rows();
        next.resize(out_size);
        detail::contract_axis(*ops[a], current.data(), extents, dim, a, next.data());
        extents[a] = ops[a]->rows();
        current.swap(next);
    }
    return current;
}

inline Vector sweep(std::initializer_list<const Matrix*> ops, const Vector& in)
{
    return sweep(std::span<const Matrix* const>(ops.begin(), ops.size()), in);
}

/// Tensor whose entry at (i0, i1, i2) is values[i0] * values[i1] * values[i2].
inline Vector outer_power(const Vector& values, int dim)
{
    check_dim(dim);
    const auto n   = values.size();
    Vector     out = Vector::Ones(ipow(n, dim));
    for (Eigen::Index flat = 0; flat < out.size(); ++flat)
    {
        auto rest = flat;
        for (int a = 0; a < dim; ++a)
        {
            out[flat] *= values[rest % n];
            rest /= n;
        }
    }
    return out;
}

/// Calls f(flat_index, point) for every node of the tensor grid built from 1D nodes.
template <typename F>
void for_each_grid_point(const Vector& nodes, int dim, F&& f)
{
    const auto n     = nodes.size();
    const auto total = ipow(n, dim);
    for (Eigen::Index flat = 0; flat < total; ++flat)
    {
        Point p{0.0, 0.0, 0.0};
        auto  rest = flat;
        for (int a = 0; a < dim; ++a)
        {
            p[a] = nodes[rest % n];
            rest /= n;
        }
        f(flat, p);
    }
}

} // namespace specgal

#endif // SPECGAL_TENSOR_HPP
