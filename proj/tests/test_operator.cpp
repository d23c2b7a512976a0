#include "specgal/cdr_operator.hpp"
#include "specgal/dense.hpp"
#include "specgal/fast_solver.hpp"
#include "specgal/problems.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace specgal;

namespace
{
std::shared_ptr<const Basis1D> basis_of(int n)
{
    return std::make_shared<const Basis1D>(build_basis(n));
}

ModalTensor random_tensor(int dim, int extent, std::mt19937& rng)
{
    return ModalTensor(dim, extent, oracle::random_vector(ipow(extent, dim), rng));
}

// Dense saddle matrix [[M, rho B^T], [B, -M]] from the oracle blocks.
Matrix oracle_saddle(const Basis1D& basis, const CoefficientField& field, double rho)
{
    const Matrix b = oracle::DenseStiffness(basis, field).matrix();
    const Matrix m = outer_power(basis.eigenvalues(), field.dim).asDiagonal();
    const auto   n = b.rows();
    Matrix       a(2 * n, 2 * n);
    a << m, rho * b.transpose(), b, -m;
    return a;
}
} // namespace

TEST(Operator, MassIsDiagonalLambdaTensor)
{
    auto              basis = basis_of(8);
    const CdrOperator op(basis, CoefficientField::constant(2, 1.0, 1.0), 1e-2);
    EXPECT_EQ(op.apply_mass(op.zeros()).values().cwiseAbs().maxCoeff(), 0.0);

    ModalTensor e(2, 7);
    e(2, 5)             = 1.0;
    const ModalTensor r = apply_mass(op, e);
    const auto&       l = basis->eigenvalues();
    EXPECT_DOUBLE_EQ(r(2, 5), l[2] * l[5]);
    EXPECT_EQ(r.values().cwiseAbs().sum(), std::abs(r(2, 5)));

    // Gram matrix of tensor psi by an oversampled Gauss rule.
    const auto   g     = oracle::gauss_legendre(10);
    const Matrix v     = oracle::psi_table(*basis, g.nodes, 0);
    const Matrix gram1 = v.transpose() * g.weights.asDiagonal() * v;
    const Matrix gram  = oracle::kron(gram1, gram1);
    EXPECT_LT(oracle::relative_error(assemble_dense(op, Block::mass), gram), 1e-11);
}

TEST(Operator, OneDimensionalLaplacianPlusReaction)
{
    auto              basis = basis_of(12);
    const CdrOperator op(basis, CoefficientField::constant(1, 1.0, 2.0), 1.0);
    std::mt19937      rng(1);
    const ModalTensor x = random_tensor(1, 11, rng);
    const ModalTensor bx = op.apply_stiffness(x);
    for (int i = 0; i < 11; ++i)
        EXPECT_NEAR(bx(i), (1.0 + 2.0 * basis->eigenvalues()[i]) * x(i), 1e-13 * std::abs(x(i)) + 1e-15);
    // B - 2M is the pure diffusion block, which is the identity in this basis.
    const Vector diffusion = bx.values() - 2.0 * op.apply_mass(x).values();
    EXPECT_LT(oracle::relative_error(diffusion, x.values()), 1e-13);
}

TEST(Operator, ConstantCoefficientsGiveSigmaDiagonal)
{
    for (int dim : {1, 2, 3})
    {
        auto              basis = basis_of(9);
        const CdrOperator op(basis, CoefficientField::constant(dim, 1.7, 3.2), 1e-3);
        const FastSolver  prec(*basis, dim, 1.7, 3.2, 1e-3);
        // Entry (i, j) of B relative to sigma_i.
        Matrix err = assemble_dense(op, Block::stiffness);
        err.diagonal() -= prec.sigma_tensor();
        EXPECT_LT((prec.sigma_tensor().cwiseInverse().asDiagonal() * err).cwiseAbs().maxCoeff(), 1e-13) << dim;
        std::mt19937      rng(dim);
        const ModalTensor x = random_tensor(dim, 8, rng);
        EXPECT_LT(oracle::relative_error(op.apply_stiffness_transpose(x).values(), op.apply_stiffness(x).values()),
                  1e-13)
            << dim;
    }
}

TEST(Operator, ConstantConvectionMatchesExactGalerkinIntegrals)
{
    // With constant coefficients every integrand is within the exactness of the rule, so
    // the discrete B equals the exact Galerkin matrix computed by an independent Gauss rule.
    const int         n = 10;
    auto              basis = basis_of(n);
    CoefficientField  c     = CoefficientField::constant(2, 2.5, 4.0);
    c.beta[0]               = Polynomial::constant(1.5);
    c.beta[1]               = Polynomial::constant(-0.75);
    const CdrOperator op(basis, c, 1e-2);

    const auto   g  = oracle::gauss_legendre(n + 4);
    const Matrix v  = oracle::psi_table(*basis, g.nodes, 0);
    const Matrix dv = oracle::psi_table(*basis, g.nodes, 1);
    const Matrix W  = g.weights.asDiagonal();
    const Matrix mass  = v.transpose() * W * v;
    const Matrix stiff = dv.transpose() * W * dv;
    const Matrix conv  = dv.transpose() * W * v; // (i, j) = int psi_i' psi_j
    const Matrix ref   = 2.5 * (oracle::kron(mass, stiff) + oracle::kron(stiff, mass)) +
                       1.5 * oracle::kron(mass, conv) - 0.75 * oracle::kron(conv, mass) +
                       4.0 * oracle::kron(mass, mass);
    EXPECT_LT(oracle::relative_error(assemble_dense(op, Block::stiffness), ref), 1e-12);
}

TEST(Operator, MatchesDenseOracleForVariableCoefficients)
{
    std::mt19937 rng(42);
    for (CaseStudy id : {CaseStudy::c1, CaseStudy::c2})
        for (int dim : {2, 3})
            for (int n : {6, 8, 12})
            {
                auto                   basis = basis_of(n);
                const CoefficientField field = case_coefficients(id, dim);
                const CdrOperator      op(basis, field, 1e-2);
                const oracle::DenseStiffness dense(*basis, field);
                for (int t = 0; t < 3; ++t)
                {
                    const ModalTensor x = random_tensor(dim, n - 1, rng);
                    EXPECT_LT(oracle::relative_error(op.apply_stiffness(x).values(), dense.apply(x.values())), 1e-11);
                    EXPECT_LT(oracle::relative_error(op.apply_stiffness_transpose(x).values(),
                                                     dense.apply_transpose(x.values())),
                              1e-11);
                }
            }
}

TEST(Operator, TransposeMatchesDenseTransposeC1Case)
{
    auto                   basis = basis_of(6);
    const CoefficientField field = case_coefficients(CaseStudy::c1, 3);
    const CdrOperator      op(basis, field, 1e-2);
    const Matrix           b = oracle::DenseStiffness(*basis, field).matrix();
    EXPECT_LT(oracle::relative_error(assemble_dense(op, Block::stiffness_transpose), Matrix(b.transpose())), 1e-11);
    EXPECT_LT(oracle::relative_error(assemble_dense(op, Block::stiffness), b), 1e-11);
}

TEST(Operator, AdjointIdentity)
{
    std::mt19937 rng(9);
    for (CaseStudy id : {CaseStudy::c1, CaseStudy::c2})
    {
        auto              basis = basis_of(8);
        const CdrOperator op(basis, case_coefficients(id, 3), 1e-2);
        for (int t = 0; t < 100; ++t)
        {
            const ModalTensor x   = random_tensor(3, 7, rng);
            const ModalTensor z   = random_tensor(3, 7, rng);
            const ModalTensor bx  = op.apply_stiffness(x);
            const ModalTensor btz = op.apply_stiffness_transpose(z);
            const double      lhs = bx.values().dot(z.values());
            const double      rhs = x.values().dot(btz.values());
            const double      scale = bx.values().norm() * z.values().norm();
            EXPECT_LT(std::abs(lhs - rhs) / scale, 1e-12);
        }
    }
}

TEST(Operator, Linearity)
{
    std::mt19937      rng(17);
    auto              basis = basis_of(10);
    const CdrOperator op(basis, case_coefficients(CaseStudy::c2, 2), 1e-2);
    const ModalTensor x   = random_tensor(2, 9, rng);
    const ModalTensor y   = random_tensor(2, 9, rng);
    const ModalTensor xy(2, 9, 2.5 * x.values() - 0.5 * y.values());
    const Vector      ref = 2.5 * op.apply_stiffness(x).values() - 0.5 * op.apply_stiffness(y).values();
    EXPECT_LT(oracle::relative_error(op.apply_stiffness(xy).values(), ref), 1e-12);
}

TEST(Operator, SaddleBlocks)
{
    std::mt19937 rng(23);
    {
        auto              basis = basis_of(8);
        const CdrOperator op(basis, case_coefficients(CaseStudy::c2, 2), 1e-3);
        EXPECT_EQ(apply_saddle(op, SaddleVector::zeros(2, 7)).stacked().cwiseAbs().maxCoeff(), 0.0);
        const Vector v   = oracle::random_vector(2 * 49, rng);
        const Vector got = op.apply_saddle(SaddleVector::from_stacked(2, 7, v)).stacked();
        EXPECT_LT(oracle::relative_error(got, Vector(oracle_saddle(*basis, op.coefficients(), 1e-3) * v)), 1e-11);
    }
    for (int dim : {2, 3})
    {
        auto              basis = basis_of(9);
        const CdrOperator op(basis, CoefficientField::constant(dim, 11.5, 6.3), 1e-4);
        const FastSolver  prec(*basis, dim, 11.5, 6.3, 1e-4);
        const auto        v = SaddleVector::from_stacked(dim, 8, oracle::random_vector(2 * ipow(8, dim), rng));
        EXPECT_LT(oracle::relative_error(op.apply_saddle(v).stacked(), prec.apply_forward(v).stacked()), 1e-12);
    }
}

TEST(Operator, ShapeMismatchThrows)
{
    const CdrOperator op(basis_of(6), CoefficientField::constant(2, 1.0, 1.0), 1.0);
    EXPECT_THROW((void)op.apply_mass(ModalTensor(2, 4)), DimensionError);
    EXPECT_THROW((void)op.apply_stiffness(ModalTensor(3, 5)), DimensionError);
    EXPECT_THROW((void)op.apply_stiffness_transpose(ModalTensor(1, 5)), DimensionError);
    EXPECT_THROW((void)op.apply_saddle(SaddleVector::zeros(2, 6)), DimensionError);
}

TEST(Operator, ConstructionGuards)
{
    EXPECT_THROW(CdrOperator(basis_of(6), CoefficientField::constant(2, 1.0, 1.0), 0.0), InvalidArgument);
    EXPECT_THROW(CdrOperator(nullptr, CoefficientField::constant(2, 1.0, 1.0), 1.0), InvalidArgument);
    EXPECT_THROW(CdrOperator(basis_of(6), CoefficientField::constant(2, 1.0, -1.0), 1.0), InvalidCoefficient);
}

TEST(DenseAssembly, Blocks)
{
    auto basis = basis_of(7);
    {
        const CdrOperator op(basis, CoefficientField::constant(1, 1.0, 1.0), 1.0);
        EXPECT_EQ(assemble_dense(op, Block::mass), Matrix(basis->eigenvalues().asDiagonal()));
    }
    {
        const CdrOperator op(basis, CoefficientField::constant(2, 1.0, 1.0), 1.0);
        const FastSolver  prec(*basis, 2, 1.0, 1.0, 1.0);
        const Matrix      b = assemble_dense(op, Block::stiffness);
        const auto&       l = basis->eigenvalues();
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                EXPECT_NEAR(prec.sigma_tensor()[i + 6 * j], (l[i] + l[j]) + l[i] * l[j], 1e-15);
        Matrix off = b;
        off.diagonal().setZero();
        EXPECT_LT(off.cwiseAbs().maxCoeff(), 1e-14);
        EXPECT_LT((b.diagonal() - prec.sigma_tensor()).cwiseAbs().maxCoeff(), 1e-13);
    }
    {
        const CdrOperator op(basis, case_coefficients(CaseStudy::c1, 2), 1e-2);
        const Matrix      a = assemble_dense(op, Block::saddle);
        for (Eigen::Index j = 0; j < a.cols(); ++j)
        {
            const auto col = op.apply_saddle(SaddleVector::from_stacked(2, 6, Vector::Unit(a.cols(), j))).stacked();
            EXPECT_EQ(a.col(j), col) << j;
        }
    }
}

TEST(DenseAssembly, SizeGuard)
{
    const CdrOperator op(basis_of(18), CoefficientField::constant(3, 1.0, 1.0), 1.0);
    EXPECT_THROW((void)assemble_dense(op, Block::mass), SizeError);
}

#ifdef _OPENMP
TEST(Operator, ResultIndependentOfThreadCount)
{
    std::mt19937      rng(31);
    const CdrOperator op(basis_of(14), case_coefficients(CaseStudy::c2, 3), 1e-2);
    const ModalTensor x = random_tensor(3, 13, rng);
    const int         saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const Vector one = op.apply_stiffness(x).values();
    omp_set_num_threads(4);
    const Vector four = op.apply_stiffness(x).values();
    omp_set_num_threads(saved);
    EXPECT_EQ(one, four);
}
#endif
