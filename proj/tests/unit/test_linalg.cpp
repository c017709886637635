#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "dysonsim/errors.hpp"
#include "dysonsim/linalg.hpp"
#include "dysonsim/pauli.hpp"
#include "test_support.hpp"

using namespace dysonsim;
using namespace dysonsim::testing;

TEST(Matexp, ZeroGivesIdentity) {
    const ComplexMatrix e = matexp(ComplexMatrix::Zero(3, 3));
    EXPECT_LT(max_abs_diff(e, ComplexMatrix::Identity(3, 3)), 1e-15);
}

TEST(Matexp, PauliRotationClosedForm) {
    // e^{i pi/2 X} = cos(pi/2) I + i sin(pi/2) X
    const ComplexMatrix e = matexp(pauli::x(), Complex(0.0, std::numbers::pi / 2));
    EXPECT_LT(max_abs_diff(e, kI * pauli::x()), 1e-12);
}

TEST(Matexp, GroupInverse) {
    std::mt19937_64 gen(7);
    const ComplexMatrix a = random_matrix(gen, 4);
    const ComplexMatrix prod = matexp(a, 0.7) * matexp(a, -0.7);
    EXPECT_LT(max_abs_diff(prod, ComplexMatrix::Identity(4, 4)), 1e-10);
}

TEST(Matexp, AgreesWithSeriesForModerateNorm) {
    std::mt19937_64 gen(8);
    const ComplexMatrix h = random_hermitian(gen, 4, 3.0);
    // e^{-iHt} through the spectral decomposition
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    const double t = 2.5;
    ComplexMatrix ref = es.eigenvectors() *
                        es.eigenvalues().unaryExpr([t](double e) { return std::exp(Complex(0.0, -e * t)); }).asDiagonal() *
                        es.eigenvectors().adjoint();
    const ComplexMatrix u = matexp(h, Complex(0.0, -t));
    EXPECT_LT((u - ref).norm() / ref.norm(), 1e-10);
}

TEST(Matexp, HermitianGeneratesUnitary) {
    std::mt19937_64 gen(11);
    for (int d : {2, 4, 8}) {
        for (int k = 0; k < 100 / 3 + 1; ++k) {
            const ComplexMatrix u = matexp(random_hermitian(gen, d), Complex(0.0, -0.9));
            EXPECT_LT(max_abs_diff(u.adjoint() * u, ComplexMatrix::Identity(d, d)), 1e-10);
        }
    }
}

TEST(Matexp, RejectsBadInput) {
    EXPECT_THROW(matexp(ComplexMatrix::Zero(2, 3)), DimensionError);
    EXPECT_THROW(matexp(ComplexMatrix::Identity(2, 2), 1e4), RangeError);
    ComplexMatrix nan = ComplexMatrix::Zero(2, 2);
    nan(0, 0) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(matexp(nan), RangeError);
}

TEST(Norms, TraceNormExamples) {
    EXPECT_NEAR(trace_norm(pauli::z()), 2.0, 1e-14);
    EXPECT_NEAR(trace_norm(ComplexMatrix::Zero(3, 3)), 0.0, 1e-15);
    // orthogonal pure states
    EXPECT_NEAR(trace_norm(excited() - ground()), 2.0, 1e-14);
    ComplexVector a(2), b(2);
    a << 1.0 / std::sqrt(2.0), Complex(0.0, 1.0 / std::sqrt(2.0));
    b << 1.0 / std::sqrt(2.0), Complex(0.0, -1.0 / std::sqrt(2.0));
    EXPECT_NEAR(trace_norm(a * a.adjoint() - b * b.adjoint()), 2.0, 1e-14);
}

TEST(Norms, SpectralNormExamples) {
    for (int d : {1, 2, 5, 16}) {
        EXPECT_NEAR(spectral_norm(ComplexMatrix::Identity(d, d)), 1.0, 1e-14);
    }
    EXPECT_NEAR(spectral_norm(pauli::lowering()), 1.0, 1e-14);
    EXPECT_NEAR(spectral_norm(2.0 * pauli::z()), 2.0, 1e-14);
}

TEST(Norms, Properties) {
    std::mt19937_64 gen(3);
    for (int k = 0; k < 50; ++k) {
        const int d = 2 + k % 4;
        const ComplexMatrix a = random_matrix(gen, d);
        EXPECT_GE(trace_norm(a) + 1e-12, spectral_norm(a));
        const ComplexMatrix u = random_unitary(gen, d);
        const ComplexMatrix v = random_unitary(gen, d);
        EXPECT_NEAR(trace_norm(u * a * v), trace_norm(a), 1e-10);
    }
}

TEST(Norms, LargeDimensionUsesDivideAndConquer) {
    std::mt19937_64 gen(5);
    const ComplexMatrix a = random_hermitian(gen, 64);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a);
    EXPECT_NEAR(trace_norm(a), es.eigenvalues().cwiseAbs().sum(), 1e-9);
    EXPECT_NEAR(spectral_norm(a), es.eigenvalues().cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Algebra, CommutatorAnticommutatorDagger) {
    std::mt19937_64 gen(4);
    const ComplexMatrix a = random_matrix(gen, 3);
    EXPECT_LT(commutator(a, a).norm(), 1e-14);
    EXPECT_LT(max_abs_diff(anticommutator(ComplexMatrix::Identity(3, 3), a), 2.0 * a), 1e-14);
    EXPECT_LT(max_abs_diff(dagger(dagger(a)), a), 1e-15);
    EXPECT_LT(max_abs_diff(commutator(pauli::x(), pauli::y()), 2.0 * kI * pauli::z()), 1e-15);
    EXPECT_THROW(commutator(a, ComplexMatrix::Identity(2, 2)), DimensionError);
}

TEST(Algebra, KronOrdering) {
    // the first factor is the most significant index
    const ComplexMatrix k = kron(pauli::z(), ComplexMatrix::Identity(2, 2));
    EXPECT_EQ(k(0, 0), Complex(1.0));
    EXPECT_EQ(k(1, 1), Complex(1.0));
    EXPECT_EQ(k(2, 2), Complex(-1.0));
    EXPECT_EQ(k(3, 3), Complex(-1.0));
}

TEST(Algebra, Hermiticity) {
    EXPECT_TRUE(is_hermitian(pauli::y(), 1e-12));
    EXPECT_FALSE(is_hermitian(pauli::lowering(), 1e-12));
    EXPECT_TRUE(is_finite(pauli::y()));
}
