#include <gtest/gtest.h>

#include <random>

#include "dysonsim/errors.hpp"
#include "dysonsim/pauli.hpp"
#include "test_support.hpp"

using namespace dysonsim;
using namespace dysonsim::testing;

TEST(PauliBasis, OrthonormalHermitianUnitary) {
    for (int q = 1; q <= 3; ++q) {
        const PauliBasis& b = PauliBasis::for_qubits(q);
        const int d = b.dim();
        ASSERT_EQ(b.size(), static_cast<std::size_t>(d * d));
        for (std::size_t i = 0; i < b.size(); ++i) {
            const ComplexMatrix& qi = b.element(i);
            EXPECT_LT(max_abs_diff(qi, qi.adjoint()), 1e-15);
            EXPECT_LT(max_abs_diff(qi * qi, ComplexMatrix::Identity(d, d)), 1e-15);
            EXPECT_NEAR(spectral_norm(qi), 1.0, 1e-12);
            EXPECT_NEAR(qi.norm(), std::sqrt(static_cast<double>(d)), 1e-12);
            for (std::size_t j = 0; j < b.size(); j += 3) {
                EXPECT_NEAR(std::abs((qi * b.element(j)).trace()), i == j ? d : 0.0, 1e-12);
            }
        }
    }
}

TEST(PauliBasis, WordsAndOrdering) {
    const PauliBasis& b = PauliBasis::for_qubits(2);
    EXPECT_EQ(b.word(0), "II");
    EXPECT_EQ(b.word(1), "IX");
    EXPECT_EQ(b.word(4), "XI");
    EXPECT_EQ(b.word(15), "ZZ");
    EXPECT_EQ(b.index("ZI"), 12u);
    EXPECT_LT(max_abs_diff(b.element(b.index("ZI")), kron(pauli::z(), pauli::identity())), 1e-15);
    EXPECT_THROW(b.index("Z"), ValidationError);
    try {
        b.index("ZQ");
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("ZQ"), std::string::npos);
    }
    EXPECT_THROW(PauliBasis(5), ValidationError);
}

TEST(Decompose, Examples) {
    const PauliBasis& b = PauliBasis::for_qubits(1);
    const auto id = decompose(ComplexMatrix::Identity(2, 2), b);
    ASSERT_EQ(id.support_size(), 1u);
    EXPECT_EQ(id.terms()[0].index, 0u);
    EXPECT_NEAR(std::abs(id.terms()[0].coeff - 1.0), 0.0, 1e-15);

    const auto sm = decompose(pauli::lowering(), b);
    ASSERT_EQ(sm.support_size(), 2u);
    EXPECT_EQ(b.word(sm.terms()[0].index), "X");
    EXPECT_NEAR(std::abs(sm.terms()[0].coeff - 0.5), 0.0, 1e-15);
    EXPECT_EQ(b.word(sm.terms()[1].index), "Y");
    EXPECT_NEAR(std::abs(sm.terms()[1].coeff - Complex(0.0, -0.5)), 0.0, 1e-15);

    const auto cb = coefficient_bounds(sm);
    EXPECT_NEAR(cb.l2, 0.5, 1e-15);
    EXPECT_NEAR(cb.l1, 1.0, 1e-15);
    EXPECT_NEAR(cb.sqrt_support, std::sqrt(2.0), 1e-15);

    const auto single = coefficient_bounds(decompose(pauli::y(), b));
    EXPECT_NEAR(single.l1, 1.0, 1e-15);
    EXPECT_NEAR(single.l2, 1.0, 1e-15);
    EXPECT_NEAR(single.sqrt_support, 1.0, 1e-15);
}

TEST(Decompose, RoundTripAndBounds) {
    std::mt19937_64 gen(9);
    const PauliBasis& b = PauliBasis::for_qubits(2);
    for (int k = 0; k < 100; ++k) {
        ComplexMatrix a = random_matrix(gen, 4);
        a /= spectral_norm(a);
        const auto dec = decompose(a, b);
        EXPECT_LT(max_abs_diff(dec.reconstruct(), a), 1e-12);
        const auto cb = coefficient_bounds(dec);
        EXPECT_LE(cb.l2, 1.0 + 1e-12);
        EXPECT_LE(cb.l1, cb.sqrt_support + 1e-12);
        // Hermitian operators have real coefficients
        const auto herm = decompose(random_hermitian(gen, 4), b);
        for (const auto& t : herm.terms()) {
            EXPECT_LT(std::abs(t.coeff.imag()), 1e-12);
        }
    }
    EXPECT_THROW(decompose(ComplexMatrix::Identity(2, 2), b), DimensionError);
}

TEST(Embed, Dimensions) {
    std::mt19937_64 gen(10);
    const ComplexMatrix four = random_matrix(gen, 4);
    EXPECT_EQ(embed_dimension(four), four);
    const ComplexMatrix three = random_matrix(gen, 3);
    const ComplexMatrix e = embed_dimension(three);
    ASSERT_EQ(e.rows(), 4);
    EXPECT_EQ(e.block(0, 0, 3, 3), three);
    EXPECT_EQ(e.row(3).norm(), 0.0);
    EXPECT_EQ(e.col(3).norm(), 0.0);
    const ComplexMatrix rho = random_density(gen, 3);
    EXPECT_NEAR(std::abs(embed_dimension(rho).trace() - 1.0), 0.0, 1e-15);
    EXPECT_EQ(embedded_dimension(1), 1);
    EXPECT_EQ(embedded_dimension(5), 8);
    EXPECT_EQ(qubits_for_dimension(3), 2);

    const auto dec = decompose(e, PauliBasis::for_qubits(2));
    EXPECT_LT(max_abs_diff(dec.reconstruct().block(0, 0, 3, 3), three), 1e-12);
}
