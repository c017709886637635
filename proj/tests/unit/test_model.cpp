#include <gtest/gtest.h>

#include <random>

#include "dysonsim/errors.hpp"
#include "dysonsim/model.hpp"
#include "dysonsim/pauli.hpp"
#include "test_support.hpp"

using namespace dysonsim;
using namespace dysonsim::testing;

TEST(Model, RejectsNonHermitianHamiltonian) {
    EXPECT_THROW(LindbladModel(pauli::lowering(), {}), ValidationError);
    EXPECT_THROW(LindbladModel(pauli::z(), {{ComplexMatrix::Identity(3, 3), RateFunction::constant(1.0), ""}}),
                 DimensionError);
}

TEST(Model, NormalizeLindbladsSquaresTheNorm) {
    const LindbladModel m(pauli::x(), {{2.0 * pauli::lowering(), RateFunction::constant(1.0), "a"}});
    const LindbladModel n = normalize_lindblads(m);
    EXPECT_NEAR(spectral_norm(n.channel(0).op), 1.0, 1e-14);
    EXPECT_NEAR(n.channel(0).rate(0.3), 4.0, 1e-14);
    std::mt19937_64 gen(1);
    const ComplexMatrix rho = random_density(gen, 2);
    EXPECT_LT(max_abs_diff(lindblad_rhs(m, rho, 0.2), lindblad_rhs(n, rho, 0.2)), 1e-12);

    const LindbladModel z(pauli::x(), {{0.5 * pauli::z(), RateFunction::constant(2.0), "z"}});
    EXPECT_NEAR(normalize_lindblads(z).channel(0).rate(0.0), 0.5, 1e-14);

    const LindbladModel fixed = amplitude_damping(0.3);
    const LindbladModel again = normalize_lindblads(fixed);
    EXPECT_LT(max_abs_diff(again.channel(0).op, fixed.channel(0).op), 1e-15);
    EXPECT_NEAR(again.channel(0).rate(0.0), 0.3, 1e-15);

    const LindbladModel zero(pauli::x(), {{ComplexMatrix::Zero(2, 2), RateFunction::constant(1.0), "0"}});
    EXPECT_THROW(normalize_lindblads(zero), ValidationError);
}

TEST(Model, NormalizationInvarianceSweep) {
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    for (int k = 0; k < 100; ++k) {
        const int d = k % 2 ? 2 : 4;
        std::vector<LindbladChannel> ch;
        for (int i = 0; i < 2; ++i) {
            ch.push_back({u(gen) * random_matrix(gen, d), RateFunction::sinusoid(u(gen), u(gen), 0.2), ""});
        }
        const LindbladModel m(random_hermitian(gen, d), ch);
        const ComplexMatrix rho = random_density(gen, d);
        const double s = u(gen);
        EXPECT_LT(max_abs_diff(lindblad_rhs(m, rho, s), lindblad_rhs(normalize_lindblads(m), rho, s)), 1e-12);
    }
}

TEST(Model, RhsExamples) {
    const LindbladModel unitary(pauli::x(), {{pauli::lowering(), RateFunction::constant(0.0), ""}});
    std::mt19937_64 gen(3);
    const ComplexMatrix rho = random_density(gen, 2);
    EXPECT_LT(max_abs_diff(lindblad_rhs(unitary, rho, 0.0), -kI * commutator(pauli::x(), rho)), 1e-15);

    const LindbladModel damp = amplitude_damping(1.0);
    EXPECT_LT(lindblad_rhs(damp, ground(), 0.0).norm(), 1e-15);
    EXPECT_LT(max_abs_diff(lindblad_rhs(damp, excited(), 0.0), ground() - excited()), 1e-15);
}

TEST(Model, RhsPreservesTraceAndHermiticity) {
    std::mt19937_64 gen(4);
    for (int k = 0; k < 20; ++k) {
        const LindbladModel m = random_model(gen, 4, 3, 1.0, true);
        const ComplexMatrix rho = random_density(gen, 4);
        const ComplexMatrix r = lindblad_rhs(m, rho, 0.37);
        EXPECT_LT(std::abs(r.trace()), 1e-12);
        EXPECT_LT(max_abs_diff(r, r.adjoint()), 1e-12);
    }
}

TEST(Model, DissipatorSubsets) {
    std::mt19937_64 gen(5);
    const LindbladModel m = random_model(gen, 2, 2, 0.5);
    const ComplexMatrix rho = random_density(gen, 2);
    const std::vector<std::size_t> none, all{0, 1}, first{0};
    EXPECT_LT(dissipator_only(m, rho, 0.1, none).norm(), 1e-15);
    const ComplexMatrix unitary_part = -kI * commutator(m.hamiltonian(), rho);
    EXPECT_LT(max_abs_diff(dissipator_only(m, rho, 0.1, all), lindblad_rhs(m, rho, 0.1) - unitary_part), 1e-13);
    const LindbladModel single(m.hamiltonian(), {m.channel(0)});
    EXPECT_LT(max_abs_diff(dissipator_only(m, rho, 0.1, first), dissipator(single, rho, 0.1)), 1e-14);
    const std::vector<std::size_t> bad{2};
    EXPECT_THROW(dissipator_only(m, rho, 0.1, bad), ValidationError);
}

TEST(Model, AdjointDissipatorDuality) {
    std::mt19937_64 gen(6);
    const LindbladModel m = random_model(gen, 4, 2, 0.7);
    const ComplexMatrix rho = random_density(gen, 4);
    const ComplexMatrix o = random_hermitian(gen, 4);
    // Tr(O L_D rho) = Tr(L_D^+ O rho)
    const Complex lhs = (o * dissipator(m, rho, 0.4)).trace();
    const Complex rhs = (adjoint_dissipator(m, o, 0.4) * rho).trace();
    EXPECT_LT(std::abs(lhs - rhs), 1e-12);
    // amplitude damping on Z gives -(I + Z)
    EXPECT_LT(max_abs_diff(adjoint_channel_unit(pauli::lowering(), pauli::z()),
                           -(ComplexMatrix::Identity(2, 2) + pauli::z())),
              1e-15);
}

TEST(NonHermitian, RhsExamples) {
    std::mt19937_64 gen(7);
    const ComplexMatrix rho = random_density(gen, 2);
    const NonHermitianModel unitary(pauli::x(), ComplexMatrix::Zero(2, 2));
    EXPECT_LT(max_abs_diff(non_hermitian_rhs(unitary, rho), -kI * commutator(pauli::x(), rho)), 1e-15);
    const double kappa = 0.3;
    const NonHermitianModel uniform(ComplexMatrix::Zero(2, 2), kappa * ComplexMatrix::Identity(2, 2));
    EXPECT_LT(max_abs_diff(non_hermitian_rhs(uniform, rho), -2.0 * kappa * rho), 1e-15);
    for (int k = 0; k < 20; ++k) {
        const ComplexMatrix a = random_matrix(gen, 3);
        const NonHermitianModel m(random_hermitian(gen, 3), a * a.adjoint());
        EXPECT_TRUE(m.gamma_positive_semidefinite());
        const ComplexMatrix r = random_density(gen, 3);
        const double dtrace = non_hermitian_rhs(m, r).trace().real();
        EXPECT_NEAR(dtrace, -2.0 * (m.gamma() * r).trace().real(), 1e-12);
        EXPECT_LE(dtrace, 1e-12);
    }
    EXPECT_FALSE(NonHermitianModel(pauli::x(), pauli::z()).gamma_positive_semidefinite());
}

TEST(DensityMatrix, Validation) {
    EXPECT_NO_THROW(DensityMatrix(excited()));
    EXPECT_THROW(DensityMatrix(2.0 * excited()), ValidationError);
    EXPECT_THROW(DensityMatrix(pauli::z()), ValidationError);
    EXPECT_THROW(DensityMatrix(pauli::lowering()), ValidationError);
    ComplexVector psi(2);
    psi << 3.0, 4.0;
    EXPECT_NEAR(DensityMatrix::pure(psi).matrix().trace().real(), 1.0, 1e-15);
}

TEST(Model, GammaBarAndNormalizedFlag) {
    const LindbladModel m(pauli::z(), {{pauli::lowering(), RateFunction::sinusoid(0.2, 2.0), "a"},
                                       {2.0 * pauli::z(), RateFunction::constant(-0.05), "b"}});
    EXPECT_NEAR(m.gamma_bar(2.0), 0.2, 1e-9);
    EXPECT_FALSE(m.is_normalized());
    EXPECT_TRUE(normalize_lindblads(m).is_normalized());
}
