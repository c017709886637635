#include <gtest/gtest.h>

#include <cmath>

#include "dysonsim/dyson.hpp"
#include "dysonsim/errors.hpp"
#include "dysonsim/estimator.hpp"
#include "dysonsim/oracle.hpp"
#include "dysonsim/pauli.hpp"
#include "test_support.hpp"

using namespace dysonsim;
using namespace dysonsim::testing;

TEST(Mode, RoundTrip) {
    for (auto m : {EstimatorMode::shots, EstimatorMode::exact_mean, EstimatorMode::quadrature}) {
        EXPECT_EQ(parse_estimator_mode(to_string(m)), m);
    }
    EXPECT_THROW(parse_estimator_mode("monte-carlo"), ValidationError);
}

TEST(Sampling, TimeSimplexSortedInRange) {
    CounterRng rng(1, 0, 0);
    for (int k = 0; k < 200; ++k) {
        const auto ts = sample_time_simplex(4, 1.5, rng);
        ASSERT_EQ(ts.size(), 4u);
        for (std::size_t i = 0; i < ts.size(); ++i) {
            EXPECT_GE(ts[i], 0.0);
            EXPECT_LE(ts[i], 1.5);
            if (i) EXPECT_GE(ts[i - 1], ts[i]);
        }
    }
    EXPECT_THROW(sample_time_simplex(0, 1.0, rng), ValidationError);
}

TEST(Sampling, ChannelWordUniform) {
    CounterRng rng(2, 0, 0);
    std::vector<int> counts(3, 0);
    const int n = 30000;
    for (int k = 0; k < n; ++k) {
        for (auto c : sample_channel_word(1, 3, rng)) counts[c]++;
    }
    for (int c : counts) EXPECT_NEAR(c / static_cast<double>(n), 1.0 / 3.0, 0.015);
}

TEST(Budget, Validation) {
    SamplingBudget b;
    b.samples = 0;
    EXPECT_THROW(b.validate(), ValidationError);
    b.samples = 10;
    b.delta = -1.0;
    EXPECT_THROW(b.validate(), ValidationError);
}

TEST(EstimateOrder, ExactMeanConvergesToExact) {
    const double gamma = 0.2, t = 1.0;
    const LindbladModel m = amplitude_damping(gamma, 0.5 * pauli::x());
    const DensityMatrix rho(excited());
    for (int n = 1; n <= 2; ++n) {
        SamplingBudget b;
        b.order = n;
        b.samples = 20000;
        EstimatorOptions opt;
        opt.seed = 3;
        const auto est = estimate_order(m, rho, pauli::z(), t, b, opt);
        const double exact = dyson_expectation_exact(m, rho, pauli::z(), t, n);
        EXPECT_NEAR(est.value, exact, 5.0 * est.standard_error + 1e-12) << n;
        EXPECT_DOUBLE_EQ(est.prefactor, std::pow(t, n) / std::tgamma(n + 1.0));
        EXPECT_EQ(est.measurements, static_cast<std::uint64_t>(std::pow(3, n)) * b.samples);
    }
}

TEST(EstimateOrder, ShotsModeUnbiased) {
    const LindbladModel m(0.5 * pauli::x(), {{pauli::z(), RateFunction::constant(0.3), ""}});
    const DensityMatrix rho(excited());
    SamplingBudget b;
    b.order = 1;
    b.samples = 20000;
    EstimatorOptions opt;
    opt.mode = EstimatorMode::shots;
    opt.seed = 4;
    const auto est = estimate_order(m, rho, pauli::z(), 1.0, b, opt);
    const double exact = dyson_expectation_exact(m, rho, pauli::z(), 1.0, 1);
    EXPECT_NEAR(est.value, exact, 5.0 * est.standard_error);
    EXPECT_GT(est.chains, 0u);
}

TEST(EstimateOrder, DeterministicAcrossWorkers) {
    const LindbladModel m = amplitude_damping(0.1, 0.5 * pauli::x());
    const DensityMatrix rho(excited());
    SamplingBudget b;
    b.order = 2;
    b.samples = 10000;
    for (auto mode : {EstimatorMode::exact_mean, EstimatorMode::shots}) {
        EstimatorOptions opt;
        opt.mode = mode;
        opt.seed = 99;
        std::vector<double> values;
        for (std::size_t w : {1u, 2u, 8u}) {
            opt.workers = w;
            values.push_back(estimate_order(m, rho, pauli::z(), 1.0, b, opt).value);
        }
        EXPECT_EQ(values[0], values[1]);
        EXPECT_EQ(values[0], values[2]);
    }
}

TEST(EstimateObservable, TotalsAndOracle) {
    const double gamma = 0.1, t = 1.0;
    const LindbladModel m = amplitude_damping(gamma);
    const DensityMatrix rho(excited());
    std::vector<SamplingBudget> budgets(2);
    for (int n = 1; n <= 2; ++n) {
        budgets[n - 1].order = n;
        budgets[n - 1].samples = 1000;
        budgets[n - 1].delta = 0.01;
    }
    EstimatorOptions opt;
    opt.seed = 5;
    const auto rep = estimate_observable(m, rho, pauli::z(), t, budgets, opt, 0.5);
    EXPECT_EQ(rep.max_order(), 2);
    EXPECT_DOUBLE_EQ(rep.order0, 1.0);
    const auto cum = rep.cumulative();
    ASSERT_EQ(cum.size(), 3u);
    EXPECT_DOUBLE_EQ(cum.back(), rep.total);
    EXPECT_NEAR(rep.failure_probability, 2.0 * std::exp(-2.0), 1e-15);
    EXPECT_DOUBLE_EQ(rep.delta_total, 0.02);
    EXPECT_EQ(rep.measurements_total, 3u * 1000 + 9u * 1000);
    EXPECT_EQ(*rep.oracle, 0.5);
    // H = 0 amplitude damping has constant <A>, so exact-mean is exact
    const double exact = 2.0 * std::exp(-gamma * t) - 1.0;
    EXPECT_NEAR(rep.total, exact, std::pow(2 * gamma * t, 3) / 6.0 + 1e-12);
}

TEST(EstimateObservable, QuadratureMode) {
    std::mt19937_64 gen(6);
    const LindbladModel m = random_model(gen, 2, 1, 0.2);
    const DensityMatrix rho(random_density(gen, 2));
    const ComplexMatrix o = random_hermitian(gen, 2);
    std::vector<SamplingBudget> budgets(4);
    for (int n = 1; n <= 4; ++n) budgets[n - 1].order = n;
    EstimatorOptions opt;
    opt.mode = EstimatorMode::quadrature;
    const auto rep = estimate_observable(m, rho, o, 1.0, budgets, opt);
    const auto oracle = integrate_master(m, rho, 1.0, default_oracle_steps(1.0));
    EXPECT_NEAR(rep.total, expectation(o, oracle.matrix()), 1e-3);
    EXPECT_EQ(rep.samples_total, 0u);
}
