#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dysonsim/bounds.hpp"
#include "dysonsim/linalg.hpp"
#include "dysonsim/model.hpp"
#include "dysonsim/rng.hpp"

namespace dysonsim {

// shots: emulated single-shot measurements of every correlator chain.
// exact-mean: the exact <A_w(s)> per sample, isolating Monte Carlo error.
// deterministic-quadrature: every order from the Volterra recursion, no sampling.
enum class EstimatorMode { shots, exact_mean, quadrature };

const char* to_string(EstimatorMode mode);
// Accepts "shots", "exact-mean" and "deterministic-quadrature".
EstimatorMode parse_estimator_mode(const std::string& text);

struct SamplingBudget {
    int order = 1;
    double delta = 0.1;  // target absolute error of the order-n term
    double beta = 2.0;   // confidence 1 - e^{-beta}
    std::uint64_t samples = 1;  // |Omega_n|
    std::uint64_t shots_per_sample = 0;  // 3^n-branch Pauli chains x 2 (real, imag); filled by the estimator

    void validate() const;
};

// n uniforms on [0, t] sorted descending: uniform on t >= s_1 >= ... >= s_n >= 0.
std::vector<double> sample_time_simplex(int n, double t, CounterRng& rng);

// n independent uniform channel indices in [0, N).
std::vector<std::size_t> sample_channel_word(int n, std::size_t channels, CounterRng& rng);

struct EstimatorOptions {
    EstimatorMode mode = EstimatorMode::exact_mean;
    std::uint64_t seed = 0;
    std::size_t workers = 0;        // 0: default_worker_count()
    std::uint32_t stream_base = 0;  // order n draws from stream stream_base + n
};

struct OrderEstimate {
    int order = 0;
    double prefactor = 1.0;       // (N t)^n / n!
    double value = 0.0;
    double standard_error = 0.0;  // sample standard deviation / sqrt(|Omega_n|), times the prefactor
    double delta = 0.0;
    double beta = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t chains = 0;         // correlator chains evaluated (shots mode)
    std::uint64_t measurements = 0;   // 3^n |Omega_n|
};

// (N t)^n / (n! |Omega_n|) sum over |Omega_n| independent (word, times) draws.
// Sample j of order n uses CounterRng(seed, stream_base + n, j) and consumes
// the word, then the times, then the shots.
OrderEstimate estimate_order(const LindbladModel& model, const DensityMatrix& rho0, const ComplexMatrix& observable,
                             double t, const SamplingBudget& budget, const EstimatorOptions& options);

struct EstimateReport {
    double time = 0.0;
    std::uint64_t seed = 0;
    EstimatorMode mode = EstimatorMode::exact_mean;
    double order0 = 0.0;                 // Tr[O e^{t L_H} rho(0)]
    std::vector<OrderEstimate> orders;   // n = 1..K
    double total = 0.0;
    std::optional<double> oracle;
    TruncationBound truncation;          // trace-distance bound at order K
    double observable_bound = 0.0;       // D_O bound at order K
    double delta_total = 0.0;
    double failure_probability = 0.0;    // union bound sum_n e^{-beta_n}
    std::uint64_t samples_total = 0;
    std::uint64_t chains_total = 0;
    std::uint64_t repetitions_single = 0;  // one repetition per chain (real and imag as a pair)
    std::uint64_t repetitions_double = 0;  // real and imag counted separately
    std::uint64_t measurements_total = 0;  // sum_n 3^n |Omega_n|

    int max_order() const noexcept { return static_cast<int>(orders.size()); }
    std::vector<double> cumulative() const;  // order0 + sum_{k<=n} estimate_k, n = 0..K
};

// Truncated series estimate of <O>(t) at order K = budgets.size(). Order 0 is
// deterministic. `oracle`, when given, is attached to the report unchanged.
EstimateReport estimate_observable(const LindbladModel& model, const DensityMatrix& rho0,
                                   const ComplexMatrix& observable, double t,
                                   const std::vector<SamplingBudget>& budgets, const EstimatorOptions& options,
                                   std::optional<double> oracle = std::nullopt);

} // namespace dysonsim
