#include "dysonsim/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dysonsim/dyson.hpp"
#include "dysonsim/errors.hpp"
#include "dysonsim/oracle.hpp"
#include "dysonsim/parallel.hpp"
#include "dysonsim/shots.hpp"

namespace dysonsim {

namespace {

// Samples per block. Blocks are summed independently and then combined, so
// the partition (and hence every rounding) is fixed regardless of workers.
constexpr std::size_t kBlock = 4096;

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return a * b;
}

std::uint64_t pow3(int n) {
    std::uint64_t v = 1;
    for (int k = 0; k < n; ++k) {
        v = saturating_mul(v, 3);
    }
    return v;
}

} // namespace

const char* to_string(EstimatorMode mode) {
    switch (mode) {
    case EstimatorMode::shots:
        return "shots";
    case EstimatorMode::exact_mean:
        return "exact-mean";
    case EstimatorMode::quadrature:
        return "deterministic-quadrature";
    }
    return "?";
}

EstimatorMode parse_estimator_mode(const std::string& text) {
    if (text == "shots") return EstimatorMode::shots;
    if (text == "exact-mean") return EstimatorMode::exact_mean;
    if (text == "deterministic-quadrature") return EstimatorMode::quadrature;
    throw ValidationError("estimator", "unknown mode '" + text +
                                           "' (expected shots, exact-mean or deterministic-quadrature)");
}

void SamplingBudget::validate() const {
    if (order < 1) {
        throw ValidationError("estimator", "sampling budgets start at order 1");
    }
    if (samples < 1) {
        throw ValidationError("estimator", "sample count |Omega_n| must be at least 1");
    }
    if (!(delta > 0.0) || !(beta > 0.0)) {
        throw ValidationError("estimator", "budget needs delta_n > 0 and beta > 0");
    }
}

std::vector<double> sample_time_simplex(int n, double t, CounterRng& rng) {
    if (n < 1 || !(t > 0.0)) {
        throw ValidationError("estimator", "time simplex needs n >= 1 and t > 0");
    }
    std::vector<double> s(static_cast<std::size_t>(n));
    for (double& x : s) {
        x = t * rng.uniform();
    }
    std::sort(s.begin(), s.end(), std::greater<>());
    return s;
}

std::vector<std::size_t> sample_channel_word(int n, std::size_t channels, CounterRng& rng) {
    if (channels < 1 || n < 0) {
        throw ValidationError("estimator", "channel word needs N >= 1");
    }
    std::vector<std::size_t> word(static_cast<std::size_t>(n));
    for (auto& w : word) {
        w = static_cast<std::size_t>(rng.uniform_index(channels));
    }
    return word;
}

OrderEstimate estimate_order(const LindbladModel& model, const DensityMatrix& rho0, const ComplexMatrix& observable,
                             double t, const SamplingBudget& budget, const EstimatorOptions& options) {
    budget.validate();
    if (options.mode == EstimatorMode::quadrature) {
        throw ValidationError("estimator", "estimate_order samples; use the Volterra series for quadrature mode");
    }
    if (!(t >= 0.0)) {
        throw ValidationError("estimator", "time must be non-negative");
    }
    const int n = budget.order;
    const std::size_t channels = model.channel_count();
    OrderEstimate out;
    out.order = n;
    out.delta = budget.delta;
    out.beta = budget.beta;
    out.samples = budget.samples;
    out.measurements = saturating_mul(pow3(n), budget.samples);
    if (channels == 0 || t == 0.0) {
        out.prefactor = channels == 0 ? 0.0 : (n == 0 ? 1.0 : 0.0);
        return out;
    }
    out.prefactor = std::exp(n * std::log(static_cast<double>(channels) * t) - std::lgamma(n + 1.0));

    const bool shots = options.mode == EstimatorMode::shots;
    std::optional<ShotProtocol> protocol;
    std::optional<AdjointChainEvaluator> evaluator;
    if (shots) {
        protocol.emplace(model, rho0, observable);
    } else {
        evaluator.emplace(model, rho0.matrix(), observable);
    }
    if (budget.order > std::numeric_limits<int>::max() - static_cast<int>(options.stream_base)) {
        throw ValidationError("estimator", "stream id overflow");
    }
    const auto stream = static_cast<std::uint32_t>(options.stream_base + static_cast<std::uint32_t>(n));

    const std::size_t total = budget.samples;
    const std::size_t blocks = (total + kBlock - 1) / kBlock;
    std::vector<double> block_sum(blocks, 0.0);
    std::vector<double> block_sq(blocks, 0.0);
    std::vector<std::uint64_t> block_chains(blocks, 0);
    const std::size_t workers = options.workers == 0 ? default_worker_count() : options.workers;

    parallel_for(blocks, workers, [&](std::size_t first, std::size_t last) {
        std::vector<double> values;
        std::vector<double> squares;
        for (std::size_t b = first; b < last; ++b) {
            const std::size_t lo = b * kBlock;
            const std::size_t hi = std::min(total, lo + kBlock);
            values.clear();
            squares.clear();
            std::uint64_t chains = 0;
            for (std::size_t j = lo; j < hi; ++j) {
                CounterRng rng(options.seed, stream, j);
                const auto word = sample_channel_word(n, channels, rng);
                const auto times = sample_time_simplex(n, t, rng);
                double v;
                if (shots) {
                    v = protocol->single_shot_A(word, times, t, rng);
                    chains += protocol->chains_per_sample(word);
                } else {
                    v = evaluator->expectation(word, times, t).real();
                }
                values.push_back(v);
                squares.push_back(v * v);
            }
            block_sum[b] = pairwise_sum(values);
            block_sq[b] = pairwise_sum(squares);
            block_chains[b] = chains;
        }
    });

    const double s = static_cast<double>(total);
    const double mean = pairwise_sum(block_sum) / s;
    const double mean_sq = pairwise_sum(block_sq) / s;
    const double variance = total > 1 ? std::max(0.0, (mean_sq - mean * mean) * s / (s - 1.0)) : 0.0;
    out.value = out.prefactor * mean;
    out.standard_error = out.prefactor * std::sqrt(variance / s);
    for (auto c : block_chains) {
        out.chains += c;
    }
    return out;
}

std::vector<double> EstimateReport::cumulative() const {
    std::vector<double> out{order0};
    for (const auto& o : orders) {
        out.push_back(out.back() + o.value);
    }
    return out;
}

EstimateReport estimate_observable(const LindbladModel& model, const DensityMatrix& rho0,
                                   const ComplexMatrix& observable, double t,
                                   const std::vector<SamplingBudget>& budgets, const EstimatorOptions& options,
                                   std::optional<double> oracle) {
    require_conformable(model.hamiltonian(), observable, "estimate_observable");
    require_conformable(model.hamiltonian(), rho0.matrix(), "estimate_observable");
    for (std::size_t k = 0; k < budgets.size(); ++k) {
        if (budgets[k].order != static_cast<int>(k) + 1) {
            throw ValidationError("estimator", "budget " + std::to_string(k) + " has order " +
                                                   std::to_string(budgets[k].order) + ", expected " +
                                                   std::to_string(k + 1));
        }
    }
    EstimateReport report;
    report.time = t;
    report.seed = options.seed;
    report.mode = options.mode;
    report.oracle = oracle;
    report.order0 = expectation(observable, evolve_unitary(model.hamiltonian(), rho0, t).matrix());
    const int K = static_cast<int>(budgets.size());

    if (options.mode == EstimatorMode::quadrature && K > 0 && t > 0.0) {
        const VolterraSeries series = volterra_series(model, rho0, t, K);
        for (int n = 1; n <= K; ++n) {
            OrderEstimate o;
            o.order = n;
            o.prefactor = std::exp(n * std::log(static_cast<double>(std::max<std::size_t>(1, model.channel_count())) * t) -
                                   std::lgamma(n + 1.0));
            o.value = expectation(observable, series.term(n));
            o.standard_error = 0.0;
            o.delta = budgets[n - 1].delta;
            o.beta = budgets[n - 1].beta;
            report.orders.push_back(o);
        }
    } else {
        for (const auto& b : budgets) {
            report.orders.push_back(estimate_order(model, rho0, observable, t, b, options));
        }
    }

    report.total = report.order0;
    for (const auto& o : report.orders) {
        report.total += o.value;
        if (options.mode != EstimatorMode::quadrature) {
            report.delta_total += o.delta;
            report.failure_probability += std::exp(-o.beta);
            report.samples_total += o.samples;
            report.chains_total += o.chains;
            report.measurements_total += o.measurements;
        }
    }
    report.repetitions_single = report.chains_total;
    report.repetitions_double = saturating_mul(report.chains_total, 2);

    if (model.channel_count() > 0 && t > 0.0) {
        const LindbladModel normalized = normalize_lindblads(model);
        const BoundInputs inputs = bound_inputs(normalized, observable, t);
        report.truncation = truncation_bound(inputs, K);
        report.observable_bound = observable_truncation_bound(inputs, observable, normalized, K);
    }
    return report;
}

} // namespace dysonsim
