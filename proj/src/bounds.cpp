#include "dysonsim/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dysonsim/errors.hpp"
#include "dysonsim/pauli.hpp"

namespace dysonsim {

namespace {

// log(x^p / f!), with 0^0 = 1.
double log_power_over_factorial(double x, double p, int f) {
    const double log_x = p == 0.0 ? 0.0 : p * std::log(x);
    return log_x - std::lgamma(static_cast<double>(f) + 1.0);
}

// x^p / f! computed in log space.
double power_over_factorial(double x, double p, int f) {
    if (x < 0.0) {
        throw ValidationError("bounds", "negative base in bound formula");
    }
    if (x == 0.0) {
        return p == 0.0 ? std::exp(-std::lgamma(static_cast<double>(f) + 1.0)) : 0.0;
    }
    return std::exp(log_power_over_factorial(x, p, f));
}

void require_order(int n) {
    if (n < 0) {
        throw ValidationError("bounds", "order must be non-negative, got " + std::to_string(n));
    }
}

constexpr int kNormGrid = 2000;

} // namespace

void BoundInputs::validate() const {
    if (channels == 0 || max_support == 0 || observable_support == 0) {
        throw ValidationError("bounds", "N, M and M_O must be positive integers");
    }
    if (!(gamma_bar >= 0.0) || !(time >= 0.0) || !std::isfinite(gamma_bar) || !std::isfinite(time)) {
        throw ValidationError("bounds", "gamma_bar and t must be finite and non-negative");
    }
    for (double m : mean_abs) {
        if (!(m >= 0.0)) {
            throw ValidationError("bounds", "mean absolute rates must be non-negative");
        }
    }
}

BoundInputs bound_inputs(const LindbladModel& model, const ComplexMatrix& observable, double t) {
    if (!model.is_normalized(1e-8)) {
        throw ValidationError("bounds", "bounds assume ||L_i||_inf = 1; normalize the Lindblad operators first");
    }
    if (model.channel_count() == 0) {
        throw ValidationError("bounds", "bounds need at least one dissipation channel");
    }
    require_conformable(model.hamiltonian(), observable, "bound_inputs");
    BoundInputs in;
    in.channels = model.channel_count();
    in.gamma_bar = model.gamma_bar(t);
    in.time = t;
    const PauliBasis& basis = PauliBasis::for_qubits(qubits_for_dimension(model.dim()));
    in.max_support = 1;
    for (const auto& c : model.channels()) {
        in.mean_abs.push_back(c.rate.mean_abs(t));
        in.max_support = std::max(in.max_support, decompose(embed_dimension(c.op), basis).support_size());
    }
    in.observable_support = std::max<std::size_t>(1, decompose(embed_dimension(observable), basis).support_size());
    in.validate();
    return in;
}

TruncationBound truncation_bound(const BoundInputs& inputs, int n) {
    require_order(n);
    inputs.validate();
    double mean_sum = 0.0;
    for (double m : inputs.mean_abs) {
        mean_sum += m;
    }
    if (inputs.mean_abs.empty()) {
        mean_sum = inputs.gamma_bar * static_cast<double>(inputs.channels);
    }
    TruncationBound b;
    b.mean_abs_form = 0.5 * power_over_factorial(2.0 * mean_sum * inputs.time, n + 1.0, n + 1);
    b.coarse_form = 0.5 * power_over_factorial(2.0 * inputs.scaled_time(), n + 1.0, n + 1);
    return b;
}

double adjoint_dissipator_norm(const LindbladModel& model, const ComplexMatrix& observable, double t) {
    require_conformable(model.hamiltonian(), observable, "adjoint_dissipator_norm");
    std::vector<ComplexMatrix> pieces;
    bool all_constant = true;
    for (const auto& c : model.channels()) {
        pieces.push_back(adjoint_channel_unit(c.op, observable));
        all_constant = all_constant && c.rate.kind() == RateFunction::Kind::constant;
    }
    const auto norm_at = [&](double s) {
        ComplexMatrix sum = ComplexMatrix::Zero(observable.rows(), observable.cols());
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            sum += model.channel(i).rate(s) * pieces[i];
        }
        return spectral_norm(sum);
    };
    if (all_constant || t <= 0.0) {
        return norm_at(0.0);
    }
    std::vector<double> grid;
    for (int k = 0; k <= kNormGrid; ++k) {
        grid.push_back(t * k / kNormGrid);
    }
    for (const auto& c : model.channels()) {
        const auto bp = c.rate.breakpoints(t);
        grid.insert(grid.end(), bp.begin(), bp.end());
    }
    double best = 0.0;
    for (double s : grid) {
        best = std::max(best, norm_at(s));
    }
    return best;
}

double observable_truncation_bound(const BoundInputs& inputs, const ComplexMatrix& observable,
                                   const LindbladModel& model, int n) {
    require_order(n);
    inputs.validate();
    const double o_norm = spectral_norm(observable);
    if (o_norm == 0.0) {
        throw ValidationError("bounds", "observable bound needs a non-zero observable");
    }
    const double ld = adjoint_dissipator_norm(model, observable, inputs.time);
    const double rate = 2.0 * inputs.gamma_bar * static_cast<double>(inputs.channels);
    // (2 gamma_bar N)^n t^{n+1} / (2 (n+1)!)
    const double tail = rate == 0.0 ? (n == 0 ? 1.0 : 0.0) : std::pow(rate, n);
    return ld / o_norm * tail * 0.5 * power_over_factorial(inputs.time, n + 1.0, n + 1);
}

double sample_count_formula(const BoundInputs& inputs, int n, double delta, double beta) {
    require_order(n);
    inputs.validate();
    if (!(delta > 0.0) || !(beta >= 0.0)) {
        throw ValidationError("bounds", "sample count needs delta > 0 and beta >= 0");
    }
    const double mo = static_cast<double>(inputs.observable_support);
    const double base = 2.0 * static_cast<double>(inputs.max_support) * inputs.scaled_time();
    // (2 gamma_bar M N t)^{2n} / n!^2 = ((2 gamma_bar M N t)^n / n!)^2
    const double growth = power_over_factorial(base, n, n);
    return 36.0 * mo * mo * (2.0 + beta) / (delta * delta) * growth * growth;
}

double bernstein_delta_cap(const BoundInputs& inputs, int n) {
    require_order(n);
    return power_over_factorial(2.0 * inputs.scaled_time(), n, n);
}

std::uint64_t required_samples(const BoundInputs& inputs, int n, double delta, double beta) {
    const double cap = bernstein_delta_cap(inputs, n);
    if (delta > cap * (1.0 + 1e-12)) {
        throw ValidationError("bounds", "delta_n = " + std::to_string(delta) +
                                            " violates the Bernstein applicability condition delta_n <= "
                                            "(2 gamma_bar N t)^n / n! = " +
                                            std::to_string(cap));
    }
    const double v = sample_count_formula(inputs, n, delta, beta);
    if (!(v < 1.8e19)) {
        throw RangeError("bounds", "required sample count overflows 64 bits");
    }
    // Counts that are integers in exact arithmetic (e.g. 57600) can land a few
    // ulps below; snap before taking the next integer.
    const double nearest = std::round(v);
    const double base = std::abs(v - nearest) <= 1e-9 * std::max(1.0, v) ? nearest : std::floor(v);
    return static_cast<std::uint64_t>(base) + 1;
}

double implied_delta(const BoundInputs& inputs, int n, std::uint64_t samples, double beta) {
    if (samples == 0) {
        throw ValidationError("bounds", "sample count must be at least 1");
    }
    // formula(delta) = formula(1) / delta^2
    const double at_one = sample_count_formula(inputs, n, 1.0, beta);
    return std::sqrt(at_one / static_cast<double>(samples));
}

int truncation_order(const BoundInputs& inputs, double epsilon_prime) {
    if (!(epsilon_prime > 0.0 && epsilon_prime < 1.0)) {
        throw ValidationError("bounds", "truncation target eps' must lie in (0, 1), got " +
                                            std::to_string(epsilon_prime));
    }
    inputs.validate();
    const double raw = 2.0 * std::numbers::e * inputs.scaled_time() + std::log(1.0 / (2.0 * epsilon_prime)) - 1.0;
    int k = std::max(0, static_cast<int>(std::ceil(raw - 1e-12)));
    while (truncation_bound(inputs, k).coarse_form > epsilon_prime) {
        ++k;
        if (k > 10000) {
            throw RangeError("bounds", "no truncation order reaches the requested eps'");
        }
    }
    return k;
}

MeasurementTotals total_measurements(const BoundInputs& inputs, double epsilon, double c, double beta) {
    if (!(c > 0.0 && c < 1.0)) {
        throw ValidationError("bounds", "budget split c must lie in (0, 1)");
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw ValidationError("bounds", "target error eps must lie in (0, 1)");
    }
    MeasurementTotals out;
    out.order = truncation_order(inputs, c * epsilon);
    const double delta = (1.0 - c) * epsilon / (out.order + 1);
    for (int n = 0; n <= out.order; ++n) {
        const double count = sample_count_formula(inputs, n, delta, beta);
        const double weight = std::pow(3.0, n);
        out.deltas.push_back(delta);
        out.samples.push_back(count);
        out.exact_sum += weight * count;
        out.integer_sum += weight * (std::floor(count) + 1.0);
    }
    const double mo = static_cast<double>(inputs.observable_support);
    const double k1 = out.order + 1.0;
    out.closed_form = 36.0 * mo * mo * (2.0 + beta) * k1 * k1 / ((1.0 - c) * (1.0 - c) * epsilon * epsilon) *
                      std::exp(12.0 * inputs.scaled_time() * static_cast<double>(inputs.max_support));
    return out;
}

HolderBounds holder_rate_bounds(const RateFunction& rate, double t, int n) {
    require_order(n);
    if (!(t > 0.0)) {
        throw ValidationError("bounds", "Holder bounds need t > 0");
    }
    HolderBounds h;
    h.l2_form = std::sqrt(rate.integral_squared(t)) * std::sqrt(std::pow(t, 2 * n + 1) / (2 * n + 1));
    h.sup_form = rate.max_abs(t) * std::pow(t, n + 1) / (n + 1);
    h.bound = std::min(h.l2_form, h.sup_form);
    h.direct = rate.integral_abs_moment(t, n);
    return h;
}

double non_hermitian_truncation_bound(double gamma_norm, double t, int n) {
    require_order(n);
    if (!(gamma_norm >= 0.0) || !(t >= 0.0)) {
        throw ValidationError("bounds", "non-Hermitian bound needs ||Gamma|| >= 0 and t >= 0");
    }
    return 0.5 * power_over_factorial(2.0 * gamma_norm * t, n + 1.0, n + 1);
}

} // namespace dysonsim
