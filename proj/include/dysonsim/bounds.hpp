#pragma once

#include <cstdint>
#include <vector>

#include "dysonsim/linalg.hpp"
#include "dysonsim/model.hpp"
#include "dysonsim/rate.hpp"

namespace dysonsim {

struct BoundInputs {
    std::size_t channels = 1;       // N
    double gamma_bar = 0.0;         // max_i sup_s |gamma_i(s)|
    std::vector<double> mean_abs;   // (1/t) int_0^t |gamma_i|, one per channel
    std::size_t max_support = 1;    // M
    std::size_t observable_support = 1;  // M_O
    double time = 0.0;

    // t_bar = gamma_bar N t
    double scaled_time() const noexcept { return gamma_bar * static_cast<double>(channels) * time; }
    void validate() const;
};

// Reads N, gamma_bar, the mean absolute rates and the Pauli supports of the
// (dimension-embedded) Lindblad operators and observable. Throws
// ValidationError unless every ||L_i||_inf = 1.
BoundInputs bound_inputs(const LindbladModel& model, const ComplexMatrix& observable, double t);

struct TruncationBound {
    double mean_abs_form = 0.0;  // (2 sum_i mean_abs_i t)^{n+1} / (2 (n+1)!)
    double coarse_form = 0.0;    // (2 gamma_bar N t)^{n+1} / (2 (n+1)!)
};

// Trace-distance bound on rho(t) - rho~_n(t).
TruncationBound truncation_bound(const BoundInputs& inputs, int n);

// sup_{s in [0, t]} ||L_D^{s+} O||_inf, sampled on a grid that includes the
// breakpoints of every rate; exact for constant rates.
double adjoint_dissipator_norm(const LindbladModel& model, const ComplexMatrix& observable, double t);

// Bound on D_O(rho(t), rho~_n(t)):
// (||L_D^+ O|| / ||O||) (2 gamma_bar N)^n t^{n+1} / (2 (n+1)!)
double observable_truncation_bound(const BoundInputs& inputs, const ComplexMatrix& observable,
                                   const LindbladModel& model, int n);

// 36 M_O^2 (2 + beta) / delta^2 * (2 gamma_bar M N t)^{2n} / n!^2 as a real number.
double sample_count_formula(const BoundInputs& inputs, int n, double delta, double beta);

// Largest delta_n for which the Bernstein-based count applies:
// (2 gamma_bar N t)^n / n!.
double bernstein_delta_cap(const BoundInputs& inputs, int n);

// Smallest integer strictly above sample_count_formula. Throws
// ValidationError if delta exceeds bernstein_delta_cap.
std::uint64_t required_samples(const BoundInputs& inputs, int n, double delta, double beta);

// delta reached by a fixed sample count: inverts sample_count_formula.
double implied_delta(const BoundInputs& inputs, int n, std::uint64_t samples, double beta);

// K = ceil(2e t_bar + ln(1/(2 eps')) - 1), at least 0, raised if needed until
// the coarse truncation bound is <= eps'.
int truncation_order(const BoundInputs& inputs, double epsilon_prime);

struct MeasurementTotals {
    int order = 0;                      // K, from truncation_order(c eps)
    std::vector<double> deltas;         // delta_n = (1 - c) eps / (K + 1)
    std::vector<double> samples;        // |Omega_n| from the formula, real valued
    double exact_sum = 0.0;             // sum_n 3^n |Omega_n| (real valued)
    double integer_sum = 0.0;           // same with |Omega_n| rounded up as required_samples does
    double closed_form = 0.0;           // 36 M_O^2 (2+beta)(1+K)^2 / ((1-c)^2 eps^2) e^{12 gamma_bar N M t}
};

MeasurementTotals total_measurements(const BoundInputs& inputs, double epsilon, double c, double beta);

struct HolderBounds {
    double l2_form = 0.0;   // sqrt(int gamma^2) sqrt(t^{2n+1} / (2n+1))
    double sup_form = 0.0;  // max |gamma| t^{n+1} / (n+1)
    double bound = 0.0;     // min of the two
    double direct = 0.0;    // int_0^t |gamma(s)| s^n ds
};

// Estimates of int_0^t |gamma(s)| s^n ds.
HolderBounds holder_rate_bounds(const RateFunction& rate, double t, int n);

// Trace-norm bound (2 ||Gamma|| t)^{n+1} / (2 (n+1)!) for the series in -{Gamma, rho}.
double non_hermitian_truncation_bound(double gamma_norm, double t, int n);

} // namespace dysonsim
