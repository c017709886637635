#pragma once

#include <vector>

namespace dysonsim {

// Time-dependent decay rate gamma(s). Rates may change sign (non-Markovian
// channels); all integrals below are taken over [0, t].
class RateFunction {
public:
    enum class Kind { constant, sinusoid, tabulated };

    // gamma(s) = value
    static RateFunction constant(double value, double horizon = 1.0);
    // gamma(s) = amplitude * sin(frequency * s + phase)
    static RateFunction sinusoid(double amplitude, double frequency, double phase = 0.0, double horizon = 1.0);
    // Piecewise-linear interpolation of (times, values); times strictly
    // increasing and starting at 0.
    static RateFunction tabulated(std::vector<double> times, std::vector<double> values, double horizon = -1.0);

    double operator()(double s) const;

    Kind kind() const noexcept { return kind_; }
    double horizon() const noexcept { return horizon_; }

    // Cached at construction for the horizon.
    double gamma_bar() const noexcept { return gamma_bar_; }
    double mean_abs() const noexcept { return mean_abs_; }

    // max_{s in [0,t]} |gamma(s)|, from 10^4 samples plus knots and extrema.
    double max_abs(double t) const;
    // (1/t) int_0^t |gamma(s)| ds; equals |gamma(0)| at t = 0.
    double mean_abs(double t) const;
    double min_value(double t) const;

    double integral(double t) const;
    double integral_abs(double t) const;
    double integral_squared(double t) const;
    // int_0^t |gamma(s)| s^n ds
    double integral_abs_moment(double t, int n) const;

    // Points in (0, t) where gamma is not smooth or changes sign, plus local
    // extrema of |gamma|, sorted, with 0 and t included.
    std::vector<double> breakpoints(double t) const;

    RateFunction scaled(double factor) const;
    RateFunction with_horizon(double horizon) const;

    // Parameters, meaningful for the matching kind only.
    double amplitude() const noexcept { return amplitude_; }
    double frequency() const noexcept { return frequency_; }
    double phase() const noexcept { return phase_; }
    const std::vector<double>& knot_times() const noexcept { return times_; }
    const std::vector<double>& knot_values() const noexcept { return values_; }

    bool operator==(const RateFunction& other) const = default;

private:
    RateFunction() = default;
    void refresh_cache();

    template <class F>
    double integrate_pieces(double t, F&& f) const;

    Kind kind_ = Kind::constant;
    double amplitude_ = 0.0;
    double frequency_ = 0.0;
    double phase_ = 0.0;
    std::vector<double> times_;
    std::vector<double> values_;
    double horizon_ = 1.0;
    double gamma_bar_ = 0.0;
    double mean_abs_ = 0.0;
};

enum class MarkovianClass { markovian, valid_non_markovian, invalid };

const char* to_string(MarkovianClass c);

struct NonMarkovianReport {
    MarkovianClass classification = MarkovianClass::markovian;
    bool takes_negative_values = false;
    bool running_integral_positive = true;
    double min_rate = 0.0;
    double min_running_integral = 0.0;
    double min_running_integral_at = 0.0;
};

// Classifies a rate on [0, t]: non-negative everywhere is Markovian; negative
// somewhere with int_0^s gamma >= 0 for all s in (0, t] is a valid
// non-Markovian channel; anything else is invalid.
NonMarkovianReport check_nonmarkovian_validity(const RateFunction& rate, double t);

} // namespace dysonsim
