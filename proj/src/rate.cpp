#include "dysonsim/rate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dysonsim/errors.hpp"
#include "dysonsim/quadrature.hpp"

namespace dysonsim {

namespace {

constexpr int kDenseSamples = 10000;
constexpr int kPanelNodes = 10;
constexpr int kPanelsPerHorizon = 64;

} // namespace

RateFunction RateFunction::constant(double value, double horizon) {
    if (!std::isfinite(value)) {
        throw ValidationError("model", "constant rate must be finite");
    }
    RateFunction r;
    r.kind_ = Kind::constant;
    r.amplitude_ = value;
    r.horizon_ = horizon;
    r.refresh_cache();
    return r;
}

RateFunction RateFunction::sinusoid(double amplitude, double frequency, double phase, double horizon) {
    if (!std::isfinite(amplitude) || !std::isfinite(frequency) || !std::isfinite(phase)) {
        throw ValidationError("model", "sinusoid rate parameters must be finite");
    }
    RateFunction r;
    r.kind_ = Kind::sinusoid;
    r.amplitude_ = amplitude;
    r.frequency_ = frequency;
    r.phase_ = phase;
    r.horizon_ = horizon;
    r.refresh_cache();
    return r;
}

RateFunction RateFunction::tabulated(std::vector<double> times, std::vector<double> values, double horizon) {
    if (times.size() < 2 || times.size() != values.size()) {
        throw ValidationError("model", "tabulated rate needs at least two (time, value) pairs of equal length");
    }
    if (times.front() != 0.0) {
        throw ValidationError("model", "tabulated rate grid must start at time 0");
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i]) || !std::isfinite(values[i])) {
            throw ValidationError("model", "tabulated rate entries must be finite");
        }
        if (i > 0 && !(times[i] > times[i - 1])) {
            throw ValidationError("model", "tabulated rate times must be strictly increasing");
        }
    }
    RateFunction r;
    r.kind_ = Kind::tabulated;
    r.horizon_ = horizon < 0.0 ? times.back() : horizon;
    r.times_ = std::move(times);
    r.values_ = std::move(values);
    if (r.horizon_ > r.times_.back() * (1.0 + 1e-12)) {
        throw ValidationError("model", "tabulated rate grid ends before the requested horizon");
    }
    r.refresh_cache();
    return r;
}

void RateFunction::refresh_cache() {
    if (!(horizon_ >= 0.0) || !std::isfinite(horizon_)) {
        throw ValidationError("model", "rate horizon must be a finite non-negative time");
    }
    gamma_bar_ = max_abs(horizon_);
    mean_abs_ = mean_abs(horizon_);
}

double RateFunction::operator()(double s) const {
    switch (kind_) {
    case Kind::constant:
        return amplitude_;
    case Kind::sinusoid:
        return amplitude_ * std::sin(frequency_ * s + phase_);
    case Kind::tabulated: {
        const double end = times_.back();
        if (s < -1e-12 * std::max(1.0, end) || s > end * (1.0 + 1e-12) + 1e-300) {
            throw RangeError("model", "tabulated rate evaluated outside its grid at s = " + std::to_string(s));
        }
        s = std::clamp(s, 0.0, end);
        auto it = std::upper_bound(times_.begin(), times_.end(), s);
        if (it == times_.end()) {
            return values_.back();
        }
        const std::size_t hi = static_cast<std::size_t>(it - times_.begin());
        const std::size_t lo = hi - 1;
        const double w = (s - times_[lo]) / (times_[hi] - times_[lo]);
        return (1.0 - w) * values_[lo] + w * values_[hi];
    }
    }
    return 0.0;
}

std::vector<double> RateFunction::breakpoints(double t) const {
    std::vector<double> points{0.0, t};
    if (t <= 0.0) {
        return {0.0};
    }
    if (kind_ == Kind::sinusoid && frequency_ != 0.0) {
        // Zeros and extrema sit where frequency*s + phase is a multiple of pi/2.
        const double quarter = 0.5 * std::numbers::pi;
        const double x0 = phase_;
        const double x1 = frequency_ * t + phase_;
        const double lo = std::min(x0, x1);
        const double hi = std::max(x0, x1);
        const auto k_begin = static_cast<long long>(std::ceil(lo / quarter));
        const auto k_end = static_cast<long long>(std::floor(hi / quarter));
        for (long long k = k_begin; k <= k_end; ++k) {
            const double s = (k * quarter - phase_) / frequency_;
            if (s > 0.0 && s < t) {
                points.push_back(s);
            }
        }
    } else if (kind_ == Kind::tabulated) {
        for (std::size_t i = 0; i < times_.size(); ++i) {
            if (times_[i] > 0.0 && times_[i] < t) {
                points.push_back(times_[i]);
            }
            if (i + 1 < times_.size() && values_[i] * values_[i + 1] < 0.0) {
                const double s = times_[i] + (times_[i + 1] - times_[i]) * values_[i] / (values_[i] - values_[i + 1]);
                if (s > 0.0 && s < t) {
                    points.push_back(s);
                }
            }
        }
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return points;
}

template <class F>
double RateFunction::integrate_pieces(double t, F&& f) const {
    if (t <= 0.0) {
        return 0.0;
    }
    const std::vector<double> points = breakpoints(t);
    const double panel_width = t / kPanelsPerHorizon;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const double a = points[i];
        const double b = points[i + 1];
        const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / panel_width)));
        total += integrate_composite(f, a, b, kPanelNodes, panels);
    }
    return total;
}

double RateFunction::max_abs(double t) const {
    if (kind_ == Kind::constant) {
        return std::abs(amplitude_);
    }
    double best = std::abs((*this)(0.0));
    if (t <= 0.0) {
        return best;
    }
    for (int k = 1; k <= kDenseSamples; ++k) {
        best = std::max(best, std::abs((*this)(t * k / kDenseSamples)));
    }
    for (double s : breakpoints(t)) {
        best = std::max(best, std::abs((*this)(s)));
    }
    return best;
}

double RateFunction::min_value(double t) const {
    if (kind_ == Kind::constant) {
        return amplitude_;
    }
    double best = (*this)(0.0);
    if (t <= 0.0) {
        return best;
    }
    for (int k = 1; k <= kDenseSamples; ++k) {
        best = std::min(best, (*this)(t * k / kDenseSamples));
    }
    for (double s : breakpoints(t)) {
        best = std::min(best, (*this)(s));
    }
    return best;
}

double RateFunction::mean_abs(double t) const {
    if (kind_ == Kind::constant || t <= 0.0) {
        return std::abs((*this)(0.0));
    }
    return integral_abs(t) / t;
}

double RateFunction::integral(double t) const {
    if (kind_ == Kind::constant) {
        return amplitude_ * t;
    }
    return integrate_pieces(t, [this](double s) { return (*this)(s); });
}

double RateFunction::integral_abs(double t) const {
    if (kind_ == Kind::constant) {
        return std::abs(amplitude_) * t;
    }
    return integrate_pieces(t, [this](double s) { return std::abs((*this)(s)); });
}

double RateFunction::integral_squared(double t) const {
    if (kind_ == Kind::constant) {
        return amplitude_ * amplitude_ * t;
    }
    return integrate_pieces(t, [this](double s) {
        const double g = (*this)(s);
        return g * g;
    });
}

double RateFunction::integral_abs_moment(double t, int n) const {
    if (n < 0) {
        throw ValidationError("model", "moment order must be non-negative");
    }
    if (kind_ == Kind::constant) {
        return std::abs(amplitude_) * std::pow(t, n + 1) / (n + 1);
    }
    return integrate_pieces(t, [this, n](double s) { return std::abs((*this)(s)) * std::pow(s, n); });
}

RateFunction RateFunction::scaled(double factor) const {
    RateFunction r = *this;
    r.amplitude_ *= factor;
    for (double& v : r.values_) {
        v *= factor;
    }
    r.refresh_cache();
    return r;
}

RateFunction RateFunction::with_horizon(double horizon) const {
    RateFunction r = *this;
    r.horizon_ = horizon;
    if (kind_ == Kind::tabulated && horizon > times_.back() * (1.0 + 1e-12)) {
        throw ValidationError("model", "tabulated rate grid ends before the requested horizon");
    }
    r.refresh_cache();
    return r;
}

const char* to_string(MarkovianClass c) {
    switch (c) {
    case MarkovianClass::markovian:
        return "markovian";
    case MarkovianClass::valid_non_markovian:
        return "valid-non-markovian";
    case MarkovianClass::invalid:
        return "invalid";
    }
    return "invalid";
}

NonMarkovianReport check_nonmarkovian_validity(const RateFunction& rate, double t) {
    if (!(t > 0.0)) {
        throw ValidationError("model", "non-Markovian validity check needs t > 0");
    }
    NonMarkovianReport report;
    const double scale = std::max(rate.max_abs(t), 1e-300);

    std::vector<double> grid = rate.breakpoints(t);
    grid.reserve(grid.size() + kDenseSamples);
    for (int k = 1; k < kDenseSamples; ++k) {
        grid.push_back(t * k / kDenseSamples);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    report.min_rate = rate(0.0);
    double running = 0.0;
    report.min_running_integral = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < grid.size(); ++i) {
        running += integrate_composite([&rate](double s) { return rate(s); }, grid[i - 1], grid[i], kPanelNodes, 1);
        report.min_rate = std::min(report.min_rate, rate(grid[i]));
        if (running < report.min_running_integral) {
            report.min_running_integral = running;
            report.min_running_integral_at = grid[i];
        }
    }
    report.takes_negative_values = report.min_rate < -1e-12 * scale;
    report.running_integral_positive = report.min_running_integral >= -1e-12 * scale * t;
    if (!report.running_integral_positive) {
        report.classification = MarkovianClass::invalid;
    } else if (report.takes_negative_values) {
        report.classification = MarkovianClass::valid_non_markovian;
    } else {
        report.classification = MarkovianClass::markovian;
    }
    return report;
}

} // namespace dysonsim
