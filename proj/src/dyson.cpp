#include "dysonsim/dyson.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "dysonsim/errors.hpp"
#include "dysonsim/quadrature.hpp"
#include "dysonsim/tolerances.hpp"

namespace dysonsim {

std::array<DissipatorTerm, 3> dissipator_terms(std::size_t channel) {
    return {DissipatorTerm{channel, DissipatorVariant::sandwich, 1.0},
            DissipatorTerm{channel, DissipatorVariant::left, -0.5},
            DissipatorTerm{channel, DissipatorVariant::right, -0.5}};
}

const char* to_string(DissipatorVariant v) {
    switch (v) {
    case DissipatorVariant::sandwich:
        return "sandwich";
    case DissipatorVariant::left:
        return "left";
    case DissipatorVariant::right:
        return "right";
    }
    return "?";
}

ComplexMatrix apply_adjoint_term(const DissipatorTerm& term, const ComplexMatrix& op, const ComplexMatrix& x) {
    switch (term.variant) {
    case DissipatorVariant::sandwich:
        return term.weight * (op.adjoint() * x * op);
    case DissipatorVariant::left:
        return term.weight * (op.adjoint() * (op * x));
    case DissipatorVariant::right:
        return term.weight * ((x * op.adjoint()) * op);
    }
    return x;
}

ComplexMatrix VolterraSeries::term(int i) const {
    if (i < 0 || i >= static_cast<int>(partial_sums.size())) {
        throw ValidationError("dyson", "series term index out of range");
    }
    if (i == 0) {
        return partial_sums[0];
    }
    return partial_sums[static_cast<std::size_t>(i)] - partial_sums[static_cast<std::size_t>(i) - 1];
}

namespace {

using Perturbation = std::function<ComplexMatrix(const ComplexMatrix&, double)>;

// Runs the recursion in the eigenframe of H on `grid` intervals and returns the
// partial sums at the final time, still in the frame.
std::vector<ComplexMatrix> volterra_on_grid(const Propagator& prop, const ComplexMatrix& rho0_frame, double t, int n,
                                            int grid, const Perturbation& perturb) {
    const double h = t / grid;
    const std::size_t points = static_cast<std::size_t>(grid) + 1;
    std::vector<ComplexMatrix> level0(points);
    for (std::size_t j = 0; j < points; ++j) {
        level0[j] = rho0_frame;
        prop.evolve_in_frame(level0[j], j * h);
    }
    std::vector<ComplexMatrix> partials{level0.back()};
    std::vector<ComplexMatrix> previous = level0;
    std::vector<ComplexMatrix> current(points);
    for (int k = 1; k <= n; ++k) {
        // Interaction picture: e^{(s_j - s) L_H} X = e^{s_j L_H} e^{-s L_H} X, so the
        // integral becomes a running sum that is pushed forward to s_j.
        ComplexMatrix running = ComplexMatrix::Zero(rho0_frame.rows(), rho0_frame.cols());
        ComplexMatrix prev_integrand;
        for (std::size_t j = 0; j < points; ++j) {
            const double s = j * h;
            ComplexMatrix integrand = perturb(previous[j], s);
            prop.heisenberg_in_frame(integrand, s);
            if (j > 0) {
                running += (0.5 * h) * (prev_integrand + integrand);
            }
            prev_integrand = std::move(integrand);
            ComplexMatrix pushed = running;
            prop.evolve_in_frame(pushed, s);
            current[j] = level0[j] + pushed;
        }
        partials.push_back(current.back());
        std::swap(previous, current);
    }
    return partials;
}

VolterraSeries run_volterra(const Propagator& prop, const ComplexMatrix& rho0, double t, int n,
                            const VolterraOptions& options, const Perturbation& perturb) {
    if (n < 0) {
        throw ValidationError("dyson", "truncation order must be non-negative");
    }
    if (options.grid_steps < 16) {
        throw ValidationError("dyson", "Volterra grid needs at least 16 steps");
    }
    if (!(t >= 0.0)) {
        throw ValidationError("dyson", "time must be non-negative");
    }
    const ComplexMatrix rho0_frame = prop.to_frame(rho0);
    const auto fine = volterra_on_grid(prop, rho0_frame, t, n, options.grid_steps, perturb);
    VolterraSeries out;
    out.partial_sums.reserve(fine.size());
    for (const auto& m : fine) {
        out.partial_sums.push_back(prop.from_frame(m));
    }
    if (n > 0 && t > 0.0) {
        const auto coarse = volterra_on_grid(prop, rho0_frame, t, n, options.grid_steps / 2, perturb);
        for (std::size_t k = 0; k < fine.size(); ++k) {
            // Trapezoid error is O(h^2): halving h quadruples it.
            out.quadrature_error = std::max(out.quadrature_error, trace_norm(fine[k] - coarse[k]) / 3.0);
        }
        if (out.quadrature_error > options.tolerance) {
            throw QuadratureError("dyson", "Volterra grid too coarse: quadrature error estimate " +
                                               std::to_string(out.quadrature_error) + " exceeds tolerance " +
                                               std::to_string(options.tolerance));
        }
    }
    out.partial_sums[0] = prop.evolve(rho0, t);
    return out;
}

} // namespace

VolterraSeries volterra_series(const LindbladModel& model, const DensityMatrix& rho0, double t, int n,
                               const VolterraOptions& options) {
    if (rho0.dim() != model.dim()) {
        throw DimensionError("dyson", "initial state dimension does not match the model");
    }
    const Propagator prop(model.hamiltonian());
    std::vector<ComplexMatrix> ops;
    for (const auto& c : model.channels()) {
        ops.push_back(prop.to_frame(c.op));
    }
    const Perturbation perturb = [&model, &ops](const ComplexMatrix& rho, double s) {
        ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
        for (std::size_t i = 0; i < ops.size(); ++i) {
            const double g = model.channel(i).rate(s);
            if (g == 0.0) {
                continue;
            }
            const ComplexMatrix& l = ops[i];
            const ComplexMatrix ldl = l.adjoint() * l;
            out += g * (l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl));
        }
        return out;
    };
    VolterraSeries series = run_volterra(prop, rho0.matrix(), t, n, options, perturb);
    // L_D annihilates traces, so every correction rho_i (i >= 1) is traceless.
    for (int i = 1; i <= n; ++i) {
        const double tr = std::abs(series.term(i).trace());
        if (tr > 1e-10) {
            throw NumericalError("dyson", "Volterra term " + std::to_string(i) + " has trace " + std::to_string(tr));
        }
    }
    return series;
}

ComplexMatrix volterra_truncated(const LindbladModel& model, const DensityMatrix& rho0, double t, int n,
                                 const VolterraOptions& options) {
    return volterra_series(model, rho0, t, n, options).truncated();
}

VolterraSeries volterra_series_non_hermitian(const NonHermitianModel& model, const ComplexMatrix& rho0, double t,
                                             int n, const VolterraOptions& options) {
    require_conformable(model.hamiltonian(), rho0, "volterra_series_non_hermitian");
    const Propagator prop(model.hamiltonian());
    const ComplexMatrix gamma = prop.to_frame(model.gamma());
    const Perturbation perturb = [&gamma](const ComplexMatrix& rho, double) -> ComplexMatrix {
        return -(gamma * rho + rho * gamma);
    };
    return run_volterra(prop, rho0, t, n, options, perturb);
}

void AdjointChainSpec::validate(std::size_t channel_count) const {
    if (channels.size() != times.size()) {
        throw ValidationError("dyson", "adjoint chain needs one time per channel");
    }
    double prev = t;
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (channels[k] >= channel_count) {
            throw ValidationError("dyson", "adjoint chain channel " + std::to_string(channels[k]) + " out of range");
        }
        if (!(times[k] <= prev) || times[k] < 0.0) {
            throw ValidationError("dyson", "adjoint chain times must satisfy t >= s_1 >= ... >= s_n >= 0");
        }
        prev = times[k];
    }
}

ComplexMatrix build_adjoint_chain(const AdjointChainSpec& spec, const LindbladModel& model) {
    spec.validate(model.channel_count());
    require_conformable(model.hamiltonian(), spec.observable, "build_adjoint_chain");
    const Propagator prop(model.hamiltonian());
    ComplexMatrix x = spec.observable;
    double prev = spec.t;
    for (int k = 0; k < spec.order(); ++k) {
        const double s = spec.times[static_cast<std::size_t>(k)];
        x = prop.heisenberg(x, prev - s);
        const LindbladChannel& c = model.channel(spec.channels[static_cast<std::size_t>(k)]);
        ComplexMatrix next = ComplexMatrix::Zero(x.rows(), x.cols());
        for (const DissipatorTerm& term : dissipator_terms(spec.channels[static_cast<std::size_t>(k)])) {
            next += apply_adjoint_term(term, c.op, x);
        }
        x = c.rate(s) * next;
        prev = s;
    }
    return prop.heisenberg(x, prev);
}

AdjointChainEvaluator::AdjointChainEvaluator(const LindbladModel& model, const ComplexMatrix& rho0,
                                             const ComplexMatrix& observable)
    : model_(model), propagator_(model.hamiltonian()) {
    require_conformable(model.hamiltonian(), rho0, "AdjointChainEvaluator");
    require_conformable(model.hamiltonian(), observable, "AdjointChainEvaluator");
    rho0_ = propagator_.to_frame(rho0);
    observable_ = propagator_.to_frame(observable);
    for (const auto& c : model.channels()) {
        ops_.push_back(propagator_.to_frame(c.op));
    }
}

Complex AdjointChainEvaluator::close(const ComplexMatrix& x, double s) const {
    ComplexMatrix y = x;
    propagator_.heisenberg_in_frame(y, s);
    return (rho0_.transpose().cwiseProduct(y)).sum();
}

Complex AdjointChainEvaluator::expectation(std::span<const std::size_t> channels, std::span<const double> times,
                                           double t) const {
    if (channels.size() != times.size()) {
        throw ValidationError("dyson", "adjoint chain needs one time per channel");
    }
    ComplexMatrix x = observable_;
    double prev = t;
    for (std::size_t k = 0; k < channels.size(); ++k) {
        const double s = times[k];
        if (s > prev || s < 0.0) {
            throw ValidationError("dyson", "adjoint chain times must satisfy t >= s_1 >= ... >= s_n >= 0");
        }
        propagator_.heisenberg_in_frame(x, prev - s);
        const std::size_t i = channels[k];
        x = model_.channel(i).rate(s) * adjoint_channel_unit(ops_.at(i), x);
        prev = s;
    }
    return close(x, prev);
}

namespace {

double nested_quadrature(const AdjointChainEvaluator& eval, double t, int n, int points) {
    const GaussLegendreRule& rule = gauss_legendre(points);
    const std::size_t channels = eval.model().channel_count();

    // Depth-first over (s_k, i_k) so every prefix of the chain is computed once.
    std::function<double(const ComplexMatrix&, double, int)> visit = [&](const ComplexMatrix& x, double prev,
                                                                         int level) -> double {
        if (level == n) {
            return eval.close(x, prev).real();
        }
        const double half = 0.5 * prev;
        double total = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double s = half + half * rule.nodes[q];
            ComplexMatrix y = x;
            eval.propagator().heisenberg_in_frame(y, prev - s);
            double inner = 0.0;
            for (std::size_t i = 0; i < channels; ++i) {
                const double g = eval.model().channel(i).rate(s);
                if (g == 0.0) {
                    continue;
                }
                inner += visit(g * adjoint_channel_unit(eval.channel_frame(i), y), s, level + 1);
            }
            total += half * rule.weights[q] * inner;
        }
        return total;
    };
    return visit(eval.observable_frame(), t, 0);
}

} // namespace

double dyson_expectation_exact(const LindbladModel& model, const DensityMatrix& rho0, const ComplexMatrix& observable,
                               double t, int n, const DysonOptions& options) {
    if (n < 0) {
        throw ValidationError("dyson", "order must be non-negative");
    }
    if (n > kMaxDysonOrder) {
        throw ValidationError("dyson", "order " + std::to_string(n) + " exceeds the supported maximum of " +
                                           std::to_string(kMaxDysonOrder));
    }
    if (options.quad_points < 2) {
        throw ValidationError("dyson", "quadrature needs at least 2 nodes per level");
    }
    const AdjointChainEvaluator eval(model, rho0.matrix(), observable);
    const double value = nested_quadrature(eval, t, n, options.quad_points);
    if (n > 0 && options.tolerance > 0.0) {
        const double coarse = nested_quadrature(eval, t, n, options.quad_points / 2);
        if (std::abs(value - coarse) > options.tolerance) {
            throw QuadratureError("dyson", "simplex quadrature did not converge: |I_q - I_q/2| = " +
                                               std::to_string(std::abs(value - coarse)));
        }
    }
    return value;
}

double first_order_expanded(const LindbladModel& model, const DensityMatrix& rho0, const ComplexMatrix& observable,
                            double t, int quad_points) {
    require_conformable(model.hamiltonian(), observable, "first_order_expanded");
    const Propagator prop(model.hamiltonian());
    const ComplexMatrix& rho = rho0.matrix();
    const ComplexMatrix o_t = prop.heisenberg(observable, t);
    double total = 0.0;
    for (const auto& c : model.channels()) {
        const ComplexMatrix ldl = c.op.adjoint() * c.op;
        const auto integrand = [&](double s) {
            const double g = c.rate(s);
            if (g == 0.0) {
                return 0.0;
            }
            const ComplexMatrix l_s = prop.heisenberg(c.op, s);
            const ComplexMatrix ldl_s = prop.heisenberg(ldl, s);
            const Complex sandwich = (rho * l_s.adjoint() * o_t * l_s).trace();
            const Complex anti = (rho * (o_t * ldl_s + ldl_s * o_t)).trace();
            return g * (sandwich - 0.5 * anti).real();
        };
        total += integrate_composite(integrand, 0.0, t, quad_points, 1);
    }
    return total;
}

} // namespace dysonsim
