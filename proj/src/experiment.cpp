#include "dysonsim/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dysonsim/bounds.hpp"
#include "dysonsim/dyson.hpp"
#include "dysonsim/errors.hpp"
#include "dysonsim/oracle.hpp"
#include "dysonsim/pauli.hpp"

namespace dysonsim {

namespace {

// Slack for the oracle's own integration error in the --check comparison.
constexpr double kOracleMargin = 1e-5;
// Refuse budgets that would take hours; budget.samples overrides.
constexpr std::uint64_t kMaxSamplesPerOrder = 200'000'000;
constexpr double kDefaultEpsilon = 0.1;

std::string format_double(double x) {
    if (!std::isfinite(x)) {
        return "null";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_json(std::ostringstream& out, const Json& v, int indent, bool top, bool canonical) {
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    const std::string close(static_cast<std::size_t>(indent), ' ');
    switch (v.type()) {
    case Json::value_t::object: {
        if (v.empty()) {
            out << "{}";
            return;
        }
        out << "{\n";
        bool first = true;
        for (auto it = v.begin(); it != v.end(); ++it) {  // std::map: keys already sorted
            if (canonical && top && it.key() == "generated_at") continue;
            if (!first) out << ",\n";
            first = false;
            out << pad << Json(it.key()).dump() << ": ";
            write_json(out, it.value(), indent + 2, false, canonical);
        }
        out << '\n' << close << '}';
        return;
    }
    case Json::value_t::array: {
        if (v.empty()) {
            out << "[]";
            return;
        }
        // Short numeric arrays on one line keep complex pairs readable.
        const bool flat = std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_primitive(); });
        if (flat) {
            out << '[';
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) out << ", ";
                write_json(out, v[i], indent, false, canonical);
            }
            out << ']';
            return;
        }
        out << "[\n";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out << ",\n";
            out << pad;
            write_json(out, v[i], indent + 2, false, canonical);
        }
        out << '\n' << close << ']';
        return;
    }
    case Json::value_t::number_float:
        out << format_double(v.get<double>());
        return;
    default:
        out << v.dump();
        return;
    }
}

std::string timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Json order_json(const OrderEstimate& o) {
    return {{"order", o.order},           {"prefactor", o.prefactor}, {"estimate", o.value},
            {"standard_error", o.standard_error}, {"delta", o.delta},  {"beta", o.beta},
            {"samples", o.samples},       {"chains", o.chains},       {"measurements", o.measurements}};
}

std::string csv_line(const std::vector<double>& values) {
    std::string line;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) line += ',';
        line += format_double(values[i]);
    }
    return line + '\n';
}

std::string build_csv(const std::vector<TimeRow>& rows, int order) {
    std::string csv;
    const auto header = csv_header(order);
    for (std::size_t i = 0; i < header.size(); ++i) {
        csv += (i ? "," : "") + header[i];
    }
    csv += '\n';
    for (const auto& r : rows) {
        std::vector<double> v{r.time, r.oracle};
        v.insert(v.end(), r.cumulative.begin(), r.cumulative.end());
        v.push_back(r.estimate);
        v.push_back(r.truncation_bound);
        v.push_back(r.observable_bound);
        v.push_back(r.delta_total);
        csv += csv_line(v);
    }
    return csv;
}

std::vector<SamplingBudget> make_budgets(const ExperimentConfig& config, const BoundInputs& inputs, int K,
                                         Json& notes) {
    std::vector<SamplingBudget> budgets;
    const double epsilon = config.epsilon.value_or(kDefaultEpsilon);
    for (int n = 1; n <= K; ++n) {
        SamplingBudget b;
        b.order = n;
        b.beta = config.beta;
        if (config.samples) {
            b.samples = *config.samples;
            b.delta = implied_delta(inputs, n, b.samples, b.beta);
        } else {
            b.delta = (1.0 - config.c) * epsilon / (K + 1);
            const double cap = bernstein_delta_cap(inputs, n);
            if (b.delta > cap) {
                // Larger targets than the term's own magnitude carry no information
                // and fall outside the Bernstein regime; use the cap instead.
                notes.push_back("order " + std::to_string(n) + ": delta clamped to the Bernstein cap");
                b.delta = cap;
            }
            if (!(b.delta > 0.0)) {
                b.delta = std::numeric_limits<double>::min();
                b.samples = 1;
            } else {
                b.samples = required_samples(inputs, n, b.delta, b.beta);
            }
        }
        if (b.samples > kMaxSamplesPerOrder) {
            throw ValidationError("cli", "order " + std::to_string(n) + " needs " + std::to_string(b.samples) +
                                             " samples; set budget.samples or loosen epsilon");
        }
        budgets.push_back(b);
    }
    return budgets;
}

ExperimentResult run_lindblad(const ExperimentConfig& config, const RunOptions& options) {
    ExperimentResult res;
    res.config = config;
    const LindbladModel model = build_lindblad_model(config);
    const DensityMatrix rho0(build_initial_state(config));
    const ComplexMatrix obs = build_observable(config);
    const double o_norm = spectral_norm(obs);
    const double t_max = config.times.back();
    const bool dissipative = model.channel_count() > 0;
    const LindbladModel normalized = dissipative ? normalize_lindblads(model) : model;

    Json header = {{"model_type", "lindblad"},
                   {"qubits", config.qubits},
                   {"dimension", model.dim()},
                   {"channels", model.channel_count()},
                   {"observable_norm", o_norm},
                   {"normalized_input", model.is_normalized(1e-8)}};
    int K = config.orders.value_or(0);
    if (dissipative) {
        const BoundInputs in = bound_inputs(normalized, obs, t_max);
        if (!config.orders) {
            K = truncation_order(in, config.c * config.epsilon.value_or(kDefaultEpsilon));
        }
        header["gamma_bar"] = in.gamma_bar;
        header["max_support"] = in.max_support;
        header["observable_support"] = in.observable_support;
        header["adjoint_dissipator_norm"] = adjoint_dissipator_norm(normalized, obs, t_max);
        Json rates = Json::array();
        for (const auto& c : normalized.channels()) {
            const auto rep = check_nonmarkovian_validity(c.rate, t_max);
            rates.push_back({{"label", c.label},
                             {"classification", to_string(rep.classification)},
                             {"takes_negative_values", rep.takes_negative_values},
                             {"min_rate", rep.min_rate},
                             {"min_running_integral", rep.min_running_integral}});
        }
        header["rates"] = rates;
    }
    header["order"] = K;
    res.order = K;

    const auto oracle_states = integrate_master_at(model, rho0, config.times, config.oracle_steps_per_unit_time);
    EstimatorOptions eo;
    eo.mode = config.mode;
    eo.seed = config.seed;
    eo.workers = options.workers;

    Json results = Json::array();
    for (std::size_t k = 0; k < config.times.size(); ++k) {
        const double t = config.times[k];
        Json notes = Json::array();
        std::vector<SamplingBudget> budgets;
        std::optional<BoundInputs> in;
        if (dissipative) {
            in = bound_inputs(normalized, obs, t);
            if (config.mode == EstimatorMode::quadrature) {
                for (int n = 1; n <= K; ++n) {
                    SamplingBudget b;
                    b.order = n;
                    b.beta = config.beta;
                    b.delta = 1.0;
                    budgets.push_back(b);
                }
            } else {
                budgets = make_budgets(config, *in, K, notes);
            }
        } else {
            for (int n = 1; n <= K; ++n) {
                SamplingBudget b;
                b.order = n;
                b.samples = 1;
                b.delta = std::numeric_limits<double>::min();
                budgets.push_back(b);
            }
        }
        // Each grid time gets its own block of streams.
        eo.stream_base = static_cast<std::uint32_t>(k * 64);
        const double oracle = expectation(obs, oracle_states[k].matrix());
        const EstimateReport rep = estimate_observable(model, rho0, obs, t, budgets, eo, oracle);

        TimeRow row;
        row.time = t;
        row.oracle = oracle;
        row.cumulative = rep.cumulative();
        row.estimate = rep.total;
        row.truncation_bound = 2.0 * o_norm * rep.truncation.mean_abs_form;
        row.observable_bound = 2.0 * o_norm * rep.observable_bound;
        row.delta_total = config.mode == EstimatorMode::quadrature ? 0.0 : rep.delta_total;
        const double allowed = row.truncation_bound + row.delta_total + kOracleMargin;
        row.within_bounds = std::abs(row.estimate - oracle) <= allowed;
        res.check_passed = res.check_passed && row.within_bounds;

        Json orders = Json::array();
        for (const auto& o : rep.orders) orders.push_back(order_json(o));
        Json entry = {{"time", t},
                      {"oracle", oracle},
                      {"order0", rep.order0},
                      {"orders", orders},
                      {"cumulative", row.cumulative},
                      {"mc_estimate", rep.total},
                      {"bounds",
                       {{"trace_distance_mean_abs", rep.truncation.mean_abs_form},
                        {"trace_distance_coarse", rep.truncation.coarse_form},
                        {"observable_distance", rep.observable_bound},
                        {"truncation_bound", row.truncation_bound},
                        {"observable_bound", row.observable_bound},
                        {"delta_total", row.delta_total},
                        {"failure_probability", rep.failure_probability}}},
                      {"tallies",
                       {{"samples", rep.samples_total},
                        {"chains", rep.chains_total},
                        {"repetitions_single", rep.repetitions_single},
                        {"repetitions_double", rep.repetitions_double},
                        {"measurements", rep.measurements_total}}},
                      {"check",
                       {{"error", std::abs(row.estimate - oracle)}, {"allowed", allowed}, {"passed", row.within_bounds}}}};
        if (!notes.empty()) entry["notes"] = notes;
        results.push_back(entry);
        res.rows.push_back(std::move(row));
    }
    res.report = {{"header", header}, {"results", results}};
    return res;
}

ExperimentResult run_non_hermitian(const ExperimentConfig& config, const RunOptions&) {
    ExperimentResult res;
    res.config = config;
    const NonHermitianModel model = build_non_hermitian_model(config);
    const ComplexMatrix rho0 = build_initial_state(config);
    const ComplexMatrix obs = build_observable(config);
    const double o_norm = spectral_norm(obs);
    const int K = config.orders.value_or(3);
    res.order = K;
    const double t_max = config.times.back();

    // ||rho(t)||_1 along the whole trajectory.
    const int steps = std::max(16, static_cast<int>(std::ceil(t_max * config.oracle_steps_per_unit_time)));
    const auto traj = non_hermitian_trajectory(model, rho0, t_max, steps, std::max(1, steps / 200));
    bool nonincreasing = true;
    double prev = trace_norm(traj.front());
    for (const auto& r : traj) {
        const double tn = trace_norm(r);
        nonincreasing = nonincreasing && tn <= prev + 1e-10;
        prev = tn;
    }
    Json header = {{"model_type", "non-hermitian"},
                   {"qubits", config.qubits},
                   {"dimension", model.dim()},
                   {"observable_norm", o_norm},
                   {"gamma_norm", model.gamma_norm()},
                   {"gamma_positive_semidefinite", model.gamma_positive_semidefinite()},
                   {"trace_norm_nonincreasing", nonincreasing},
                   {"order", K}};
    res.check_passed = nonincreasing;

    Json results = Json::array();
    for (double t : config.times) {
        const int s = std::max(16, static_cast<int>(std::ceil(t * config.oracle_steps_per_unit_time)));
        const ComplexMatrix exact = integrate_non_hermitian(model, rho0, t, s);
        const double oracle = expectation(obs, exact);
        TimeRow row;
        row.time = t;
        row.oracle = oracle;
        if (t > 0.0) {
            const VolterraSeries series = volterra_series_non_hermitian(model, rho0, t, K);
            for (const auto& p : series.partial_sums) row.cumulative.push_back(expectation(obs, p));
        } else {
            row.cumulative.assign(static_cast<std::size_t>(K) + 1, expectation(obs, rho0));
        }
        row.estimate = row.cumulative.back();
        // |Tr O (rho - rho~_K)| <= ||O|| ||rho - rho~_K||_1
        const double tb = 2.0 * non_hermitian_truncation_bound(model.gamma_norm(), t, K);
        row.truncation_bound = o_norm * tb;
        row.observable_bound = row.truncation_bound;
        const double allowed = row.truncation_bound + kOracleMargin;
        row.within_bounds = std::abs(row.estimate - oracle) <= allowed;
        res.check_passed = res.check_passed && row.within_bounds;
        results.push_back({{"time", t},
                           {"oracle", oracle},
                           {"order0", row.cumulative.front()},
                           {"cumulative", row.cumulative},
                           {"mc_estimate", row.estimate},
                           {"trace_norm", trace_norm(exact)},
                           {"bounds", {{"trace_norm_truncation", tb}, {"truncation_bound", row.truncation_bound}}},
                           {"check",
                            {{"error", std::abs(row.estimate - oracle)},
                             {"allowed", allowed},
                             {"passed", row.within_bounds}}}});
        res.rows.push_back(std::move(row));
    }
    res.report = {{"header", header}, {"results", results}};
    return res;
}

} // namespace

std::vector<std::string> csv_header(int order) {
    std::vector<std::string> h{"time", "oracle_value", "order0"};
    for (int n = 1; n <= order; ++n) {
        h.push_back("cum_order" + std::to_string(n));
    }
    for (const char* c : {"mc_estimate", "truncation_bound", "observable_bound", "delta_total"}) {
        h.emplace_back(c);
    }
    return h;
}

ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options) {
    ExperimentResult res =
        config.type == ModelType::lindblad ? run_lindblad(config, options) : run_non_hermitian(config, options);
    res.report["config"] = config_to_json(config);
    res.report["seed"] = config.seed;
    res.report["mode"] = to_string(config.mode);
    res.report["check_passed"] = res.check_passed;
    res.report["format_version"] = 1;
    if (options.with_timestamp) {
        res.report["generated_at"] = timestamp();
    }
    res.csv = build_csv(res.rows, res.order);
    return res;
}

void write_outputs(const ExperimentResult& result, const std::string& directory) {
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec) {
        throw ValidationError("cli", "cannot create output directory '" + directory + "': " + ec.message());
    }
    const auto dir = std::filesystem::path(directory);
    std::ofstream json(dir / "report.json");
    std::ofstream csv(dir / "series.csv");
    if (!json || !csv) {
        throw ValidationError("cli", "cannot write into '" + directory + "'");
    }
    json << format_json(result.report, false) << '\n';
    csv << result.csv;
}

std::string format_json(const Json& doc, bool canonical) {
    std::ostringstream out;
    write_json(out, doc, 0, true, canonical);
    return out.str();
}

std::string describe_config(const ExperimentConfig& c) {
    std::ostringstream out;
    out << "name: " << (c.name.empty() ? "(unnamed)" : c.name) << '\n';
    out << "model: " << (c.type == ModelType::lindblad ? "lindblad" : "non-hermitian") << ", " << c.qubits
        << " qubit(s)\n";
    if (c.type == ModelType::lindblad) {
        const LindbladModel m = build_lindblad_model(c);
        const ComplexMatrix obs = build_observable(c);
        out << "channels: " << m.channel_count() << '\n';
        for (const auto& ch : m.channels()) {
            const auto rep = check_nonmarkovian_validity(ch.rate, c.times.back());
            out << "  " << ch.label << ": ||L|| = " << format_double(spectral_norm(ch.op))
                << ", rate " << to_string(rep.classification) << '\n';
        }
        if (m.channel_count() > 0) {
            const LindbladModel norm = normalize_lindblads(m);
            const BoundInputs in = bound_inputs(norm, obs, c.times.back());
            out << "gamma_bar: " << format_double(in.gamma_bar) << ", M = " << in.max_support
                << ", M_O = " << in.observable_support << '\n';
            out << "||L_D^+ O||: " << format_double(adjoint_dissipator_norm(norm, obs, c.times.back())) << '\n';
        }
    } else {
        const NonHermitianModel m = build_non_hermitian_model(c);
        out << "||Gamma||: " << format_double(m.gamma_norm())
            << (m.gamma_positive_semidefinite() ? " (positive semidefinite)" : " (indefinite)") << '\n';
    }
    out << "times: " << c.times.size() << " point(s) up to " << format_double(c.times.back()) << '\n';
    out << "mode: " << to_string(c.mode) << ", seed " << c.seed << '\n';
    return out.str();
}

} // namespace dysonsim
