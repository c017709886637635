#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dysonsim/bounds.hpp"
#include "dysonsim/config.hpp"
#include "dysonsim/dyson.hpp"
#include "dysonsim/errors.hpp"
#include "dysonsim/estimator.hpp"
#include "dysonsim/experiment.hpp"
#include "dysonsim/oracle.hpp"
#include "dysonsim/pauli.hpp"
#include "dysonsim/presets.hpp"

namespace py = pybind11;
using namespace dysonsim;

namespace {

// JSON crosses the boundary as text; the Python side wraps it with json.loads.
ExperimentResult run_text(const std::string& config_text, std::size_t workers) {
    RunOptions opt;
    opt.workers = workers;
    opt.with_timestamp = false;
    return run_experiment(parse_config_text(config_text), opt);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Dyson-series estimation of open-system observables";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
    py::register_exception<NumericalError>(m, "NumericalError", base.ptr());

    py::class_<RateFunction>(m, "RateFunction")
        .def_static("constant", &RateFunction::constant, py::arg("value"), py::arg("horizon") = 1.0)
        .def_static("sinusoid", &RateFunction::sinusoid, py::arg("amplitude"), py::arg("frequency"),
                    py::arg("phase") = 0.0, py::arg("horizon") = 1.0)
        .def_static("tabulated", &RateFunction::tabulated, py::arg("times"), py::arg("values"),
                    py::arg("horizon") = -1.0)
        .def("__call__", &RateFunction::operator())
        .def("max_abs", &RateFunction::max_abs)
        .def("integral", &RateFunction::integral)
        .def("with_horizon", &RateFunction::with_horizon);

    py::class_<LindbladModel>(m, "LindbladModel")
        .def(py::init([](const ComplexMatrix& h, const std::vector<std::pair<ComplexMatrix, RateFunction>>& ch) {
                 std::vector<LindbladChannel> channels;
                 for (const auto& [op, rate] : ch) channels.push_back({op, rate, ""});
                 return LindbladModel(h, std::move(channels));
             }),
             py::arg("hamiltonian"), py::arg("channels"))
        .def_property_readonly("dim", &LindbladModel::dim)
        .def_property_readonly("hamiltonian", &LindbladModel::hamiltonian)
        .def_property_readonly("channel_count", &LindbladModel::channel_count)
        .def("is_normalized", &LindbladModel::is_normalized, py::arg("tol") = 1e-10)
        .def("normalized", [](const LindbladModel& self) { return normalize_lindblads(self); });

    py::class_<NonHermitianModel>(m, "NonHermitianModel")
        .def(py::init<ComplexMatrix, ComplexMatrix>(), py::arg("hamiltonian"), py::arg("gamma"))
        .def_property_readonly("gamma_norm", &NonHermitianModel::gamma_norm);

    m.def("pauli_matrix", [](const std::string& word) {
        const int q = static_cast<int>(word.size());
        const auto& b = PauliBasis::for_qubits(q);
        return ComplexMatrix(b.element(b.index(word)));
    });

    m.def(
        "integrate_master",
        [](const LindbladModel& model, const ComplexMatrix& rho0, double t, int steps) {
            return ComplexMatrix(integrate_master(model, DensityMatrix(rho0), t,
                                                  steps > 0 ? steps : default_oracle_steps(t))
                                     .matrix());
        },
        py::arg("model"), py::arg("rho0"), py::arg("t"), py::arg("steps") = 0);
    m.def(
        "integrate_non_hermitian",
        [](const NonHermitianModel& model, const ComplexMatrix& rho0, double t, int steps) {
            return integrate_non_hermitian(model, rho0, t, steps > 0 ? steps : default_oracle_steps(t));
        },
        py::arg("model"), py::arg("rho0"), py::arg("t"), py::arg("steps") = 0);
    m.def(
        "volterra_truncated",
        [](const LindbladModel& model, const ComplexMatrix& rho0, double t, int n) {
            return volterra_truncated(model, DensityMatrix(rho0), t, n);
        },
        py::arg("model"), py::arg("rho0"), py::arg("t"), py::arg("n"));
    m.def(
        "dyson_expectation_exact",
        [](const LindbladModel& model, const ComplexMatrix& rho0, const ComplexMatrix& o, double t, int n) {
            return dyson_expectation_exact(model, DensityMatrix(rho0), o, t, n);
        },
        py::arg("model"), py::arg("rho0"), py::arg("observable"), py::arg("t"), py::arg("n"));
    m.def("trace_distance", &trace_distance);
    m.def("expectation", &expectation);

    m.def(
        "estimate_observable",
        [](const LindbladModel& model, const ComplexMatrix& rho0, const ComplexMatrix& o, double t,
           const std::vector<std::uint64_t>& samples, const std::string& mode, std::uint64_t seed,
           std::size_t workers) {
            std::vector<SamplingBudget> budgets;
            for (std::size_t n = 0; n < samples.size(); ++n) {
                SamplingBudget b;
                b.order = static_cast<int>(n + 1);
                b.samples = samples[n];
                budgets.push_back(b);
            }
            EstimatorOptions opt;
            opt.mode = parse_estimator_mode(mode);
            opt.seed = seed;
            opt.workers = workers;
            const auto rep = estimate_observable(model, DensityMatrix(rho0), o, t, budgets, opt);
            py::dict out;
            out["total"] = rep.total;
            out["order0"] = rep.order0;
            out["cumulative"] = rep.cumulative();
            std::vector<double> values, errors;
            for (const auto& e : rep.orders) {
                values.push_back(e.value);
                errors.push_back(e.standard_error);
            }
            out["orders"] = values;
            out["standard_errors"] = errors;
            out["truncation_bound"] = rep.truncation.mean_abs_form;
            return out;
        },
        py::arg("model"), py::arg("rho0"), py::arg("observable"), py::arg("t"), py::arg("samples"),
        py::arg("mode") = "exact-mean", py::arg("seed") = 0, py::arg("workers") = 0);

    m.def(
        "required_samples",
        [](int n, double delta, double beta, double gamma_bar, std::size_t channels, double t, std::size_t m_support,
           std::size_t m_observable) {
            BoundInputs in;
            in.channels = channels;
            in.gamma_bar = gamma_bar;
            in.mean_abs.assign(channels, gamma_bar);
            in.max_support = m_support;
            in.observable_support = m_observable;
            in.time = t;
            return required_samples(in, n, delta, beta);
        },
        py::arg("n"), py::arg("delta"), py::arg("beta"), py::arg("gamma_bar"), py::arg("channels"), py::arg("t"),
        py::arg("max_support"), py::arg("observable_support"));
    m.def(
        "truncation_order",
        [](double scaled_time, double epsilon_prime) {
            BoundInputs in;
            in.gamma_bar = scaled_time;
            in.mean_abs = {scaled_time};
            in.time = 1.0;
            return truncation_order(in, epsilon_prime);
        },
        py::arg("scaled_time"), py::arg("epsilon_prime"));
    m.def("adjoint_dissipator_norm", &adjoint_dissipator_norm);

    m.def("preset_names", &preset_names);
    m.def("preset_json", [](const std::string& name) { return preset_json(name).dump(); });
    m.def(
        "run_experiment",
        [](const std::string& config_text, std::size_t workers) {
            const auto res = run_text(config_text, workers);
            py::dict out;
            out["report"] = format_json(res.report, true);
            out["csv"] = res.csv;
            out["order"] = res.order;
            out["check_passed"] = res.check_passed;
            return out;
        },
        py::arg("config"), py::arg("workers") = 0);
}
