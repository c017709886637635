#include "dysonsim/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "dysonsim/errors.hpp"
#include "dysonsim/pauli.hpp"
#include "dysonsim/tolerances.hpp"

namespace dysonsim {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ValidationError("config", (where.empty() ? std::string("config") : where) + ": " + what);
}

void allow_keys(const Json& obj, const std::string& where, std::initializer_list<const char*> keys) {
    if (!obj.is_object()) {
        fail(where, "expected an object");
    }
    for (const auto& [key, value] : obj.items()) {
        if (std::none_of(keys.begin(), keys.end(), [&key](const char* k) { return key == k; })) {
            fail(where, "unknown key '" + key + "'");
        }
    }
}

const Json& require(const Json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) {
        fail(where, std::string("missing required key '") + key + "'");
    }
    return obj.at(key);
}

double get_double(const Json& v, const std::string& where) {
    if (!v.is_number()) {
        fail(where, "expected a number");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
        fail(where, "expected a finite number");
    }
    return x;
}

std::uint64_t get_u64(const Json& v, const std::string& where) {
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
        fail(where, "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

int get_int(const Json& v, const std::string& where) {
    if (!v.is_number_integer()) {
        fail(where, "expected an integer");
    }
    const auto x = v.get<std::int64_t>();
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
        fail(where, "integer out of range");
    }
    return static_cast<int>(x);
}

std::string get_string(const Json& v, const std::string& where) {
    if (!v.is_string()) {
        fail(where, "expected a string");
    }
    return v.get<std::string>();
}

Complex get_complex(const Json& v, const std::string& where) {
    if (v.is_number()) {
        return {get_double(v, where), 0.0};
    }
    if (!v.is_array() || v.size() != 2) {
        fail(where, "expected a complex number [re, im]");
    }
    return {get_double(v[0], where + "[0]"), get_double(v[1], where + "[1]")};
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

PauliSum parse_pauli_sum(const Json& v, int qubits, const std::string& where) {
    if (!v.is_object()) {
        fail(where, "expected an object mapping Pauli words to [re, im] coefficients");
    }
    const PauliBasis& basis = PauliBasis::for_qubits(qubits);
    PauliSum out;
    for (const auto& [word, coeff] : v.items()) {
        try {
            basis.index(word);
        } catch (const ValidationError& e) {
            fail(where, e.what());
        }
        out.push_back({word, get_complex(coeff, where + "." + word)});
    }
    return out;
}

Json pauli_sum_json(const PauliSum& terms) {
    Json out = Json::object();
    for (const auto& t : terms) {
        out[t.word] = complex_json(t.coeff);
    }
    return out;
}

std::vector<double> get_double_array(const Json& v, const std::string& where) {
    if (!v.is_array()) {
        fail(where, "expected an array of numbers");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(get_double(v[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

RateFunction parse_rate(const Json& v, const std::string& where) {
    if (v.is_number()) {
        return RateFunction::constant(get_double(v, where));
    }
    allow_keys(v, where, {"kind", "value", "amplitude", "frequency", "phase", "times", "values"});
    const std::string kind = get_string(require(v, "kind", where), where + ".kind");
    try {
        if (kind == "constant") {
            allow_keys(v, where, {"kind", "value"});
            return RateFunction::constant(get_double(require(v, "value", where), where + ".value"));
        }
        if (kind == "sinusoid") {
            allow_keys(v, where, {"kind", "amplitude", "frequency", "phase"});
            const double phase = v.contains("phase") ? get_double(v["phase"], where + ".phase") : 0.0;
            return RateFunction::sinusoid(get_double(require(v, "amplitude", where), where + ".amplitude"),
                                          get_double(require(v, "frequency", where), where + ".frequency"), phase);
        }
        if (kind == "tabulated") {
            allow_keys(v, where, {"kind", "times", "values"});
            return RateFunction::tabulated(get_double_array(require(v, "times", where), where + ".times"),
                                           get_double_array(require(v, "values", where), where + ".values"));
        }
    } catch (const ValidationError& e) {
        if (e.module() == "config") throw;
        fail(where, e.what());
    }
    fail(where + ".kind", "unknown rate kind '" + kind + "' (expected constant, sinusoid or tabulated)");
}

Json rate_json(const RateFunction& r) {
    switch (r.kind()) {
    case RateFunction::Kind::constant:
        return {{"kind", "constant"}, {"value", r.amplitude()}};
    case RateFunction::Kind::sinusoid:
        return {{"kind", "sinusoid"}, {"amplitude", r.amplitude()}, {"frequency", r.frequency()}, {"phase", r.phase()}};
    case RateFunction::Kind::tabulated:
        return {{"kind", "tabulated"}, {"times", r.knot_times()}, {"values", r.knot_values()}};
    }
    return {};
}

StateSpec parse_state(const Json& v, int qubits, const std::string& where) {
    StateSpec s;
    if (v.is_string()) {
        const std::string name = v.get<std::string>();
        s.kind = "product";
        if (name == "excited") s.product = std::string(qubits, 'e');
        else if (name == "ground") s.product = std::string(qubits, 'g');
        else if (name == "plus") s.product = std::string(qubits, '+');
        else if (name == "minus") s.product = std::string(qubits, '-');
        else fail(where, "unknown state preset '" + name + "' (expected excited, ground, plus or minus)");
        return s;
    }
    allow_keys(v, where, {"product", "vector", "density"});
    if (v.size() != 1) {
        fail(where, "give exactly one of 'product', 'vector' or 'density'");
    }
    const int dim = 1 << qubits;
    if (v.contains("product")) {
        s.kind = "product";
        s.product = get_string(v["product"], where + ".product");
        if (static_cast<int>(s.product.size()) != qubits ||
            s.product.find_first_not_of("eg+-") != std::string::npos) {
            fail(where + ".product", "'" + s.product + "' must have one of e, g, +, - per qubit");
        }
    } else if (v.contains("vector")) {
        s.kind = "vector";
        const Json& a = v["vector"];
        if (!a.is_array() || static_cast<int>(a.size()) != dim) {
            fail(where + ".vector", "expected " + std::to_string(dim) + " amplitudes");
        }
        for (std::size_t i = 0; i < a.size(); ++i) {
            s.vector.push_back(get_complex(a[i], where + ".vector[" + std::to_string(i) + "]"));
        }
    } else {
        s.kind = "density";
        const Json& rows = v["density"];
        if (!rows.is_array() || static_cast<int>(rows.size()) != dim) {
            fail(where + ".density", "expected " + std::to_string(dim) + " rows");
        }
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const std::string rw = where + ".density[" + std::to_string(i) + "]";
            if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != dim) {
                fail(rw, "expected " + std::to_string(dim) + " entries");
            }
            std::vector<Complex> row;
            for (std::size_t j = 0; j < rows[i].size(); ++j) {
                row.push_back(get_complex(rows[i][j], rw + "[" + std::to_string(j) + "]"));
            }
            s.density.push_back(std::move(row));
        }
    }
    return s;
}

Json state_json(const StateSpec& s) {
    if (s.kind == "product") {
        return {{"product", s.product}};
    }
    if (s.kind == "vector") {
        Json a = Json::array();
        for (auto z : s.vector) a.push_back(complex_json(z));
        return {{"vector", a}};
    }
    Json rows = Json::array();
    for (const auto& r : s.density) {
        Json row = Json::array();
        for (auto z : r) row.push_back(complex_json(z));
        rows.push_back(row);
    }
    return {{"density", rows}};
}

} // namespace

ExperimentConfig parse_config(const Json& doc) {
    allow_keys(doc, "", {"name", "model", "initial_state", "observable", "times", "orders", "epsilon", "budget",
                         "mode", "seed", "oracle_steps_per_unit_time"});
    ExperimentConfig c;
    if (doc.contains("name")) c.name = get_string(doc["name"], "name");

    const Json& model = require(doc, "model", "");
    allow_keys(model, "model", {"type", "qubits", "hamiltonian", "lindblads", "gamma"});
    const std::string type = model.contains("type") ? get_string(model["type"], "model.type") : "lindblad";
    if (type == "lindblad") c.type = ModelType::lindblad;
    else if (type == "non-hermitian") c.type = ModelType::non_hermitian;
    else fail("model.type", "unknown model type '" + type + "' (expected lindblad or non-hermitian)");
    c.qubits = get_int(require(model, "qubits", "model"), "model.qubits");
    if (c.qubits < 1 || c.qubits > 4) {
        fail("model.qubits", "qubit count must be between 1 and 4");
    }
    c.hamiltonian = model.contains("hamiltonian") ? parse_pauli_sum(model["hamiltonian"], c.qubits, "model.hamiltonian")
                                                  : PauliSum{};
    if (c.type == ModelType::lindblad) {
        if (model.contains("gamma")) fail("model.gamma", "only non-hermitian models take 'gamma'");
        const Json& ls = model.contains("lindblads") ? model["lindblads"] : Json::array();
        if (!ls.is_array()) fail("model.lindblads", "expected an array");
        for (std::size_t i = 0; i < ls.size(); ++i) {
            const std::string w = "model.lindblads[" + std::to_string(i) + "]";
            allow_keys(ls[i], w, {"label", "operator", "rate"});
            ChannelSpec ch;
            ch.label = ls[i].contains("label") ? get_string(ls[i]["label"], w + ".label") : "L" + std::to_string(i + 1);
            ch.op = parse_pauli_sum(require(ls[i], "operator", w), c.qubits, w + ".operator");
            if (ch.op.empty()) fail(w + ".operator", "Lindblad operator has no terms");
            ch.rate = parse_rate(require(ls[i], "rate", w), w + ".rate");
            c.lindblads.push_back(std::move(ch));
        }
    } else {
        if (model.contains("lindblads")) fail("model.lindblads", "non-hermitian models take 'gamma' instead");
        c.gamma = parse_pauli_sum(require(model, "gamma", "model"), c.qubits, "model.gamma");
    }

    c.initial_state = parse_state(require(doc, "initial_state", ""), c.qubits, "initial_state");
    c.observable = parse_pauli_sum(require(doc, "observable", ""), c.qubits, "observable");
    if (c.observable.empty()) fail("observable", "observable has no terms");

    c.times = get_double_array(require(doc, "times", ""), "times");
    if (c.times.empty()) fail("times", "need at least one time");
    for (std::size_t i = 0; i < c.times.size(); ++i) {
        if (c.times[i] < 0.0 || (i > 0 && !(c.times[i] > c.times[i - 1]))) {
            fail("times", "times must be non-negative and strictly increasing");
        }
    }
    if (doc.contains("orders")) {
        c.orders = get_int(doc["orders"], "orders");
        if (*c.orders < 0 || *c.orders > 20) fail("orders", "truncation order must lie in [0, 20]");
    }
    if (doc.contains("epsilon")) {
        c.epsilon = get_double(doc["epsilon"], "epsilon");
        if (!(*c.epsilon > 0.0 && *c.epsilon < 1.0)) fail("epsilon", "target error must lie in (0, 1)");
    }
    if (!c.orders && !c.epsilon) {
        fail("", "give 'orders', 'epsilon' or both");
    }
    if (doc.contains("budget")) {
        const Json& b = doc["budget"];
        allow_keys(b, "budget", {"c", "beta", "samples"});
        if (b.contains("c")) c.c = get_double(b["c"], "budget.c");
        if (b.contains("beta")) c.beta = get_double(b["beta"], "budget.beta");
        if (b.contains("samples")) {
            c.samples = get_u64(b["samples"], "budget.samples");
            if (*c.samples < 1) fail("budget.samples", "need at least one sample");
        }
        if (!(c.c > 0.0 && c.c < 1.0)) fail("budget.c", "split constant must lie in (0, 1)");
        if (!(c.beta > 0.0)) fail("budget.beta", "confidence parameter must be positive");
    }
    if (doc.contains("mode")) {
        try {
            c.mode = parse_estimator_mode(get_string(doc["mode"], "mode"));
        } catch (const ValidationError& e) {
            if (e.module() == "config") throw;
            fail("mode", e.what());
        }
    }
    if (c.type == ModelType::non_hermitian && c.mode != EstimatorMode::quadrature) {
        fail("mode", "non-hermitian models support only deterministic-quadrature");
    }
    if (doc.contains("seed")) c.seed = get_u64(doc["seed"], "seed");
    if (doc.contains("oracle_steps_per_unit_time")) {
        c.oracle_steps_per_unit_time = get_int(doc["oracle_steps_per_unit_time"], "oracle_steps_per_unit_time");
        if (c.oracle_steps_per_unit_time < 1) fail("oracle_steps_per_unit_time", "must be positive");
    }

    // Build once so that operator-level problems (non-Hermitian H, invalid
    // density matrices) surface at parse time.
    try {
        if (c.type == ModelType::lindblad) build_lindblad_model(c);
        else build_non_hermitian_model(c);
        build_initial_state(c);
        build_observable(c);
    } catch (const ValidationError& e) {
        if (e.module() == "config") throw;
        fail("model", e.what());
    }
    return c;
}

ExperimentConfig parse_config_text(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ValidationError("config", std::string("malformed JSON: ") + e.what());
    }
    return parse_config(doc);
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("config", "cannot open config file '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

Json config_to_json(const ExperimentConfig& c) {
    Json model = {{"type", c.type == ModelType::lindblad ? "lindblad" : "non-hermitian"},
                  {"qubits", c.qubits},
                  {"hamiltonian", pauli_sum_json(c.hamiltonian)}};
    if (c.type == ModelType::lindblad) {
        Json ls = Json::array();
        for (const auto& ch : c.lindblads) {
            ls.push_back({{"label", ch.label}, {"operator", pauli_sum_json(ch.op)}, {"rate", rate_json(ch.rate)}});
        }
        model["lindblads"] = ls;
    } else {
        model["gamma"] = pauli_sum_json(c.gamma);
    }
    Json doc = {{"name", c.name},
                {"model", model},
                {"initial_state", state_json(c.initial_state)},
                {"observable", pauli_sum_json(c.observable)},
                {"times", c.times},
                {"mode", to_string(c.mode)},
                {"seed", c.seed},
                {"oracle_steps_per_unit_time", c.oracle_steps_per_unit_time}};
    Json budget = {{"c", c.c}, {"beta", c.beta}};
    if (c.samples) budget["samples"] = *c.samples;
    doc["budget"] = budget;
    if (c.orders) doc["orders"] = *c.orders;
    if (c.epsilon) doc["epsilon"] = *c.epsilon;
    return doc;
}

ComplexMatrix pauli_sum_matrix(int qubits, const PauliSum& terms, const std::string& where) {
    const PauliBasis& basis = PauliBasis::for_qubits(qubits);
    ComplexMatrix m = ComplexMatrix::Zero(basis.dim(), basis.dim());
    for (const auto& t : terms) {
        try {
            m += t.coeff * basis.element(basis.index(t.word));
        } catch (const ValidationError& e) {
            fail(where, e.what());
        }
    }
    return m;
}

LindbladModel build_lindblad_model(const ExperimentConfig& c) {
    const double horizon = c.times.empty() ? 1.0 : std::max(c.times.back(), 1e-12);
    std::vector<LindbladChannel> channels;
    for (std::size_t i = 0; i < c.lindblads.size(); ++i) {
        const auto& ch = c.lindblads[i];
        channels.push_back({pauli_sum_matrix(c.qubits, ch.op, "model.lindblads[" + std::to_string(i) + "]"),
                            ch.rate.with_horizon(horizon), ch.label});
    }
    return LindbladModel(pauli_sum_matrix(c.qubits, c.hamiltonian, "model.hamiltonian"), std::move(channels));
}

NonHermitianModel build_non_hermitian_model(const ExperimentConfig& c) {
    return NonHermitianModel(pauli_sum_matrix(c.qubits, c.hamiltonian, "model.hamiltonian"),
                             pauli_sum_matrix(c.qubits, c.gamma, "model.gamma"));
}

ComplexMatrix build_initial_state(const ExperimentConfig& c) {
    const StateSpec& s = c.initial_state;
    const int dim = 1 << c.qubits;
    if (s.kind == "product") {
        ComplexVector psi = ComplexVector::Ones(1);
        const double r = 1.0 / std::sqrt(2.0);
        for (char ch : s.product) {
            ComplexVector q(2);
            switch (ch) {
            case 'e': q << 1.0, 0.0; break;
            case 'g': q << 0.0, 1.0; break;
            case '+': q << r, r; break;
            case '-': q << r, -r; break;
            default: fail("initial_state.product", std::string("invalid qubit state '") + ch + "'");
            }
            ComplexVector next(psi.size() * 2);
            for (Eigen::Index i = 0; i < psi.size(); ++i) {
                next.segment(2 * i, 2) = psi(i) * q;
            }
            psi = next;
        }
        return DensityMatrix::pure(psi).matrix();
    }
    if (s.kind == "vector") {
        ComplexVector psi(dim);
        for (int i = 0; i < dim; ++i) psi(i) = s.vector.at(static_cast<std::size_t>(i));
        return DensityMatrix::pure(psi).matrix();
    }
    ComplexMatrix rho(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            rho(i, j) = s.density.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j));
        }
    }
    return DensityMatrix(rho).matrix();
}

ComplexMatrix build_observable(const ExperimentConfig& c) {
    ComplexMatrix o = pauli_sum_matrix(c.qubits, c.observable, "observable");
    if (!is_hermitian(o, tol::hermiticity)) {
        fail("observable", "observable must be Hermitian (use real coefficients)");
    }
    if (spectral_norm(o) == 0.0) {
        fail("observable", "observable is zero");
    }
    return o;
}

} // namespace dysonsim
