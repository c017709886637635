#include "dysonsim/presets.hpp"

#include <sstream>

#include "dysonsim/errors.hpp"

namespace dysonsim {

namespace {

struct Preset {
    const char* name;
    const char* description;
    const char* json;
};

// sigma^- = (X - iY)/2 in the e = sigma_z(+1) convention.
const Preset kPresets[] = {
    {"amplitude-damping", "1 qubit, H = 0, L = sigma^-, gamma = 0.1, excited state, O = Z",
     R"({
  "name": "amplitude-damping",
  "model": {"type": "lindblad", "qubits": 1, "hamiltonian": {},
            "lindblads": [{"label": "decay", "operator": {"X": [0.5, 0], "Y": [0, -0.5]},
                           "rate": {"kind": "constant", "value": 0.1}}]},
  "initial_state": "excited",
  "observable": {"Z": [1, 0]},
  "times": [0.5, 1.0, 2.0],
  "orders": 3,
  "epsilon": 0.1,
  "budget": {"c": 0.5, "beta": 2, "samples": 20000},
  "mode": "exact-mean",
  "seed": 20240601
})"},
    {"two-qubit-local-decay", "2 qubits, H = (XX + YY)/2, local decay on each qubit, O = Z (x) I",
     R"({
  "name": "two-qubit-local-decay",
  "model": {"type": "lindblad", "qubits": 2, "hamiltonian": {"XX": [0.5, 0], "YY": [0.5, 0]},
            "lindblads": [{"label": "decay-1", "operator": {"XI": [0.5, 0], "YI": [0, -0.5]},
                           "rate": {"kind": "constant", "value": 0.1}},
                          {"label": "decay-2", "operator": {"IX": [0.5, 0], "IY": [0, -0.5]},
                           "rate": {"kind": "constant", "value": 0.1}}]},
  "initial_state": {"product": "eg"},
  "observable": {"ZI": [1, 0]},
  "times": [0.5, 1.0, 2.0],
  "orders": 2,
  "epsilon": 0.1,
  "budget": {"c": 0.5, "beta": 2, "samples": 5000},
  "mode": "exact-mean",
  "seed": 20240602
})"},
    {"non-markovian-sin", "1 qubit, H = Z/2, L = sigma^-, gamma(s) = 0.2 sin(2s), |+>, O = X",
     R"({
  "name": "non-markovian-sin",
  "model": {"type": "lindblad", "qubits": 1, "hamiltonian": {"Z": [0.5, 0]},
            "lindblads": [{"label": "decay", "operator": {"X": [0.5, 0], "Y": [0, -0.5]},
                           "rate": {"kind": "sinusoid", "amplitude": 0.2, "frequency": 2.0, "phase": 0.0}}]},
  "initial_state": "plus",
  "observable": {"X": [1, 0]},
  "times": [0.5, 1.0, 1.5, 2.0],
  "orders": 3,
  "epsilon": 0.1,
  "budget": {"c": 0.5, "beta": 2, "samples": 20000},
  "mode": "exact-mean",
  "seed": 20240603
})"},
    {"dephasing-sigma-z", "1 qubit, H = X/2, L = Z, gamma = 0.1, excited state, O = Z",
     R"({
  "name": "dephasing-sigma-z",
  "model": {"type": "lindblad", "qubits": 1, "hamiltonian": {"X": [0.5, 0]},
            "lindblads": [{"label": "dephasing", "operator": {"Z": [1, 0]},
                           "rate": {"kind": "constant", "value": 0.1}}]},
  "initial_state": "excited",
  "observable": {"Z": [1, 0]},
  "times": [0.5, 1.0, 2.0],
  "orders": 3,
  "epsilon": 0.1,
  "budget": {"c": 0.5, "beta": 2, "samples": 20000},
  "mode": "exact-mean",
  "seed": 20240604
})"},
    {"non-hermitian-feshbach", "1 qubit, J = X - i kappa |1><1| with |1> = g, kappa = 0.2, excited state, O = Z",
     R"({
  "name": "non-hermitian-feshbach",
  "model": {"type": "non-hermitian", "qubits": 1, "hamiltonian": {"X": [1, 0]},
            "gamma": {"I": [0.1, 0], "Z": [-0.1, 0]}},
  "initial_state": "excited",
  "observable": {"Z": [1, 0]},
  "times": [0.5, 1.0, 2.0],
  "orders": 3,
  "mode": "deterministic-quadrature",
  "seed": 20240605
})"},
    {"partial-dissipation", "2 qubits, decay on the first qubit only (gamma_2 = 0), O = I (x) Z",
     R"({
  "name": "partial-dissipation",
  "model": {"type": "lindblad", "qubits": 2, "hamiltonian": {"XX": [0.5, 0], "YY": [0.5, 0]},
            "lindblads": [{"label": "decay-1", "operator": {"XI": [0.5, 0], "YI": [0, -0.5]},
                           "rate": {"kind": "constant", "value": 0.1}},
                          {"label": "decay-2", "operator": {"IX": [0.5, 0], "IY": [0, -0.5]},
                           "rate": {"kind": "constant", "value": 0.0}}]},
  "initial_state": {"product": "eg"},
  "observable": {"IZ": [1, 0]},
  "times": [0.5, 1.0, 2.0],
  "orders": 2,
  "epsilon": 0.1,
  "budget": {"c": 0.5, "beta": 2, "samples": 5000},
  "mode": "exact-mean",
  "seed": 20240606
})"},
    {"dephasing-shots", "1 qubit, L = Z, gamma = 1, |+>, O = X; first order with the Bernstein budget in shots mode",
     R"({
  "name": "dephasing-shots",
  "model": {"type": "lindblad", "qubits": 1, "hamiltonian": {"Z": [0.5, 0]},
            "lindblads": [{"label": "dephasing", "operator": {"Z": [1, 0]},
                           "rate": {"kind": "constant", "value": 1.0}}]},
  "initial_state": "plus",
  "observable": {"X": [1, 0]},
  "times": [1.0],
  "orders": 1,
  "epsilon": 0.4,
  "budget": {"c": 0.5, "beta": 2},
  "mode": "shots",
  "seed": 20240607
})"},
};

const Preset& find(const std::string& name) {
    for (const auto& p : kPresets) {
        if (name == p.name) return p;
    }
    std::string known;
    for (const auto& p : kPresets) {
        known += known.empty() ? "" : ", ";
        known += p.name;
    }
    throw ValidationError("cli", "unknown preset '" + name + "' (available: " + known + ")");
}

} // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    for (const auto& p : kPresets) out.emplace_back(p.name);
    return out;
}

Json preset_json(const std::string& name) { return Json::parse(find(name).json); }

ExperimentConfig preset_config(const std::string& name) { return parse_config(preset_json(name)); }

std::string list_presets() {
    std::ostringstream out;
    for (const auto& p : kPresets) {
        out << p.name << "  " << p.description << '\n';
    }
    return out.str();
}

} // namespace dysonsim
