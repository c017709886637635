#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dysonsim/estimator.hpp"
#include "dysonsim/linalg.hpp"
#include "dysonsim/model.hpp"
#include "dysonsim/rate.hpp"

namespace dysonsim {

using Json = nlohmann::json;

struct PauliWordTerm {
    std::string word;
    Complex coeff;
};
using PauliSum = std::vector<PauliWordTerm>;

struct ChannelSpec {
    std::string label;
    PauliSum op;
    RateFunction rate = RateFunction::constant(0.0);
};

enum class ModelType { lindblad, non_hermitian };

// Initial state: "product" is one character per qubit from e (sigma_z = +1),
// g (sigma_z = -1), + and -; "vector" and "density" are literals.
struct StateSpec {
    std::string kind = "product";
    std::string product;
    std::vector<Complex> vector;
    std::vector<std::vector<Complex>> density;
};

struct ExperimentConfig {
    std::string name;
    ModelType type = ModelType::lindblad;
    int qubits = 1;
    PauliSum hamiltonian;
    std::vector<ChannelSpec> lindblads;
    PauliSum gamma;  // non-Hermitian models only
    StateSpec initial_state;
    PauliSum observable;
    std::vector<double> times;
    std::optional<int> orders;
    std::optional<double> epsilon;
    double c = 0.5;
    double beta = 2.0;
    std::optional<std::uint64_t> samples;
    EstimatorMode mode = EstimatorMode::exact_mean;
    std::uint64_t seed = 0;
    int oracle_steps_per_unit_time = 2000;
};

// Throws ValidationError with the offending key path, e.g.
// "model.lindblads[0].rate.kind: ...".
ExperimentConfig parse_config(const Json& doc);
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Normalized echo of a config; parse_config(config_to_json(c)) reproduces c.
Json config_to_json(const ExperimentConfig& config);

ComplexMatrix pauli_sum_matrix(int qubits, const PauliSum& terms, const std::string& where = "");

LindbladModel build_lindblad_model(const ExperimentConfig& config);
NonHermitianModel build_non_hermitian_model(const ExperimentConfig& config);
ComplexMatrix build_initial_state(const ExperimentConfig& config);
ComplexMatrix build_observable(const ExperimentConfig& config);

} // namespace dysonsim
