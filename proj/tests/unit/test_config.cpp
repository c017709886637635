#include <gtest/gtest.h>

#include <string>

#include "dysonsim/config.hpp"
#include "dysonsim/errors.hpp"
#include "dysonsim/pauli.hpp"
#include "dysonsim/presets.hpp"
#include "test_support.hpp"

using namespace dysonsim;
using namespace dysonsim::testing;

namespace {

const char* kMinimal = R"({
  "model": {"qubits": 1, "hamiltonian": {"X": [0.5, 0]},
            "lindblads": [{"operator": {"Z": [1, 0]}, "rate": {"kind": "constant", "value": 0.1}}]},
  "initial_state": "excited",
  "observable": {"Z": [1, 0]},
  "times": [0.5, 1.0],
  "orders": 2
})";

std::string error_of(const std::string& text) {
    try {
        parse_config_text(text);
    } catch (const ValidationError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST(Config, MinimalDefaults) {
    const auto c = parse_config_text(kMinimal);
    EXPECT_EQ(c.qubits, 1);
    EXPECT_EQ(c.type, ModelType::lindblad);
    EXPECT_EQ(c.mode, EstimatorMode::exact_mean);
    EXPECT_DOUBLE_EQ(c.c, 0.5);
    EXPECT_DOUBLE_EQ(c.beta, 2.0);
    EXPECT_EQ(c.times.size(), 2u);
    const auto m = build_lindblad_model(c);
    EXPECT_LT(max_abs_diff(m.hamiltonian(), 0.5 * pauli::x()), 1e-15);
    EXPECT_LT(max_abs_diff(build_initial_state(c), excited()), 1e-15);
}

TEST(Config, RoundTripAllPresets) {
    for (const auto& name : preset_names()) {
        const auto c = preset_config(name);
        const auto again = parse_config(config_to_json(c));
        EXPECT_EQ(config_to_json(again), config_to_json(c)) << name;
    }
}

TEST(Config, ProductStates) {
    auto doc = Json::parse(kMinimal);
    doc["model"]["qubits"] = 2;
    doc["model"]["hamiltonian"] = Json::object();
    doc["model"]["lindblads"][0]["operator"] = {{"ZI", {1, 0}}};
    doc["observable"] = {{"ZZ", {1, 0}}};
    doc["initial_state"] = {{"product", "eg"}};
    const auto rho = build_initial_state(parse_config(doc));
    EXPECT_NEAR(std::abs(rho(1, 1) - 1.0), 0.0, 1e-15);
    doc["initial_state"] = {{"product", "+-"}};
    const auto r2 = build_initial_state(parse_config(doc));
    EXPECT_NEAR(r2.trace().real(), 1.0, 1e-14);
    doc["initial_state"] = {{"product", "e"}};
    EXPECT_THROW(parse_config(doc), ValidationError);
}

TEST(Config, ErrorsNameThePath) {
    auto doc = Json::parse(kMinimal);
    doc["model"]["hamiltonian"] = {{"Q", {1, 0}}};
    std::string msg;
    try {
        parse_config(doc);
    } catch (const ValidationError& e) {
        msg = e.what();
    }
    EXPECT_NE(msg.find("model.hamiltonian"), std::string::npos) << msg;
    EXPECT_NE(msg.find("Q"), std::string::npos) << msg;

    EXPECT_NE(error_of("{").find("malformed JSON"), std::string::npos);

    doc = Json::parse(kMinimal);
    doc["bogus"] = 1;
    EXPECT_THROW(parse_config(doc), ValidationError);

    doc = Json::parse(kMinimal);
    doc["times"] = Json::array({1.0, 0.5});
    EXPECT_THROW(parse_config(doc), ValidationError);

    doc = Json::parse(kMinimal);
    doc["observable"] = {{"Z", {0, 1}}};  // anti-Hermitian
    EXPECT_THROW(build_observable(parse_config(doc)), ValidationError);

    doc = Json::parse(kMinimal);
    doc["mode"] = "sorcery";
    EXPECT_THROW(parse_config(doc), ValidationError);
}

TEST(Config, NonHermitianNeedsQuadrature) {
    auto doc = preset_json("non-hermitian-feshbach");
    const auto c = parse_config(doc);
    EXPECT_EQ(c.type, ModelType::non_hermitian);
    EXPECT_EQ(c.mode, EstimatorMode::quadrature);
    doc["mode"] = "shots";
    EXPECT_THROW(parse_config(doc), ValidationError);
}

TEST(Config, PauliSumMatrix) {
    const ComplexMatrix m = pauli_sum_matrix(2, {{"XI", 0.5}, {"IZ", Complex(0, 0)}});
    EXPECT_LT(max_abs_diff(m, 0.5 * kron(pauli::x(), ComplexMatrix::Identity(2, 2))), 1e-15);
    EXPECT_THROW(pauli_sum_matrix(1, {{"XX", 1.0}}), ValidationError);
}

TEST(Presets, Listing) {
    const auto names = preset_names();
    EXPECT_GE(names.size(), 6u);
    const std::string listing = list_presets();
    for (const auto& n : names) EXPECT_NE(listing.find(n), std::string::npos);
    EXPECT_THROW(preset_json("nope"), ValidationError);
}
