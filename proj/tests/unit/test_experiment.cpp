#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dysonsim/config.hpp"
#include "dysonsim/experiment.hpp"
#include "dysonsim/presets.hpp"

using namespace dysonsim;

namespace {

ExperimentConfig small(const std::string& preset, std::uint64_t samples) {
    auto doc = preset_json(preset);
    doc["budget"]["samples"] = samples;
    return parse_config(doc);
}

} // namespace

TEST(Csv, HeaderGolden) {
    const auto h = csv_header(3);
    std::string joined;
    for (std::size_t i = 0; i < h.size(); ++i) joined += (i ? "," : "") + h[i];
    EXPECT_EQ(joined,
              "time,oracle_value,order0,cum_order1,cum_order2,cum_order3,mc_estimate,truncation_bound,"
              "observable_bound,delta_total");
}

TEST(Experiment, AmplitudeDampingRows) {
    const auto res = run_experiment(small("amplitude-damping", 2000));
    EXPECT_EQ(res.order, 3);
    ASSERT_EQ(res.rows.size(), 3u);
    for (const auto& r : res.rows) {
        EXPECT_EQ(r.cumulative.size(), 4u);
        EXPECT_DOUBLE_EQ(r.estimate, r.cumulative.back());
        EXPECT_NEAR(r.oracle, 2.0 * std::exp(-0.1 * r.time) - 1.0, 1e-8);
        EXPECT_TRUE(r.within_bounds);
    }
    EXPECT_TRUE(res.check_passed);
    // header + one line per time
    EXPECT_EQ(std::count(res.csv.begin(), res.csv.end(), '\n'), 4);
    EXPECT_TRUE(res.report.contains("results"));
}

TEST(Experiment, DeterministicAcrossWorkers) {
    const auto config = small("two-qubit-local-decay", 500);
    RunOptions opt;
    opt.with_timestamp = false;
    std::vector<std::string> outs;
    for (std::size_t w : {1u, 2u, 8u}) {
        opt.workers = w;
        outs.push_back(format_json(run_experiment(config, opt).report));
    }
    EXPECT_EQ(outs[0], outs[1]);
    EXPECT_EQ(outs[0], outs[2]);
}

TEST(Experiment, CanonicalJsonDropsTimestamp) {
    Json doc = {{"b", 1}, {"a", {1.5, 2.0}}, {"generated_at", "now"}};
    const std::string c = format_json(doc, true);
    EXPECT_EQ(c.find("generated_at"), std::string::npos);
    EXPECT_LT(c.find("\"a\""), c.find("\"b\""));
    EXPECT_NE(format_json(doc, false).find("generated_at"), std::string::npos);
}

TEST(Experiment, WritesOutputs) {
    const auto res = run_experiment(small("amplitude-damping", 200));
    const auto dir = std::filesystem::temp_directory_path() / "dysonsim_test_outputs";
    std::filesystem::remove_all(dir);
    write_outputs(res, dir.string());
    std::ifstream csv(dir / "series.csv");
    std::stringstream ss;
    ss << csv.rdbuf();
    EXPECT_EQ(ss.str(), res.csv);
    std::ifstream js(dir / "report.json");
    EXPECT_NO_THROW(Json::parse(js));
    std::filesystem::remove_all(dir);
}

TEST(Experiment, NonHermitianPreset) {
    const auto res = run_experiment(preset_config("non-hermitian-feshbach"));
    EXPECT_TRUE(res.check_passed);
    for (const auto& r : res.rows) EXPECT_LE(std::abs(r.estimate - r.oracle), r.truncation_bound + 1e-6);
}

TEST(Experiment, DescribeConfig) {
    const std::string d = describe_config(preset_config("dephasing-sigma-z"));
    EXPECT_NE(d.find("dephasing-sigma-z"), std::string::npos);
}
