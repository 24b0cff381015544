#include "divsearch/benchmark.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace divsearch {
namespace {

nlohmann::json small_config() {
    return nlohmann::json::parse(R"({
        "datasets": [{"name": "rand", "generate": {"n": 400, "min_len": 6, "max_len": 16, "alphabet": "abcdef", "seed": 3}}],
        "queries": {"count": 1, "seed": 5},
        "defaults": {"lambda": 0.5, "k_min": 5, "k_max": 12, "epsilon": 2},
        "model": {"clusters": 4}
    })");
}

TEST(Benchmark, Median) {
    EXPECT_DOUBLE_EQ(median({5.0, 1.0, 4.0, 2.0, 3.0}), 3.0);
    EXPECT_DOUBLE_EQ(median({4.0, 1.0}), 2.5);
    EXPECT_DOUBLE_EQ(median({7.0}), 7.0);
}

TEST(Benchmark, ParseAlgorithm) {
    EXPECT_EQ(parse_algorithm("greedy"), Algorithm::Greedy);
    EXPECT_EQ(parse_algorithm("CB2S"), Algorithm::Cb2s);
    EXPECT_EQ(parse_algorithm("genCluster"), Algorithm::Cluster);
    EXPECT_FALSE(parse_algorithm("swap").has_value());
    EXPECT_EQ(to_string(Algorithm::Cluster), "cluster");
}

TEST(Benchmark, LambdaSweepRowCountAndConsistency) {
    auto j = small_config();
    j["sweeps"] = {{"lambda", {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}}};
    auto report = run_benchmark(BenchmarkConfig::from_json(j));
    ASSERT_EQ(report.rows.size(), 27u);
    for (const auto& r : report.rows) {
        EXPECT_EQ(r.status, "ok") << r.error;
        EXPECT_EQ(r.sweep, "lambda");
        EXPECT_NEAR(r.f_value, r.lambda * r.arg_div - (1.0 - r.lambda) * r.arg_sim, 1e-9);
        EXPECT_GE(r.result_count, 5u);
        EXPECT_LE(r.result_count, 12u);
        EXPECT_EQ(r.corpus_size, 400u);
    }

    std::ostringstream csv;
    write_csv(report, csv);
    std::size_t lines = 0;
    for (char c : csv.str()) lines += c == '\n';
    EXPECT_EQ(lines, 28u);
    EXPECT_EQ(to_json(report)["rows"].size(), 27u);
}

TEST(Benchmark, SeedDeterministicApartFromTiming) {
    auto j = small_config();
    j["sweeps"] = {{"epsilon", {1, 3}}, {"result_count", true}};
    auto a = run_benchmark(BenchmarkConfig::from_json(j));
    auto b = run_benchmark(BenchmarkConfig::from_json(j));
    ASSERT_EQ(a.rows.size(), b.rows.size());
    ASSERT_EQ(a.rows.size(), 9u);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        EXPECT_EQ(a.rows[i].f_value, b.rows[i].f_value);
        EXPECT_EQ(a.rows[i].result_count, b.rows[i].result_count);
        EXPECT_EQ(a.rows[i].algorithm, b.rows[i].algorithm);
    }
}

TEST(Benchmark, OtherSweeps) {
    auto j = small_config();
    j["repeat"] = 5;
    j["algorithms"] = {"greedy", "cb2s"};
    j["sweeps"] = {{"k", {{3, 6}, {8, 4}}}, {"data_size", {100, 200}}, {"index_vs_scan", {{"epsilon", 2}}}};
    auto report = run_benchmark(BenchmarkConfig::from_json(j));
    std::size_t k_rows = 0, k_errors = 0, size_rows = 0, scan_rows = 0;
    for (const auto& r : report.rows) {
        if (r.sweep == "k") {
            ++k_rows;
            if (r.k_min == 8) {
                EXPECT_EQ(r.status, "error");
                ++k_errors;
            }
        } else if (r.sweep == "data_size") {
            ++size_rows;
            EXPECT_TRUE(r.corpus_size == 100 || r.corpus_size == 200);
        } else if (r.sweep == "index_vs_scan") {
            ++scan_rows;
        }
        EXPECT_GE(r.query_ms, 0.0);
    }
    EXPECT_EQ(k_rows, 4u);
    EXPECT_EQ(k_errors, 2u);
    EXPECT_EQ(size_rows, 4u);
    EXPECT_EQ(scan_rows, 2u);
}

TEST(Benchmark, BadConfig) {
    EXPECT_THROW(BenchmarkConfig::from_json(nlohmann::json::parse(R"({"datasets": 3})")), Error);
    EXPECT_THROW(BenchmarkConfig::from_json(nlohmann::json::parse(R"({"datasets": [], "algorithms": ["swap"]})")), Error);
}

}  // namespace
}  // namespace divsearch
