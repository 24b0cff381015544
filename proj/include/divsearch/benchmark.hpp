#pragma once

#include "divsearch/cb2s.hpp"
#include "divsearch/dataset.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace divsearch {

enum class Algorithm { Greedy, Cluster, Cb2s };

std::string_view to_string(Algorithm algo) noexcept;
/// Accepts greedy|cluster|cb2s (and genGreedy|genCluster|CB2S).
std::optional<Algorithm> parse_algorithm(std::string_view name);

/// Offline artifacts for one corpus.
struct PreparedDataset {
    std::string name;
    Corpus corpus;
    std::optional<InvertedIndex> index;
    std::optional<ClusterModel> model;
    double index_ms = 0.0;
    double model_ms = 0.0;
};

/// Builds whatever `algorithms` need. The returned object owns the corpus the
/// index refers to, so it is returned by pointer to keep that address fixed.
std::unique_ptr<PreparedDataset> prepare_dataset(std::string name, Corpus corpus,
                                                 std::size_t gram_len,
                                                 const ClusterModelConfig& model_config,
                                                 bool need_index, bool need_model);

/// Runs one algorithm against prepared artifacts.
SearchOutcome run_algorithm(Algorithm algo, const PreparedDataset& data, std::string_view query,
                            const SearchParams& params, std::uint64_t seed);

struct BenchmarkRow {
    std::string sweep;
    std::string algorithm;
    std::string dataset;
    std::size_t query_index = 0;
    std::size_t corpus_size = 0;
    double lambda = 0.0;
    std::size_t epsilon = 0;
    std::size_t k_min = 0;
    std::size_t k_max = 0;
    std::size_t result_count = 0;
    double arg_sim = 0.0;
    double arg_div = 0.0;
    double f_value = 0.0;
    double query_ms = 0.0;
    double preprocess_ms = 0.0;
    bool exhausted = false;
    std::string status = "ok";
    std::string error;
};

struct BenchmarkReport {
    std::vector<BenchmarkRow> rows;
};

/// Grid description; see README for the JSON layout.
struct BenchmarkConfig {
    struct Dataset {
        std::string name;
        DatasetSpec spec;
    };
    std::vector<Dataset> datasets;
    std::vector<Algorithm> algorithms{Algorithm::Greedy, Algorithm::Cluster, Algorithm::Cb2s};
    std::size_t query_count = 10;
    std::uint64_t query_seed = 7;
    SearchParams defaults = SearchParams::make(0.5, 25, 55, 30);
    std::uint64_t seed = 0;
    ClusterModelConfig model;
    std::size_t repeat = 1;

    std::vector<double> lambda_grid;
    std::vector<std::pair<std::size_t, std::size_t>> k_grid;
    std::vector<std::size_t> epsilon_grid;
    bool result_count = false;
    std::vector<std::size_t> size_grid;
    std::optional<std::size_t> index_vs_scan_epsilon;

    /// Relative dataset paths resolve against `base_dir`. Throws
    /// Error{InvalidParams} on a malformed config.
    static BenchmarkConfig from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
};

double median(std::vector<double> values);

/// Executes every configured sweep. Failures of single runs become rows with
/// status "error" instead of aborting.
BenchmarkReport run_benchmark(const BenchmarkConfig& config);

void write_csv(const BenchmarkReport& report, std::ostream& out);
nlohmann::json to_json(const BenchmarkReport& report);

}  // namespace divsearch
