// divsearch command-line front end: index/model building, single queries,
// benchmark sweeps and synthetic data generation.

#include "divsearch/benchmark.hpp"
#include "divsearch/gen_cluster.hpp"
#include "divsearch/persistence.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace divsearch;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitExhausted = 3;

int exit_code_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::InvalidParams:
        case ErrorKind::TooManyCandidates: return kExitUsage;
        default: return kExitData;
    }
}

struct DatasetArgs {
    std::string path;
    bool word_mode = false;
    std::size_t max_record_length = 4096;

    void attach(CLI::App* cmd) {
        cmd->add_option("--dataset", path, "Line-oriented dataset file")->required();
        cmd->add_flag("--word-mode", word_mode, "Lowercase and strip stop words while ingesting");
        cmd->add_option("--max-record-length", max_record_length, "Reject longer records");
    }

    Corpus load() const {
        IngestOptions opts;
        opts.mode = word_mode ? IngestMode::WordMode : IngestMode::RawLine;
        opts.max_record_length = max_record_length;
        IngestSummary summary;
        auto corpus = load_dataset(path, opts, &summary);
        if (summary.too_long_rejected > 0 || summary.blank_skipped > 0)
            std::cerr << "ingested " << summary.records << " records (" << summary.blank_skipped
                      << " blank skipped, " << summary.too_long_rejected << " over length cap)\n";
        return corpus;
    }
};

void print_outcome(const std::string& algo, const SearchParams& params, const SearchOutcome& outcome,
                   bool as_json) {
    if (as_json) {
        nlohmann::json members = nlohmann::json::array();
        for (const auto& m : outcome.result.members)
            members.push_back({{"id", m.id}, {"distance", m.dist_to_query}, {"text", m.text}});
        nlohmann::json j{{"algorithm", algo},
                         {"query", outcome.result.query},
                         {"lambda", params.lambda},
                         {"k_min", params.k_min},
                         {"k_max", params.k_max},
                         {"epsilon", params.epsilon0},
                         {"epsilon_final", outcome.epsilon_final},
                         {"pool_size", outcome.pool_size},
                         {"exhausted", outcome.exhausted},
                         {"result_count", outcome.quality.result_count},
                         {"arg_sim", outcome.quality.arg_sim},
                         {"arg_div", outcome.quality.arg_div},
                         {"f_value", outcome.quality.f_value},
                         {"members", members}};
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::cout << "# algorithm=" << algo << " results=" << outcome.quality.result_count
              << " arg_sim=" << outcome.quality.arg_sim << " arg_div=" << outcome.quality.arg_div
              << " F=" << outcome.quality.f_value << (outcome.exhausted ? " exhausted" : "") << '\n';
    for (const auto& m : outcome.result.members) std::cout << m.id << '\t' << m.dist_to_query << '\t' << m.text << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Similarity search with query relaxation and result diversification"};
    app.require_subcommand(1);

    // index build
    auto* index_cmd = app.add_subcommand("index", "Inverted q-gram index");
    index_cmd->require_subcommand(1);
    auto* index_build = index_cmd->add_subcommand("build", "Build and persist an index");
    DatasetArgs index_data;
    index_data.attach(index_build);
    std::size_t gram_len = 2;
    std::string index_out;
    index_build->add_option("--gram-len", gram_len, "q-gram length")->check(CLI::PositiveNumber);
    index_build->add_option("--out", index_out, "Output file")->required();

    // model build
    auto* model_cmd = app.add_subcommand("model", "CB2S cluster model");
    model_cmd->require_subcommand(1);
    auto* model_build = model_cmd->add_subcommand("build", "Build and persist a cluster model");
    DatasetArgs model_data;
    model_data.attach(model_build);
    ClusterModelConfig model_cfg;
    std::string model_out;
    model_build->add_option("--dims", model_cfg.dims, "Feature dimension")->check(CLI::PositiveNumber);
    model_build->add_option("--clusters", model_cfg.clusters, "Cluster count (0 = size-based default)");
    model_build->add_option("--seed", model_cfg.seed, "Seed");
    model_build->add_option("--sample-rate", model_cfg.sample_rate, "KNN training sample rate");
    model_build->add_option("--max-iters", model_cfg.max_iters, "k-means iteration cap");
    model_build->add_option("--out", model_out, "Output file")->required();

    // query
    auto* query_cmd = app.add_subcommand("query", "Run one diversified similarity query");
    DatasetArgs query_data;
    query_data.attach(query_cmd);
    std::string algo_name, index_in, model_in, query_text;
    SearchParams params;
    std::uint64_t seed = 0;
    bool as_json = false;
    query_cmd->add_option("--algo", algo_name, "greedy | cluster | cb2s")
        ->required()
        ->check(CLI::IsMember({"greedy", "cluster", "cb2s"}));
    query_cmd->add_option("--index", index_in, "Prebuilt index (greedy, cluster)");
    query_cmd->add_option("--model", model_in, "Prebuilt cluster model (cb2s)");
    query_cmd->add_option("--q", query_text, "Query string")->required();
    query_cmd->add_option("--kmin", params.k_min, "Minimum result count");
    query_cmd->add_option("--kmax", params.k_max, "Maximum result count");
    query_cmd->add_option("--lambda", params.lambda, "Similarity/diversity trade-off");
    query_cmd->add_option("--epsilon", params.epsilon0, "Initial edit-distance threshold");
    query_cmd->add_option("--sigma", params.sigma, "Sampling / cluster pruning ratio");
    query_cmd->add_option("--omega", params.omega, "Prune threshold scale");
    query_cmd->add_option("--gram-len", params.gram_len, "q-gram length when building the index on the fly");
    query_cmd->add_option("--seed", seed, "Sampling seed");
    query_cmd->add_flag("--json", as_json, "Emit JSON");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Run benchmark sweeps from a JSON config");
    std::string bench_config, bench_out;
    bench_cmd->add_option("--config", bench_config, "Benchmark config (JSON)")->required()->check(CLI::ExistingFile);
    bench_cmd->add_option("--out-dir", bench_out, "Directory for report.csv and report.json")->required();

    // gen-random
    auto* gen_cmd = app.add_subcommand("gen-random", "Write a seeded random dataset");
    RandomDatasetConfig gen;
    std::string gen_out;
    gen_cmd->add_option("--n", gen.n, "Record count")->required();
    gen_cmd->add_option("--min-len", gen.min_len, "Minimum length")->required();
    gen_cmd->add_option("--max-len", gen.max_len, "Maximum length")->required();
    gen_cmd->add_option("--alphabet", gen.alphabet, "Characters to draw from");
    gen_cmd->add_option("--seed", gen.seed, "Seed");
    gen_cmd->add_option("--out", gen_out, "Output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (index_build->parsed()) {
            auto corpus = index_data.load();
            auto index = build_index(corpus, gram_len);
            save_index(index, index_out);
            std::cerr << "indexed " << corpus.size() << " records, " << index.postings().size() << " grams\n";
        } else if (model_build->parsed()) {
            auto corpus = model_data.load();
            auto model = build_cluster_model(corpus, model_cfg);
            save_model(model, corpus, model_out);
            std::cerr << "clustered " << corpus.size() << " records into " << model.cluster_count() << " clusters\n";
        } else if (query_cmd->parsed()) {
            params.validate();
            auto corpus = query_data.load();
            SearchOutcome outcome;
            if (algo_name == "cb2s") {
                auto model = model_in.empty() ? build_cluster_model(corpus, ClusterModelConfig{})
                                              : load_model(model_in, corpus);
                outcome = cb2s_search(query_text, params, model, corpus);
            } else {
                auto index = index_in.empty() ? build_index(corpus, params.gram_len) : load_index(index_in, corpus);
                if (index.gram_len() != params.gram_len) params.gram_len = index.gram_len();
                outcome = algo_name == "greedy" ? gen_greedy(query_text, params, index, GreedyOptions{seed})
                                                : gen_cluster(query_text, params, index);
            }
            print_outcome(algo_name, params, outcome, as_json);
            if (outcome.result.size() < params.k_min) return kExitExhausted;
        } else if (bench_cmd->parsed()) {
            std::ifstream in(bench_config);
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(in);
            } catch (const nlohmann::json::exception& e) {
                throw Error(ErrorKind::InvalidParams, std::string("cannot parse config: ") + e.what());
            }
            auto config = BenchmarkConfig::from_json(j, std::filesystem::path(bench_config).parent_path());
            auto report = run_benchmark(config);
            std::filesystem::create_directories(bench_out);
            std::ofstream csv(std::filesystem::path(bench_out) / "report.csv");
            write_csv(report, csv);
            std::ofstream js(std::filesystem::path(bench_out) / "report.json");
            js << to_json(report).dump(2) << '\n';
            if (!csv || !js) throw Error(ErrorKind::Io, "failed to write report to " + bench_out);
            std::cerr << "wrote " << report.rows.size() << " rows to " << bench_out << '\n';
        } else if (gen_cmd->parsed()) {
            write_dataset(generate_random_dataset(gen), gen_out);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitOk;
}
