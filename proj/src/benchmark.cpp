#include "divsearch/benchmark.hpp"

#include "divsearch/gen_cluster.hpp"
#include "divsearch/oracles.hpp"
#include "divsearch/random.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <limits>
#include <ostream>

namespace divsearch {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

struct RunContext {
    const BenchmarkConfig& config;
    BenchmarkReport& report;
};

BenchmarkRow base_row(const std::string& sweep, const std::string& algorithm, const PreparedDataset& data,
                      std::size_t query_index, const SearchParams& params) {
    BenchmarkRow row;
    row.sweep = sweep;
    row.algorithm = algorithm;
    row.dataset = data.name;
    row.query_index = query_index;
    row.corpus_size = data.corpus.size();
    row.lambda = params.lambda;
    row.epsilon = params.epsilon0;
    row.k_min = params.k_min;
    row.k_max = params.k_max;
    return row;
}

void run_point(RunContext& ctx, const std::string& sweep, Algorithm algo, const PreparedDataset& data,
               std::size_t query_index, const std::string& query, const SearchParams& params) {
    auto row = base_row(sweep, std::string(to_string(algo)), data, query_index, params);
    row.preprocess_ms = algo == Algorithm::Cb2s ? data.model_ms : data.index_ms;
    try {
        params.validate();
        std::vector<double> times;
        SearchOutcome outcome;
        for (std::size_t r = 0; r < std::max<std::size_t>(ctx.config.repeat, 1); ++r) {
            const auto start = Clock::now();
            auto o = run_algorithm(algo, data, query, params, ctx.config.seed);
            times.push_back(elapsed_ms(start));
            if (r == 0) outcome = std::move(o);
        }
        row.query_ms = median(times);
        row.result_count = outcome.quality.result_count;
        row.arg_sim = outcome.quality.arg_sim;
        row.arg_div = outcome.quality.arg_div;
        row.f_value = outcome.quality.f_value;
        row.exhausted = outcome.exhausted;
    } catch (const std::exception& e) {
        row.status = "error";
        row.error = e.what();
    }
    ctx.report.rows.push_back(std::move(row));
}

void run_grid(RunContext& ctx, const std::string& sweep, const PreparedDataset& data,
              const std::vector<std::string>& queries, const std::vector<SearchParams>& points) {
    for (const auto& params : points)
        for (auto algo : ctx.config.algorithms)
            for (std::size_t q = 0; q < queries.size(); ++q) run_point(ctx, sweep, algo, data, q, queries[q], params);
}

void run_index_vs_scan(RunContext& ctx, const PreparedDataset& data, const std::vector<std::string>& queries,
                       std::size_t epsilon) {
    SearchParams params = ctx.config.defaults;
    params.epsilon0 = epsilon;
    for (std::size_t q = 0; q < queries.size(); ++q) {
        for (const char* method : {"index", "scan"}) {
            auto row = base_row("index_vs_scan", method, data, q, params);
            row.preprocess_ms = std::string(method) == "index" ? data.index_ms : 0.0;
            try {
                std::vector<double> times;
                std::size_t found = 0;
                for (std::size_t r = 0; r < std::max<std::size_t>(ctx.config.repeat, 1); ++r) {
                    const auto start = Clock::now();
                    found = std::string(method) == "index" ? similarity_query(*data.index, queries[q], epsilon).size()
                                                           : brute_force_neighbors(data.corpus, queries[q], epsilon).size();
                    times.push_back(elapsed_ms(start));
                }
                row.query_ms = median(times);
                row.result_count = found;
            } catch (const std::exception& e) {
                row.status = "error";
                row.error = e.what();
            }
            ctx.report.rows.push_back(std::move(row));
        }
    }
}

std::vector<std::string> pick_queries(const BenchmarkConfig& config, const DatasetSpec& spec, const Corpus& corpus) {
    if (const auto* gen = std::get_if<RandomDatasetConfig>(&spec.source))
        return generate_random_queries(*gen, config.query_count, config.query_seed);
    Rng rng(config.query_seed);
    std::vector<std::string> out;
    for (auto p : sample_without_replacement(rng, corpus.size(), config.query_count))
        out.emplace_back(corpus.text(static_cast<RecordId>(p)));
    return out;
}

}  // namespace

std::string_view to_string(Algorithm algo) noexcept {
    switch (algo) {
        case Algorithm::Greedy: return "greedy";
        case Algorithm::Cluster: return "cluster";
        case Algorithm::Cb2s: return "cb2s";
    }
    return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
    if (name == "greedy" || name == "genGreedy") return Algorithm::Greedy;
    if (name == "cluster" || name == "genCluster") return Algorithm::Cluster;
    if (name == "cb2s" || name == "CB2S") return Algorithm::Cb2s;
    return std::nullopt;
}

std::unique_ptr<PreparedDataset> prepare_dataset(std::string name, Corpus corpus, std::size_t gram_len,
                                                 const ClusterModelConfig& model_config, bool need_index,
                                                 bool need_model) {
    auto data = std::make_unique<PreparedDataset>();
    data->name = std::move(name);
    data->corpus = std::move(corpus);
    if (need_index) {
        const auto start = Clock::now();
        data->index.emplace(build_index(data->corpus, gram_len));
        data->index_ms = elapsed_ms(start);
    }
    if (need_model) {
        const auto start = Clock::now();
        data->model.emplace(build_cluster_model(data->corpus, model_config));
        data->model_ms = elapsed_ms(start);
    }
    return data;
}

SearchOutcome run_algorithm(Algorithm algo, const PreparedDataset& data, std::string_view query,
                            const SearchParams& params, std::uint64_t seed) {
    switch (algo) {
        case Algorithm::Greedy:
            if (!data.index) throw Error(ErrorKind::InvalidParams, "greedy needs an inverted index");
            return gen_greedy(query, params, *data.index, GreedyOptions{seed});
        case Algorithm::Cluster:
            if (!data.index) throw Error(ErrorKind::InvalidParams, "cluster needs an inverted index");
            return gen_cluster(query, params, *data.index);
        case Algorithm::Cb2s:
            if (!data.model) throw Error(ErrorKind::InvalidParams, "cb2s needs a cluster model");
            return cb2s_search(query, params, *data.model, data.corpus);
    }
    throw Error(ErrorKind::InvalidParams, "unknown algorithm");
}

double median(std::vector<double> values) {
    if (values.empty()) return 0.0;
    const auto mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    double hi = values[mid];
    if (values.size() % 2 == 1) return hi;
    double lo = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lo + hi);
}

BenchmarkConfig BenchmarkConfig::from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
    BenchmarkConfig c;
    try {
        for (const auto& d : j.at("datasets")) {
            Dataset ds;
            ds.name = d.at("name").get<std::string>();
            ds.spec.label = d.value("label", std::string("random"));
            if (d.contains("generate")) {
                const auto& g = d.at("generate");
                RandomDatasetConfig gen;
                gen.n = g.at("n").get<std::size_t>();
                gen.min_len = g.at("min_len").get<std::size_t>();
                gen.max_len = g.at("max_len").get<std::size_t>();
                gen.alphabet = g.value("alphabet", gen.alphabet);
                gen.seed = g.value("seed", std::uint64_t{0});
                ds.spec.source = gen;
            } else {
                std::filesystem::path p = d.at("path").get<std::string>();
                ds.spec.source = p.is_relative() ? base_dir / p : p;
                ds.spec.ingest.mode = d.value("mode", std::string("raw")) == "word" ? IngestMode::WordMode : IngestMode::RawLine;
                if (d.contains("stop_words")) ds.spec.ingest.stop_words = d.at("stop_words").get<std::vector<std::string>>();
                ds.spec.ingest.max_record_length = d.value("max_record_length", ds.spec.ingest.max_record_length);
            }
            c.datasets.push_back(std::move(ds));
        }
        if (j.contains("algorithms")) {
            c.algorithms.clear();
            for (const auto& a : j.at("algorithms")) {
                auto algo = parse_algorithm(a.get<std::string>());
                if (!algo) throw Error(ErrorKind::InvalidParams, "unknown algorithm " + a.get<std::string>());
                c.algorithms.push_back(*algo);
            }
        }
        if (j.contains("queries")) {
            c.query_count = j["queries"].value("count", c.query_count);
            c.query_seed = j["queries"].value("seed", c.query_seed);
        }
        if (j.contains("defaults")) {
            const auto& d = j.at("defaults");
            auto& p = c.defaults;
            p.lambda = d.value("lambda", p.lambda);
            p.k_min = d.value("k_min", p.k_min);
            p.k_max = d.value("k_max", p.k_max);
            p.epsilon0 = d.value("epsilon", p.epsilon0);
            p.sigma = d.value("sigma", p.sigma);
            p.omega = d.value("omega", p.omega);
            p.gram_len = d.value("gram_len", p.gram_len);
            c.seed = d.value("seed", c.seed);
            p.validate();
        }
        if (j.contains("model")) {
            const auto& m = j.at("model");
            c.model.dims = m.value("dims", c.model.dims);
            c.model.clusters = m.value("clusters", c.model.clusters);
            c.model.seed = m.value("seed", c.model.seed);
            c.model.sample_rate = m.value("sample_rate", c.model.sample_rate);
            c.model.max_iters = m.value("max_iters", c.model.max_iters);
        }
        c.repeat = j.value("repeat", c.repeat);
        if (j.contains("sweeps")) {
            const auto& s = j.at("sweeps");
            if (s.contains("lambda")) c.lambda_grid = s.at("lambda").get<std::vector<double>>();
            if (s.contains("k")) c.k_grid = s.at("k").get<std::vector<std::pair<std::size_t, std::size_t>>>();
            if (s.contains("epsilon")) c.epsilon_grid = s.at("epsilon").get<std::vector<std::size_t>>();
            c.result_count = s.value("result_count", false);
            if (s.contains("data_size")) c.size_grid = s.at("data_size").get<std::vector<std::size_t>>();
            if (s.contains("index_vs_scan")) c.index_vs_scan_epsilon = s.at("index_vs_scan").at("epsilon").get<std::size_t>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidParams, std::string("bad benchmark config: ") + e.what());
    }
    return c;
}

BenchmarkReport run_benchmark(const BenchmarkConfig& config) {
    BenchmarkReport report;
    RunContext ctx{config, report};
    const bool need_index = config.index_vs_scan_epsilon.has_value() ||
                            std::any_of(config.algorithms.begin(), config.algorithms.end(),
                                        [](Algorithm a) { return a != Algorithm::Cb2s; });
    const bool need_model = std::find(config.algorithms.begin(), config.algorithms.end(), Algorithm::Cb2s) !=
                            config.algorithms.end();

    for (const auto& ds : config.datasets) {
        auto corpus = load_dataset(ds.spec);
        const auto queries = pick_queries(config, ds.spec, corpus);
        const std::vector<std::string> texts = corpus.texts();
        auto data = prepare_dataset(ds.name, std::move(corpus), config.defaults.gram_len, config.model, need_index,
                                    need_model);

        auto vary = [&](auto&& mutate, const auto& grid) {
            std::vector<SearchParams> points;
            for (const auto& v : grid) {
                SearchParams p = config.defaults;
                mutate(p, v);
                points.push_back(p);
            }
            return points;
        };
        if (!config.lambda_grid.empty())
            run_grid(ctx, "lambda", *data, queries, vary([](SearchParams& p, double l) { p.lambda = l; }, config.lambda_grid));
        if (!config.k_grid.empty())
            run_grid(ctx, "k", *data, queries,
                     vary([](SearchParams& p, const std::pair<std::size_t, std::size_t>& k) {
                         p.k_min = k.first;
                         p.k_max = k.second;
                     }, config.k_grid));
        if (!config.epsilon_grid.empty())
            run_grid(ctx, "epsilon", *data, queries,
                     vary([](SearchParams& p, std::size_t e) { p.epsilon0 = e; }, config.epsilon_grid));
        if (config.result_count) run_grid(ctx, "result_count", *data, queries, {config.defaults});
        if (config.index_vs_scan_epsilon) run_index_vs_scan(ctx, *data, queries, *config.index_vs_scan_epsilon);

        for (std::size_t n : config.size_grid) {
            n = std::min(n, texts.size());
            auto subset = prepare_dataset(ds.name, Corpus(std::vector<std::string>(texts.begin(), texts.begin() + static_cast<std::ptrdiff_t>(n))),
                                          config.defaults.gram_len, config.model, need_index, need_model);
            run_grid(ctx, "data_size", *subset, queries, {config.defaults});
        }
    }
    return report;
}

void write_csv(const BenchmarkReport& report, std::ostream& out) {
    out << "sweep,algorithm,dataset,query_index,corpus_size,lambda,epsilon,k_min,k_max,result_count,"
           "arg_sim,arg_div,f_value,query_ms,preprocess_ms,exhausted,status,error\n";
    const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
    for (const auto& r : report.rows) {
        out << csv_field(r.sweep) << ',' << csv_field(r.algorithm) << ',' << csv_field(r.dataset) << ','
            << r.query_index << ',' << r.corpus_size << ',' << r.lambda << ',' << r.epsilon << ',' << r.k_min << ','
            << r.k_max << ',' << r.result_count << ',' << r.arg_sim << ',' << r.arg_div << ',' << r.f_value << ','
            << r.query_ms << ',' << r.preprocess_ms << ',' << (r.exhausted ? 1 : 0) << ',' << r.status << ','
            << csv_field(r.error) << '\n';
    }
    out.precision(old_precision);
}

nlohmann::json to_json(const BenchmarkReport& report) {
    auto rows = nlohmann::json::array();
    for (const auto& r : report.rows) {
        rows.push_back({{"sweep", r.sweep},           {"algorithm", r.algorithm},
                        {"dataset", r.dataset},       {"query_index", r.query_index},
                        {"corpus_size", r.corpus_size}, {"lambda", r.lambda},
                        {"epsilon", r.epsilon},       {"k_min", r.k_min},
                        {"k_max", r.k_max},           {"result_count", r.result_count},
                        {"arg_sim", r.arg_sim},       {"arg_div", r.arg_div},
                        {"f_value", r.f_value},       {"query_ms", r.query_ms},
                        {"preprocess_ms", r.preprocess_ms}, {"exhausted", r.exhausted},
                        {"status", r.status},         {"error", r.error}});
    }
    return nlohmann::json{{"rows", rows}};
}

}  // namespace divsearch
