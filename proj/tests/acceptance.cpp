// Acceptance run: one PASS/FAIL line per criterion. Exit status is non-zero
// when any criterion fails.

#include "divsearch/alignment.hpp"
#include "divsearch/benchmark.hpp"
#include "divsearch/cb2s.hpp"
#include "divsearch/dataset.hpp"
#include "divsearch/edit_distance.hpp"
#include "divsearch/gen_cluster.hpp"
#include "divsearch/oracles.hpp"
#include "divsearch/persistence.hpp"

#include "test_support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

namespace {

using namespace divsearch;
using Clock = std::chrono::steady_clock;

// Pinned tolerances and workload sizes.
constexpr double kFloatTolerance = 1e-9;
constexpr std::size_t kPropertyCases = 1000;
constexpr double kMinIndexSpeedup = 2.0;
constexpr double kGreedyQualityRatio = 0.8;
constexpr std::size_t kGreedyInstances = 50;
constexpr std::size_t kMaxPoolForOracle = 12;
constexpr std::size_t kLargeCorpus = 50'000;
constexpr std::size_t kMediumCorpus = 10'000;

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const Outcome& o, double seconds) {
    std::printf("%s criterion %d: %s (%s) [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, title.c_str(),
                o.detail.c_str(), seconds);
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

void run(int id, const std::string& title, const std::function<Outcome()>& body) {
    const auto start = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("threw: ") + e.what()};
    }
    report(id, title, o, std::chrono::duration<double>(Clock::now() - start).count());
}

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

RandomDatasetConfig synthetic(std::size_t n) { return RandomDatasetConfig{n, 40, 200, "abcdefghijklmnopqrstuvwxyz", 2024}; }

SearchParams defaults() { return SearchParams::make(0.5, 25, 55, 40); }

SearchOutcome run_algo(const std::string& algo, std::string_view q, const SearchParams& p, const InvertedIndex& idx,
                       const ClusterModel& model, const Corpus& corpus) {
    if (algo == "greedy") return gen_greedy(q, p, idx);
    if (algo == "cluster") return gen_cluster(q, p, idx);
    return cb2s_search(q, p, model, corpus);
}

const std::vector<std::string> kAlgorithms{"greedy", "cluster", "cb2s"};

// ---------------------------------------------------------------------------

Outcome result_count_guarantee(const Corpus& corpus, const InvertedIndex& idx, const ClusterModel& model) {
    const auto queries = generate_random_queries(synthetic(kMediumCorpus), 20, 11);
    const auto p = defaults();
    std::size_t violations = 0;
    std::ostringstream sizes;
    for (const auto& algo : kAlgorithms) {
        std::size_t lo = SIZE_MAX, hi = 0;
        for (const auto& q : queries) {
            const auto n = run_algo(algo, q, p, idx, model, corpus).result.size();
            lo = std::min(lo, n);
            hi = std::max(hi, n);
            violations += n < p.k_min || n > p.k_max;
        }
        sizes << algo << " [" << lo << "," << hi << "] ";
    }
    sizes << "violations=" << violations;
    return {violations == 0, sizes.str()};
}

Outcome oracle_equivalence() {
    std::mt19937_64 rng(2);
    std::size_t checks = 0, mismatches = 0;
    const std::vector<std::pair<std::string, std::pair<std::size_t, std::size_t>>> shapes{
        {"abcd", {0, 30}}, {"acgt", {20, 60}}, {"abcdefghijklmnopqrstuvwxyz", {5, 40}}};
    for (const auto& [alphabet, len] : shapes) {
        auto corpus = divsearch::testing::random_corpus(rng, 1000, len.first, len.second, alphabet);
        auto idx = build_index(corpus, 2);
        for (int i = 0; i < 30; ++i) {
            const auto& base = corpus.texts()[rng() % corpus.size()];
            auto q = i % 3 == 0 ? divsearch::testing::random_string(rng, len.first, len.second, alphabet)
                                : divsearch::testing::mutate(rng, base, rng() % 8, alphabet);
            for (std::size_t eps : {0u, 1u, 2u, 5u, 10u}) {
                ++checks;
                mismatches += similarity_query(idx, q, eps) != brute_force_neighbors(corpus, q, eps);
            }
        }
    }
    return {mismatches == 0, std::to_string(checks) + " neighbourhoods, " + std::to_string(mismatches) + " mismatches"};
}

Outcome sp_example() {
    SubstitutionMatrix m{{"---gttag", "acag---g", "-cagttag"}, '-'};
    const auto s12 = score_aligned_pair(m.rows[0], m.rows[1]);
    const auto s13 = score_aligned_pair(m.rows[0], m.rows[2]);
    const auto s23 = score_aligned_pair(m.rows[1], m.rows[2]);
    const auto total = sp_score(m);
    std::ostringstream d;
    d << "pairs " << s12 << "/" << s13 << "/" << s23 << " total " << total;
    return {s12 == -4 && s13 == 3 && s23 == 0 && total == -1, d.str()};
}

Outcome lambda_monotonicity(const Corpus& corpus, const InvertedIndex& idx, const ClusterModel& model) {
    const auto queries = generate_random_queries(synthetic(kMediumCorpus), 10, 12);
    bool ok = true;
    std::ostringstream d;
    for (const auto& algo : kAlgorithms) {
        std::vector<double> mean_f;
        for (int step = 1; step <= 9; ++step) {
            auto p = defaults();
            p.lambda = step / 10.0;
            double sum = 0.0;
            for (const auto& q : queries) sum += run_algo(algo, q, p, idx, model, corpus).quality.f_value;
            mean_f.push_back(sum / static_cast<double>(queries.size()));
        }
        ok = ok && mean_f.back() > mean_f.front();
        d << algo << " F(0.1)=" << mean_f.front() << " F(0.9)=" << mean_f.back() << "; ";
    }
    return {ok, d.str()};
}

Outcome index_speedup(const Corpus& corpus, const InvertedIndex& idx) {
    std::mt19937_64 rng(5);
    std::vector<std::string> queries;
    for (int i = 0; i < 10; ++i)
        queries.push_back(divsearch::testing::mutate(rng, corpus.texts()[rng() % corpus.size()], rng() % 6,
                                                     "abcdefghijklmnopqrstuvwxyz"));
    constexpr std::size_t eps = 5;
    std::vector<double> indexed, scanned;
    std::size_t disagreements = 0;
    for (const auto& q : queries) {
        auto t0 = Clock::now();
        auto a = similarity_query(idx, q, eps);
        indexed.push_back(ms_since(t0));
        t0 = Clock::now();
        auto b = brute_force_neighbors(corpus, q, eps);
        scanned.push_back(ms_since(t0));
        disagreements += a != b;
    }
    const double mi = median(indexed), ms = median(scanned);
    std::ostringstream d;
    d << "index median " << mi << " ms, scan median " << ms << " ms, speedup " << ms / mi << "x";
    return {disagreements == 0 && ms >= kMinIndexSpeedup * mi, d.str()};
}

Outcome runtime_ordering(const Corpus& corpus, const InvertedIndex& idx, const ClusterModel& model) {
    const auto queries = generate_random_queries(synthetic(kLargeCorpus), 10, 13);
    const auto p = defaults();
    std::map<std::string, std::vector<double>> times;
    for (int rep = 0; rep < 5; ++rep)
        for (const auto& q : queries)
            for (const auto& algo : kAlgorithms) {
                const auto t0 = Clock::now();
                run_algo(algo, q, p, idx, model, corpus);
                times[algo].push_back(ms_since(t0));
            }
    const double c = median(times["cb2s"]), g = median(times["greedy"]), k = median(times["cluster"]);
    std::ostringstream d;
    d << "median ms: cb2s " << c << ", greedy " << g << ", cluster " << k;
    return {c < g && g <= k, d.str()};
}

Outcome greedy_vs_exhaustive() {
    std::size_t failed = 0;
    std::ostringstream d;
    double worst = 1e300;
    for (std::uint64_t seed = 0; seed < kGreedyInstances; ++seed) {
        std::mt19937_64 rng(seed);
        const std::size_t n = 6 + rng() % (kMaxPoolForOracle - 5);
        auto corpus = divsearch::testing::random_corpus(rng, n, 3, 14, "abcde");
        auto idx = build_index(corpus, 2);
        const auto q = divsearch::testing::random_string(rng, 3, 14, "abcde");
        const std::size_t kmin = 2 + rng() % 3;
        auto p = SearchParams::make(0.5, kmin, kmin + 2, 1);
        auto out = gen_greedy(q, p, idx, GreedyOptions{seed});
        auto pool = relax(q, p, idx);
        if (pool.size() > kMaxPoolForOracle) throw std::logic_error("pool above oracle cap");
        auto best = brute_force_best_subset(pool.members, corpus, out.result.size(), p);
        const double f = out.quality.f_value;
        // Ratio gate measured against |F_best| so it stays meaningful when F is negative.
        const double gate = best.f_value - (1.0 - kGreedyQualityRatio) * std::abs(best.f_value);
        const double ratio = best.f_value == 0.0 ? (f >= 0.0 ? 1.0 : -1e300) : 1.0 - (best.f_value - f) / std::abs(best.f_value);
        worst = std::min(worst, ratio);
        if (f + kFloatTolerance < gate) {
            ++failed;
            d << "seed " << seed << " F=" << f << " best=" << best.f_value << "; ";
        }
    }
    d << failed << "/" << kGreedyInstances << " below gate, worst relative score " << worst;
    return {failed == 0, d.str()};
}

// ---------------------------------------------------------------------------
// Property suites.

struct Suite {
    std::string name;
    std::function<bool(std::mt19937_64&)> one_case;  // true when the case holds
};

std::vector<Suite> property_suites() {
    using divsearch::testing::random_corpus;
    using divsearch::testing::random_string;
    using divsearch::testing::reference_levenshtein;
    std::vector<Suite> s;

    s.push_back({"metric axioms", [](std::mt19937_64& rng) {
        auto a = random_string(rng, 0, 20), b = random_string(rng, 0, 20), c = random_string(rng, 0, 20);
        const auto ab = edit_distance(a, b);
        const auto gap = a.size() > b.size() ? a.size() - b.size() : b.size() - a.size();
        return ab == reference_levenshtein(a, b) && ab == edit_distance(b, a) &&
               ab <= edit_distance(a, c) + edit_distance(c, b) && ab >= gap &&
               ab <= std::max(a.size(), b.size()) && (ab == 0) == (a == b);
    }});

    s.push_back({"banded distance agrees", [](std::mt19937_64& rng) {
        auto a = random_string(rng, 0, 30, "ab"), b = random_string(rng, 0, 30, "ab");
        const std::size_t bound = rng() % 25;
        const auto full = edit_distance(a, b), banded = edit_distance_within(a, b, bound);
        return full <= bound ? banded == full : banded > bound;
    }});

    s.push_back({"contribution double counting", [](std::mt19937_64& rng) {
        const std::size_t k = 1 + rng() % 10;
        std::vector<std::string> texts;
        for (std::size_t i = 0; i < k; ++i) texts.push_back(random_string(rng, 0, 15));
        auto d = pairwise_distances(texts);
        std::vector<RecordId> ids(k);
        std::iota(ids.begin(), ids.end(), RecordId{0});
        double total = 0.0;
        for (auto id : ids) total += dd_contribution(id, ids, d);
        return std::abs(total - static_cast<double>(k * (k - 1)) * arg_div(d)) <= kFloatTolerance;
    }});

    s.push_back({"objective consistency and lambda monotonicity", [](std::mt19937_64& rng) {
        ResultSet r;
        r.query = random_string(rng, 0, 12);
        const std::size_t k = 1 + rng() % 8;
        for (RecordId i = 0; i < k; ++i) {
            auto t = random_string(rng, 0, 12);
            r.members.push_back({i, t, reference_levenshtein(r.query, t)});
        }
        double prev = -1e300;
        for (int step = 0; step <= 10; ++step) {
            auto p = SearchParams::make(step / 10.0, 1, 10, 0);
            auto q = quality_report(r, p);
            if (std::abs(q.f_value - objective_f(r, p)) > kFloatTolerance) return false;
            if (std::abs(q.f_value - (p.lambda * q.arg_div - (1 - p.lambda) * q.arg_sim)) > kFloatTolerance) return false;
            if (q.f_value < prev - kFloatTolerance) return false;
            prev = q.f_value;
        }
        return true;
    }});

    s.push_back({"count filter completeness", [](std::mt19937_64& rng) {
        auto corpus = random_corpus(rng, 60, 0, 12, "abc");
        auto idx = build_index(corpus, 1 + rng() % 3);
        auto q = divsearch::testing::mutate(rng, corpus.texts()[rng() % 60], rng() % 4, "abc");
        const std::size_t eps = rng() % 6;
        std::set<RecordId> cands;
        for (const auto& c : candidate_lookup(idx, q, eps)) cands.insert(c.id);
        for (RecordId id = 0; id < corpus.size(); ++id)
            if (reference_levenshtein(q, corpus.text(id)) <= eps && !cands.count(id)) return false;
        return true;
    }});

    s.push_back({"relaxation pool bounds", [](std::mt19937_64& rng) {
        auto corpus = random_corpus(rng, 80, 1, 12, "abcd");
        auto idx = build_index(corpus, 2);
        const std::size_t kmin = 1 + rng() % 20;
        auto p = SearchParams::make(static_cast<double>(rng() % 11) / 10, kmin, kmin + rng() % 20, rng() % 3);
        auto q = random_string(rng, 1, 12, "abcd");
        auto r = relax(q, p, idx);
        std::set<RecordId> ids;
        for (const auto& m : r.members)
            if (!ids.insert(m.id).second || m.distance > r.epsilon_final || m.distance != reference_levenshtein(q, corpus.text(m.id)))
                return false;
        if (r.size() > p.pool_cap()) return false;
        // With k_min == k_max and a fractional (lambda + 1) * k the rounded
        // floor sits above the cap; the cap wins.
        return r.exhausted ? r.size() == std::min(corpus.size(), p.pool_cap())
                           : r.size() >= std::min(p.pool_floor(), p.pool_cap());
    }});

    s.push_back({"greedy pruning soundness and determinism", [](std::mt19937_64& rng) {
        auto corpus = random_corpus(rng, 40, 2, 12, "abcd");
        auto idx = build_index(corpus, 2);
        const std::size_t kmin = 1 + rng() % 10;
        auto p = SearchParams::make(static_cast<double>(rng() % 11) / 10, kmin, kmin + rng() % 10, rng() % 3,
                                    0.05 + 0.4 * static_cast<double>(rng() % 100) / 100,
                                    0.51 + 0.48 * static_cast<double>(rng() % 100) / 100);
        auto q = random_string(rng, 2, 12, "abcd");
        GreedyOptions opt{rng()};
        auto a = gen_greedy(q, p, idx, opt);
        auto b = gen_greedy(q, p, idx, opt);
        return a.result.members == b.result.members && a.result.size() >= std::min(p.k_min, a.pool_size);
    }});

    s.push_back({"row-strip recovery", [](std::mt19937_64& rng) {
        const std::size_t n = 1 + rng() % 10;
        std::vector<std::string> texts;
        for (std::size_t i = 0; i < n; ++i) texts.push_back(random_string(rng, 0, 16, rng() % 5 ? "abcd" : "ab-"));
        auto m = progressive_align(build_guide_tree(pairwise_distances(texts)), texts);
        if (m.rows.size() != n) return false;
        for (std::size_t i = 0; i < n; ++i)
            if (m.rows[i].size() != m.width() || m.stripped(i) != texts[i]) return false;
        return true;
    }});

    s.push_back({"motif column optimality", [](std::mt19937_64& rng) {
        const std::size_t n = 1 + rng() % 9;
        std::vector<std::string> texts;
        for (std::size_t i = 0; i < n; ++i) texts.push_back(random_string(rng, 0, 14));
        auto m = progressive_align(build_guide_tree(pairwise_distances(texts)), texts);
        auto motif = build_motif(m);
        std::string kept;
        for (std::size_t c = 0; c < m.width(); ++c) {
            std::map<char, std::size_t> freq;
            for (const auto& r : m.rows) ++freq[r[c]];
            for (const auto& [ch, f] : freq)
                if (f > freq[motif.columns[c]]) return false;
            if (motif.columns[c] != m.placeholder) kept += motif.columns[c];
        }
        return kept == motif.text;
    }});

    s.push_back({"cluster partition", [](std::mt19937_64& rng) {
        auto corpus = random_corpus(rng, 30 + rng() % 50, 2, 12, "abcdef");
        ClusterModelConfig cfg;
        cfg.clusters = 1 + rng() % 6;
        cfg.seed = rng();
        cfg.dims = 8 + rng() % 24;
        auto model = build_cluster_model(corpus, cfg);
        std::vector<int> seen(corpus.size(), 0);
        for (std::size_t c = 0; c < model.cluster_count(); ++c)
            for (auto id : model.members[c]) {
                ++seen[id];
                if (model.labels[id] != c) return false;
            }
        return std::all_of(seen.begin(), seen.end(), [](int v) { return v == 1; });
    }});

    s.push_back({"cb2s determinism and search-space bound", [](std::mt19937_64& rng) {
        auto corpus = random_corpus(rng, 60, 2, 12, "abcdef");
        ClusterModelConfig cfg;
        cfg.clusters = 2 + rng() % 5;
        cfg.seed = rng();
        auto model = build_cluster_model(corpus, cfg);
        auto again = build_cluster_model(corpus, cfg);
        if (model.labels != again.labels || model.centroids != again.centroids) return false;
        const std::size_t kmin = 1 + rng() % 10;
        auto p = SearchParams::make(static_cast<double>(rng() % 11) / 10, kmin, kmin + rng() % 10, 0,
                                    0.1 + 0.35 * static_cast<double>(rng() % 100) / 100);
        auto q = random_string(rng, 2, 12, "abcdef");
        auto a = cb2s_search(q, p, model, corpus);
        auto b = cb2s_search(q, p, again, corpus);
        if (a.result.members != b.result.members) return false;
        std::set<ClusterId> allowed(a.set_list.begin(), a.set_list.end());
        std::map<ClusterId, double> last;
        for (const auto& d : a.trace) {
            if (!allowed.count(d.cluster) || model.labels[d.id] != d.cluster) return false;
            if (last.count(d.cluster) && last[d.cluster] > d.vector_distance) return false;
            last[d.cluster] = d.vector_distance;
        }
        return true;
    }});

    s.push_back({"persistence round-trip", [](std::mt19937_64& rng) {
        auto corpus = random_corpus(rng, 40, 1, 12, "abcd");
        auto idx = build_index(corpus, 1 + rng() % 3);
        ClusterModelConfig cfg;
        cfg.clusters = 1 + rng() % 4;
        cfg.seed = rng();
        auto model = build_cluster_model(corpus, cfg);
        std::stringstream ib, mb;
        write_index(idx, ib);
        write_model(model, corpus, mb);
        auto idx2 = read_index(ib, corpus);
        auto model2 = read_model(mb, corpus);
        const std::size_t kmin = 1 + rng() % 8;
        auto p = SearchParams::make(0.5, kmin, kmin + 4, rng() % 3, 0.45);
        p.gram_len = idx.gram_len();
        auto q = random_string(rng, 1, 12, "abcd");
        return idx2.postings() == idx.postings() &&
               gen_greedy(q, p, idx).result.members == gen_greedy(q, p, idx2).result.members &&
               cb2s_search(q, p, model, corpus).result.members == cb2s_search(q, p, model2, corpus).result.members;
    }});
    return s;
}

Outcome invariant_suites() {
    std::ostringstream d;
    bool ok = true;
    std::uint64_t seed = 100;
    for (const auto& suite : property_suites()) {
        std::mt19937_64 rng(seed++);
        std::size_t failed = 0;
        for (std::size_t i = 0; i < kPropertyCases; ++i) failed += !suite.one_case(rng);
        std::printf("  %-45s %zu/%zu cases hold\n", suite.name.c_str(), kPropertyCases - failed, kPropertyCases);
        ok = ok && failed == 0;
    }
    d << kPropertyCases << " cases per suite";
    return {ok, d.str()};
}

}  // namespace

int main() {
    std::printf("building %zu-record synthetic corpus, index and cluster model\n", kMediumCorpus);
    auto medium = generate_random_dataset(synthetic(kMediumCorpus));
    auto medium_idx = build_index(medium, 2);
    auto medium_model = build_cluster_model(medium, ClusterModelConfig{});

    run(1, "result count within [k_min, k_max] for every query and algorithm",
        [&] { return result_count_guarantee(medium, medium_idx, medium_model); });
    run(2, "indexed neighbourhoods equal the full scan", oracle_equivalence);
    run(3, "three-row SP example scores -4, 3, 0, total -1", sp_example);
    run(4, "mean F at lambda 0.9 exceeds lambda 0.1",
        [&] { return lambda_monotonicity(medium, medium_idx, medium_model); });

    std::printf("building %zu-record synthetic corpus, index and cluster model\n", kLargeCorpus);
    auto large = generate_random_dataset(synthetic(kLargeCorpus));
    auto large_idx = build_index(large, 2);
    auto large_model = build_cluster_model(large, ClusterModelConfig{});
    run(5, "indexed query at eps 5 at least 2x faster than the scan", [&] { return index_speedup(large, large_idx); });
    run(6, "median query time cb2s < greedy <= cluster",
        [&] { return runtime_ordering(large, large_idx, large_model); });
    run(7, "greedy F within 0.8 of the exhaustive optimum on 50 instances", greedy_vs_exhaustive);
    run(8, "randomized invariant suites", invariant_suites);

    std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
    return failures == 0 ? 0 : 1;
}
