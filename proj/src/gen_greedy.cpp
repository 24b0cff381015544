#include "divsearch/gen_greedy.hpp"

#include "divsearch/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace divsearch {

DistanceMatrix build_distance_matrix(const CandidateSet& candidates, const Corpus& corpus) {
    std::vector<std::string> texts;
    texts.reserve(candidates.size());
    for (const auto& m : candidates.members) texts.emplace_back(corpus.text(m.id));
    return pairwise_distances(texts);
}

Eigen::VectorX<std::int64_t> dd_contributions(const DistanceMatrix& d) {
    return d.rowwise().sum();
}

double prune_threshold(const CandidateSet& candidates, const DistanceMatrix& d, double sigma,
                       double omega, std::uint64_t seed, PruneNormalization normalization) {
    const std::size_t k = candidates.size();
    if (k < 2) return 0.0;
    const auto sample_size = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::lround(sigma * static_cast<double>(k))), 1, k);
    Rng rng(seed);
    const auto sample = sample_without_replacement(rng, k, sample_size);
    const auto dd = dd_contributions(d);
    double total = 0.0;
    for (auto t : sample) total += static_cast<double>(dd(static_cast<Eigen::Index>(t)));
    const double denom = normalization == PruneNormalization::SampleSize
                             ? static_cast<double>(sample_size)
                             : sigma * static_cast<double>(k);
    return omega * total / denom;
}

std::size_t selection_size(std::size_t pool_size, const SearchParams& params) {
    auto n = static_cast<std::size_t>(std::lround(static_cast<double>(pool_size) / (params.lambda + 1.0)));
    n = std::clamp(n, params.k_min, params.k_max);
    return std::min(n, pool_size);
}

ResultSet greedy_filter(std::string_view query, const CandidateSet& candidates,
                        const DistanceMatrix& d, const Corpus& corpus, const SearchParams& params,
                        const GreedyOptions& options) {
    const std::size_t k = candidates.size();
    const auto dd = dd_contributions(d);
    const double threshold = prune_threshold(candidates, d, params.sigma, params.omega, options.seed,
                                             options.normalization);

    auto ranks_before = [&](std::size_t a, std::size_t b) {
        const auto& ma = candidates.members[a];
        const auto& mb = candidates.members[b];
        const auto da = dd(static_cast<Eigen::Index>(a));
        const auto db = dd(static_cast<Eigen::Index>(b));
        if (da != db) return da > db;
        if (ma.distance != mb.distance) return ma.distance < mb.distance;
        return ma.id < mb.id;
    };

    std::vector<std::size_t> survivors, pruned;
    for (std::size_t i = 0; i < k; ++i)
        (static_cast<double>(dd(static_cast<Eigen::Index>(i))) < threshold ? pruned : survivors).push_back(i);
    std::stable_sort(survivors.begin(), survivors.end(), ranks_before);
    std::stable_sort(pruned.begin(), pruned.end(), ranks_before);

    std::vector<std::size_t> chosen(survivors.begin(),
                                    survivors.begin() + static_cast<std::ptrdiff_t>(
                                        std::min(selection_size(k, params), survivors.size())));
    const std::size_t guaranteed = std::min(params.k_min, k);
    for (std::size_t i = 0; chosen.size() < guaranteed && i < pruned.size(); ++i) chosen.push_back(pruned[i]);

    ResultSet out;
    out.query = std::string(query);
    for (auto i : chosen) {
        const auto& m = candidates.members[i];
        out.members.push_back(ResultMember{m.id, std::string(corpus.text(m.id)), m.distance});
    }
    return out;
}

std::vector<std::size_t> pool_positions(const CandidateSet& pool, const ResultSet& result) {
    std::vector<std::size_t> out;
    out.reserve(result.size());
    for (const auto& m : result.members) {
        auto it = std::find_if(pool.members.begin(), pool.members.end(),
                               [&](const Neighbor& n) { return n.id == m.id; });
        if (it == pool.members.end())
            throw Error(ErrorKind::MissingMember, "result member " + std::to_string(m.id) + " is not in the pool");
        out.push_back(static_cast<std::size_t>(it - pool.members.begin()));
    }
    return out;
}

SearchOutcome gen_greedy(std::string_view query, const SearchParams& params,
                         const InvertedIndex& index, const GreedyOptions& options) {
    auto pool = relax(query, params, index);
    auto d = build_distance_matrix(pool, index.corpus());
    SearchOutcome out;
    out.result = greedy_filter(query, pool, d, index.corpus(), params, options);
    out.quality = quality_report(out.result, params, select_distances(d, pool_positions(pool, out.result)));
    out.exhausted = pool.exhausted;
    out.pool_size = pool.size();
    out.epsilon_final = pool.epsilon_final;
    return out;
}

}  // namespace divsearch
