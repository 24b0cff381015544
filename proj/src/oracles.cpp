#include "divsearch/oracles.hpp"

#include "divsearch/edit_distance.hpp"

#include <algorithm>
#include <numeric>

namespace divsearch {

std::vector<Neighbor> brute_force_neighbors(const Corpus& corpus, std::string_view query,
                                            std::size_t epsilon, Boundary boundary) {
    std::vector<Neighbor> out;
    for (std::size_t id = 0; id < corpus.size(); ++id) {
        const std::size_t d = edit_distance(query, corpus.text(static_cast<RecordId>(id)));
        if (boundary == Boundary::Inclusive ? d <= epsilon : d < epsilon)
            out.push_back(Neighbor{static_cast<RecordId>(id), d});
    }
    return out;
}

BestSubset brute_force_best_subset(std::span<const Neighbor> candidates, const Corpus& corpus,
                                   std::size_t size, const SearchParams& params) {
    const std::size_t n = candidates.size();
    if (n > kMaxExhaustiveCandidates)
        throw Error(ErrorKind::TooManyCandidates,
                    "exhaustive search is capped at " + std::to_string(kMaxExhaustiveCandidates) + " candidates");
    if (size == 0 || size > n) throw Error(ErrorKind::InvalidParams, "subset size must lie in [1, candidates]");

    std::vector<Neighbor> sorted(candidates.begin(), candidates.end());
    std::sort(sorted.begin(), sorted.end(), [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });
    std::vector<std::string> texts;
    for (const auto& c : sorted) texts.emplace_back(corpus.text(c.id));
    const DistanceMatrix d = pairwise_distances(texts);

    // Lexicographic walk over position combinations; strict improvement keeps
    // the first (smallest id tuple) optimum.
    std::vector<std::size_t> pick(size);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    BestSubset best;
    bool have = false;
    const double pairs = static_cast<double>(size) * static_cast<double>(size - 1) / 2.0;
    while (true) {
        double sim = 0.0, div = 0.0;
        for (std::size_t a = 0; a < size; ++a) {
            sim += static_cast<double>(sorted[pick[a]].distance);
            for (std::size_t b = a + 1; b < size; ++b)
                div += static_cast<double>(d(static_cast<Eigen::Index>(pick[a]), static_cast<Eigen::Index>(pick[b])));
        }
        const double f = objective(params.lambda, size < 2 ? 0.0 : div / pairs, sim / static_cast<double>(size));
        if (!have || f > best.f_value) {
            have = true;
            best.f_value = f;
            best.ids.clear();
            for (auto p : pick) best.ids.push_back(sorted[p].id);
        }
        std::size_t i = size;
        while (i > 0 && pick[i - 1] == n - size + (i - 1)) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
    return best;
}

}  // namespace divsearch
