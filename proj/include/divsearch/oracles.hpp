#pragma once

#include "divsearch/metrics.hpp"
#include "divsearch/qgram_index.hpp"

#include <span>
#include <vector>

namespace divsearch {

/// Full-scan epsilon neighbourhood using the unbanded distance.
std::vector<Neighbor> brute_force_neighbors(const Corpus& corpus, std::string_view query,
                                            std::size_t epsilon,
                                            Boundary boundary = Boundary::Inclusive);

inline constexpr std::size_t kMaxExhaustiveCandidates = 20;

struct BestSubset {
    std::vector<RecordId> ids;  // ascending
    double f_value = 0.0;
};

/// Exhaustive F-maximal subset of the given size; ties keep the
/// lexicographically smallest id tuple. Throws Error{TooManyCandidates}
/// above kMaxExhaustiveCandidates and Error{InvalidParams} for a size of 0
/// or above the candidate count.
BestSubset brute_force_best_subset(std::span<const Neighbor> candidates, const Corpus& corpus,
                                   std::size_t size, const SearchParams& params);

}  // namespace divsearch
