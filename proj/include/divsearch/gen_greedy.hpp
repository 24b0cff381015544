#pragma once

#include "divsearch/metrics.hpp"
#include "divsearch/relaxation.hpp"

#include <cstdint>

namespace divsearch {

/// How the prune threshold normalizes the sampled contribution sum.
enum class PruneNormalization {
    SampleSize,     // divide by |samSet| (mean sampled contribution)
    SigmaTimesPool  // divide by sigma * |pool| as printed
};

struct GreedyOptions {
    std::uint64_t seed = 0;
    PruneNormalization normalization = PruneNormalization::SampleSize;
};

/// Common output of the three search algorithms.
struct SearchOutcome {
    ResultSet result;
    QualityReport quality;
    bool exhausted = false;
    std::size_t pool_size = 0;
    std::size_t epsilon_final = 0;
};

DistanceMatrix build_distance_matrix(const CandidateSet& candidates, const Corpus& corpus);

/// Pool row sums of `d`: DD_i = sum_j d(i, j).
Eigen::VectorX<std::int64_t> dd_contributions(const DistanceMatrix& d);

/// Omega times the estimated mean contribution over a seeded sample of
/// max(1, round(sigma * |pool|)) members drawn without replacement.
double prune_threshold(const CandidateSet& candidates, const DistanceMatrix& d, double sigma,
                       double omega, std::uint64_t seed,
                       PruneNormalization normalization = PruneNormalization::SampleSize);

/// Number of items to keep from a pool: round(pool / (lambda + 1)) clamped
/// into [k_min, k_max] and then to the pool size.
std::size_t selection_size(std::size_t pool_size, const SearchParams& params);

/// Prune by threshold, rank survivors by (DD desc, distance asc, id asc),
/// take the selection size. Pruned members are restored in the same order
/// when fewer than k_min survive.
ResultSet greedy_filter(std::string_view query, const CandidateSet& candidates,
                        const DistanceMatrix& d, const Corpus& corpus, const SearchParams& params,
                        const GreedyOptions& options = {});

/// Pool position of every result member. Throws Error{MissingMember}.
std::vector<std::size_t> pool_positions(const CandidateSet& pool, const ResultSet& result);

SearchOutcome gen_greedy(std::string_view query, const SearchParams& params,
                         const InvertedIndex& index, const GreedyOptions& options = {});

}  // namespace divsearch
