#pragma once

#include "divsearch/alignment.hpp"
#include "divsearch/gen_greedy.hpp"

namespace divsearch {

/// Intermediate products of a gen_cluster run, kept for reporting.
struct ClusterDiagnostics {
    GuideTree tree;
    SubstitutionMatrix alignment;
    Motif motif;
    std::int64_t sp = 0;
    std::vector<std::size_t> motif_distances;  // indexed like the pool
};

/// Ranks pool members by edit distance to the motif (descending, ties by id)
/// and keeps selection_size(pool) of them.
ResultSet motif_filter(std::string_view query, const CandidateSet& candidates,
                       const Corpus& corpus, const SearchParams& params,
                       const DistanceMatrix& d, ClusterDiagnostics* diagnostics = nullptr);

SearchOutcome gen_cluster(std::string_view query, const SearchParams& params,
                          const InvertedIndex& index, ClusterDiagnostics* diagnostics = nullptr);

}  // namespace divsearch
