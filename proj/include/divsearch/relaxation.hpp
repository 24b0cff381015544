#pragma once

#include "divsearch/qgram_index.hpp"
#include "divsearch/types.hpp"

#include <string_view>
#include <vector>

namespace divsearch {

/// Relaxation output: the candidate pool and the threshold it stopped at.
struct CandidateSet {
    std::vector<Neighbor> members;
    std::size_t epsilon_final = 0;
    bool exhausted = false;

    std::size_t size() const noexcept { return members.size(); }
    std::vector<RecordId> ids() const;
};

struct RelaxOptions {
    Boundary boundary = Boundary::Inclusive;
};

/// Widens epsilon one step at a time from params.epsilon0 until the pool
/// holds params.pool_floor() records or reaches params.pool_cap(). Within a
/// round, qualifying records are admitted in (distance, id) order.
///
/// Sets `exhausted` when epsilon passes max(|query|, longest record) with the
/// floor still unmet; at that point every record has qualified.
///
/// Throws Error{EmptyCorpus} on an empty corpus.
CandidateSet relax(std::string_view query, const SearchParams& params, const InvertedIndex& index,
                   const RelaxOptions& options = {});

}  // namespace divsearch
