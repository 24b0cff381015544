#include "divsearch/relaxation.hpp"

#include "divsearch/edit_distance.hpp"

#include <algorithm>
#include <limits>

namespace divsearch {

std::vector<RecordId> CandidateSet::ids() const {
    std::vector<RecordId> out;
    out.reserve(members.size());
    for (const auto& m : members) out.push_back(m.id);
    return out;
}

CandidateSet relax(std::string_view query, const SearchParams& params, const InvertedIndex& index,
                   const RelaxOptions& options) {
    params.validate();
    const Corpus& corpus = index.corpus();
    if (corpus.empty()) throw Error(ErrorKind::EmptyCorpus, "cannot relax over an empty corpus");

    const std::size_t floor = params.pool_floor();
    const std::size_t cap = params.pool_cap();
    const bool inclusive = options.boundary == Boundary::Inclusive;
    // Past this threshold every record qualifies.
    const std::size_t saturation = std::max(query.size(), corpus.max_length()) + (inclusive ? 0 : 1);

    constexpr std::size_t kUnknown = std::numeric_limits<std::size_t>::max();
    const auto shared = index.shared_counts(query);
    std::vector<std::size_t> distance(corpus.size(), kUnknown);
    std::vector<bool> admitted(corpus.size(), false);

    CandidateSet out;
    std::vector<Neighbor> qualifying;
    for (std::size_t eps = params.epsilon0;; ++eps) {
        const auto bound = min_common_grams(query.size(), eps, index.gram_len());
        qualifying.clear();
        for (std::size_t id = 0; id < corpus.size(); ++id) {
            if (admitted[id]) continue;
            if (bound > 0 && static_cast<std::int64_t>(shared[id]) < bound) continue;
            const auto text = corpus.text(static_cast<RecordId>(id));
            const std::size_t len_gap = text.size() > query.size() ? text.size() - query.size()
                                                                   : query.size() - text.size();
            if (len_gap > eps) continue;
            if (distance[id] == kUnknown) distance[id] = edit_distance(query, text);
            const std::size_t d = distance[id];
            if (inclusive ? d <= eps : d < eps) qualifying.push_back(Neighbor{static_cast<RecordId>(id), d});
        }
        std::sort(qualifying.begin(), qualifying.end(), [](const Neighbor& a, const Neighbor& b) {
            return a.distance != b.distance ? a.distance < b.distance : a.id < b.id;
        });
        for (const auto& n : qualifying) {
            if (out.members.size() >= cap) break;
            out.members.push_back(n);
            admitted[n.id] = true;
        }

        out.epsilon_final = eps;
        if (out.members.size() >= floor || out.members.size() >= cap) break;
        if (eps >= saturation) {
            out.exhausted = true;
            break;
        }
    }
    return out;
}

}  // namespace divsearch
