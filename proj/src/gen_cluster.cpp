#include "divsearch/gen_cluster.hpp"

#include "divsearch/edit_distance.hpp"

#include <algorithm>
#include <numeric>

namespace divsearch {

ResultSet motif_filter(std::string_view query, const CandidateSet& candidates,
                       const Corpus& corpus, const SearchParams& params,
                       const DistanceMatrix& d, ClusterDiagnostics* diagnostics) {
    std::vector<std::string> texts;
    texts.reserve(candidates.size());
    for (const auto& m : candidates.members) texts.emplace_back(corpus.text(m.id));

    ClusterDiagnostics local;
    ClusterDiagnostics& diag = diagnostics ? *diagnostics : local;
    diag.tree = build_guide_tree(d);
    diag.alignment = progressive_align(diag.tree, texts);
    diag.motif = build_motif(diag.alignment);
    diag.sp = sp_score(diag.alignment);
    diag.motif_distances.clear();
    for (const auto& t : texts) diag.motif_distances.push_back(edit_distance(t, diag.motif.text));

    std::vector<std::size_t> order(candidates.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (diag.motif_distances[a] != diag.motif_distances[b])
            return diag.motif_distances[a] > diag.motif_distances[b];
        return candidates.members[a].id < candidates.members[b].id;
    });
    order.resize(selection_size(candidates.size(), params));

    ResultSet out;
    out.query = std::string(query);
    for (auto i : order) {
        const auto& m = candidates.members[i];
        out.members.push_back(ResultMember{m.id, texts[i], m.distance});
    }
    return out;
}

SearchOutcome gen_cluster(std::string_view query, const SearchParams& params,
                          const InvertedIndex& index, ClusterDiagnostics* diagnostics) {
    auto pool = relax(query, params, index);
    auto d = build_distance_matrix(pool, index.corpus());
    SearchOutcome out;
    out.result = motif_filter(query, pool, index.corpus(), params, d, diagnostics);
    out.quality = quality_report(out.result, params, select_distances(d, pool_positions(pool, out.result)));
    out.exhausted = pool.exhausted;
    out.pool_size = pool.size();
    out.epsilon_final = pool.epsilon_final;
    return out;
}

}  // namespace divsearch
