#include "divsearch/metrics.hpp"

#include "divsearch/edit_distance.hpp"

#include <algorithm>

namespace divsearch {

double arg_sim(const ResultSet& s) {
    if (s.empty()) throw Error(ErrorKind::EmptySet, "arg_sim of an empty result set");
    double total = 0.0;
    for (const auto& m : s.members) total += static_cast<double>(m.dist_to_query);
    return total / static_cast<double>(s.size());
}

double arg_div(const ResultSet& s) {
    const std::size_t k = s.size();
    if (k < 2) return 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            total += static_cast<double>(edit_distance(s.members[i].text, s.members[j].text));
    return 2.0 * total / (static_cast<double>(k) * static_cast<double>(k - 1));
}

double arg_div(const DistanceMatrix& d) {
    const auto k = d.rows();
    if (k < 2) return 0.0;
    double total = 0.0;
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = i + 1; j < k; ++j) total += static_cast<double>(d(i, j));
    return 2.0 * total / (static_cast<double>(k) * static_cast<double>(k - 1));
}

double objective(double lambda, double arg_div_value, double arg_sim_value) noexcept {
    return lambda * arg_div_value - (1.0 - lambda) * arg_sim_value;
}

double objective_f(const ResultSet& s, const SearchParams& params) {
    double sim = arg_sim(s);
    return objective(params.lambda, arg_div(s), sim);
}

QualityReport quality_report(const ResultSet& s, const SearchParams& params) {
    QualityReport r;
    r.arg_sim = arg_sim(s);
    r.arg_div = arg_div(s);
    r.f_value = objective(params.lambda, r.arg_div, r.arg_sim);
    r.result_count = s.size();
    return r;
}

QualityReport quality_report(const ResultSet& s, const SearchParams& params,
                             const DistanceMatrix& member_distances) {
    QualityReport r;
    r.arg_sim = arg_sim(s);
    r.arg_div = arg_div(member_distances);
    r.f_value = objective(params.lambda, r.arg_div, r.arg_sim);
    r.result_count = s.size();
    return r;
}

DistanceMatrix select_distances(const DistanceMatrix& d, std::span<const std::size_t> positions) {
    std::vector<Eigen::Index> idx(positions.begin(), positions.end());
    return d(idx, idx);
}

double dd_contribution(RecordId t, std::span<const RecordId> ids, const DistanceMatrix& d) {
    auto it = std::find(ids.begin(), ids.end(), t);
    if (it == ids.end())
        throw Error(ErrorKind::MissingMember,
                    "record " + std::to_string(t) + " is not a member of the candidate set");
    const auto row = static_cast<Eigen::Index>(it - ids.begin());
    return static_cast<double>(d.row(row).sum() - d(row, row));
}

DistanceMatrix pairwise_distances(std::span<const std::string> texts) {
    const auto n = static_cast<Eigen::Index>(texts.size());
    DistanceMatrix d = DistanceMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            d(i, j) = d(j, i) = static_cast<std::int64_t>(
                edit_distance(texts[static_cast<std::size_t>(i)], texts[static_cast<std::size_t>(j)]));
    return d;
}

}  // namespace divsearch
