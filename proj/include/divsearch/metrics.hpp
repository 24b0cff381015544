#pragma once

#include "divsearch/types.hpp"

#include <Eigen/Dense>

#include <span>
#include <string>
#include <vector>

namespace divsearch {

/// Symmetric matrix of pairwise edit distances with zero diagonal.
using DistanceMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

struct ResultMember {
    RecordId id = 0;
    std::string text;
    std::size_t dist_to_query = 0;

    bool operator==(const ResultMember&) const = default;
};

struct ResultSet {
    std::string query;
    std::vector<ResultMember> members;

    std::size_t size() const noexcept { return members.size(); }
    bool empty() const noexcept { return members.empty(); }
};

struct QualityReport {
    double arg_sim = 0.0;
    double arg_div = 0.0;
    double f_value = 0.0;
    std::size_t result_count = 0;
};

/// Mean stored query distance. Throws Error{EmptySet} on an empty set.
double arg_sim(const ResultSet& s);

/// Mean pairwise edit distance over unordered pairs; 0 when |S| <= 1.
double arg_div(const ResultSet& s);

/// Same as above with distances read from `d` (indexed like `s.members`).
double arg_div(const DistanceMatrix& d);

/// lambda * arg_div - (1 - lambda) * arg_sim from precomputed parts.
double objective(double lambda, double arg_div_value, double arg_sim_value) noexcept;

double objective_f(const ResultSet& s, const SearchParams& params);

QualityReport quality_report(const ResultSet& s, const SearchParams& params);

/// As above, reading pairwise distances from `member_distances`.
QualityReport quality_report(const ResultSet& s, const SearchParams& params,
                             const DistanceMatrix& member_distances);

/// Rows/columns of `d` picked by `positions`, in that order.
DistanceMatrix select_distances(const DistanceMatrix& d, std::span<const std::size_t> positions);

/// Sum of distances from member `t` to every other member of the candidate
/// list. Throws Error{MissingMember} if `t` is not in `ids`.
double dd_contribution(RecordId t, std::span<const RecordId> ids, const DistanceMatrix& d);

/// Pairwise distances over `texts`, O(n^2) edit distance evaluations.
DistanceMatrix pairwise_distances(std::span<const std::string> texts);

}  // namespace divsearch
