#pragma once

#include "divsearch/metrics.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace divsearch {

/// Column scores shared by pairwise alignment, profile alignment and SP scoring.
inline constexpr int kMatchScore = 1;
inline constexpr int kMismatchScore = 0;
inline constexpr int kGapScore = -1;

struct PairwiseAlignment {
    std::string a;
    std::string b;
    std::int64_t score = 0;
};

/// Global alignment (Needleman-Wunsch). Traceback prefers diagonal, then a
/// gap in `b`, then a gap in `a`.
PairwiseAlignment pairwise_align(std::string_view a, std::string_view b, char placeholder = '-');

/// Score of two already aligned rows of equal length.
std::int64_t score_aligned_pair(std::string_view a, std::string_view b, char placeholder = '-');

struct GuideMerge {
    std::size_t left = 0;   // node index
    std::size_t right = 0;  // node index
    double branch_length = 0.0;
};

/// Agglomerative merge tree. Leaves are nodes 0..n-1 (candidate positions);
/// merge i creates node n + i.
struct GuideTree {
    std::size_t leaf_count = 0;
    std::vector<GuideMerge> merges;
};

/// Repeatedly joins the pair with minimal branch length; the joined node's
/// branch length to any other node t is (d(t, j) + d(t, k)) / 2. Ties go to
/// the lexicographically smallest (j, k) node pair.
GuideTree build_guide_tree(const DistanceMatrix& d);

struct SubstitutionMatrix {
    std::vector<std::string> rows;  // rows[i] aligns input text i
    char placeholder = '-';

    std::size_t width() const noexcept { return rows.empty() ? 0 : rows.front().size(); }
    std::string stripped(std::size_t row) const;
};

/// A byte that occurs in none of `texts`: '-' when possible.
char choose_placeholder(std::span<const std::string> texts);

/// Progressive alignment in guide-tree merge order. Groups are aligned
/// column-against-column using the mean pair score of the two columns, and
/// gaps are inserted as whole placeholder columns.
SubstitutionMatrix progressive_align(const GuideTree& tree, std::span<const std::string> texts);

/// Sum over unordered row pairs of per-column scores: match +1, mismatch 0,
/// one-sided placeholder -1, placeholder against placeholder 0.
std::int64_t sp_score(const SubstitutionMatrix& m);

struct Motif {
    std::string text;                  // placeholder columns removed
    std::string columns;               // per-column winners before removal
    std::vector<std::uint32_t> column_counts;  // frequency of each winner
};

/// Most frequent symbol per column; ties go to the lowest byte value.
Motif build_motif(const SubstitutionMatrix& m);

}  // namespace divsearch
