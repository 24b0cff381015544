#include "divsearch/alignment.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace divsearch {

namespace {

int pair_score(char a, char b, char placeholder) {
    const bool ga = a == placeholder;
    const bool gb = b == placeholder;
    if (ga && gb) return 0;
    if (ga || gb) return kGapScore;
    return a == b ? kMatchScore : kMismatchScore;
}

enum class Step : std::uint8_t { Diag, Up, Left };

// One alignment column summarised for profile scoring.
struct ColumnProfile {
    std::vector<std::pair<char, std::int64_t>> symbols;  // non-placeholder, sorted
    std::int64_t gaps = 0;
    std::int64_t residues = 0;
};

std::vector<ColumnProfile> profile_columns(const std::vector<std::string>& rows, char placeholder) {
    const std::size_t width = rows.empty() ? 0 : rows.front().size();
    std::vector<ColumnProfile> cols(width);
    std::array<std::int64_t, 256> counts{};
    for (std::size_t c = 0; c < width; ++c) {
        counts.fill(0);
        for (const auto& r : rows) ++counts[static_cast<unsigned char>(r[c])];
        auto& col = cols[c];
        for (int s = 0; s < 256; ++s) {
            if (counts[static_cast<std::size_t>(s)] == 0) continue;
            if (static_cast<char>(s) == placeholder)
                col.gaps = counts[static_cast<std::size_t>(s)];
            else
                col.symbols.emplace_back(static_cast<char>(s), counts[static_cast<std::size_t>(s)]);
        }
        col.residues = static_cast<std::int64_t>(rows.size()) - col.gaps;
    }
    return cols;
}

// Pair-score sum between two columns, i.e. the mean column score scaled by
// |A| * |B|. Scores stay integral so DP ties are exact.
std::int64_t column_pair_sum(const ColumnProfile& a, const ColumnProfile& b) {
    std::int64_t matches = 0;
    auto ia = a.symbols.begin();
    auto ib = b.symbols.begin();
    while (ia != a.symbols.end() && ib != b.symbols.end()) {
        if (ia->first < ib->first) {
            ++ia;
        } else if (ib->first < ia->first) {
            ++ib;
        } else {
            matches += ia->second * ib->second;
            ++ia;
            ++ib;
        }
    }
    return kMatchScore * matches + kGapScore * (a.gaps * b.residues + a.residues * b.gaps);
}

struct Group {
    std::vector<std::size_t> members;  // input positions
    std::vector<std::string> rows;
};

Group align_groups(const Group& a, const Group& b, char placeholder) {
    const auto ca = profile_columns(a.rows, placeholder);
    const auto cb = profile_columns(b.rows, placeholder);
    const auto na = static_cast<std::int64_t>(a.rows.size());
    const auto nb = static_cast<std::int64_t>(b.rows.size());
    const std::size_t wa = ca.size();
    const std::size_t wb = cb.size();

    std::vector<std::int64_t> score((wa + 1) * (wb + 1));
    std::vector<Step> step((wa + 1) * (wb + 1));
    auto at = [wb](std::size_t i, std::size_t j) { return i * (wb + 1) + j; };

    for (std::size_t i = 1; i <= wa; ++i) {
        score[at(i, 0)] = score[at(i - 1, 0)] + kGapScore * ca[i - 1].residues * nb;
        step[at(i, 0)] = Step::Up;
    }
    for (std::size_t j = 1; j <= wb; ++j) {
        score[at(0, j)] = score[at(0, j - 1)] + kGapScore * cb[j - 1].residues * na;
        step[at(0, j)] = Step::Left;
    }
    for (std::size_t i = 1; i <= wa; ++i) {
        for (std::size_t j = 1; j <= wb; ++j) {
            const std::int64_t diag = score[at(i - 1, j - 1)] + column_pair_sum(ca[i - 1], cb[j - 1]);
            const std::int64_t up = score[at(i - 1, j)] + kGapScore * ca[i - 1].residues * nb;
            const std::int64_t left = score[at(i, j - 1)] + kGapScore * cb[j - 1].residues * na;
            if (diag >= up && diag >= left) {
                score[at(i, j)] = diag;
                step[at(i, j)] = Step::Diag;
            } else if (up >= left) {
                score[at(i, j)] = up;
                step[at(i, j)] = Step::Up;
            } else {
                score[at(i, j)] = left;
                step[at(i, j)] = Step::Left;
            }
        }
    }

    // Column indices into a / b (npos means an inserted placeholder column).
    constexpr auto npos = std::numeric_limits<std::size_t>::max();
    std::vector<std::pair<std::size_t, std::size_t>> path;
    for (std::size_t i = wa, j = wb; i > 0 || j > 0;) {
        switch (step[at(i, j)]) {
            case Step::Diag: path.emplace_back(--i, --j); break;
            case Step::Up: path.emplace_back(--i, npos); break;
            case Step::Left: path.emplace_back(npos, --j); break;
        }
    }
    std::reverse(path.begin(), path.end());

    Group out;
    out.members = a.members;
    out.members.insert(out.members.end(), b.members.begin(), b.members.end());
    out.rows.reserve(out.members.size());
    for (const auto& r : a.rows) {
        std::string row;
        row.reserve(path.size());
        for (auto [i, j] : path) row.push_back(i == npos ? placeholder : r[i]);
        out.rows.push_back(std::move(row));
    }
    for (const auto& r : b.rows) {
        std::string row;
        row.reserve(path.size());
        for (auto [i, j] : path) row.push_back(j == npos ? placeholder : r[j]);
        out.rows.push_back(std::move(row));
    }
    return out;
}

}  // namespace

PairwiseAlignment pairwise_align(std::string_view a, std::string_view b, char placeholder) {
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    std::vector<std::int64_t> score((n + 1) * (m + 1));
    auto at = [m](std::size_t i, std::size_t j) { return i * (m + 1) + j; };
    for (std::size_t i = 1; i <= n; ++i) score[at(i, 0)] = static_cast<std::int64_t>(i) * kGapScore;
    for (std::size_t j = 1; j <= m; ++j) score[at(0, j)] = static_cast<std::int64_t>(j) * kGapScore;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= m; ++j)
            score[at(i, j)] = std::max({score[at(i - 1, j - 1)] + (a[i - 1] == b[j - 1] ? kMatchScore : kMismatchScore),
                                        score[at(i - 1, j)] + kGapScore, score[at(i, j - 1)] + kGapScore});

    PairwiseAlignment out;
    out.score = score[at(n, m)];
    for (std::size_t i = n, j = m; i > 0 || j > 0;) {
        const auto here = score[at(i, j)];
        if (i > 0 && j > 0 &&
            here == score[at(i - 1, j - 1)] + (a[i - 1] == b[j - 1] ? kMatchScore : kMismatchScore)) {
            out.a.push_back(a[--i]);
            out.b.push_back(b[--j]);
        } else if (i > 0 && here == score[at(i - 1, j)] + kGapScore) {
            out.a.push_back(a[--i]);
            out.b.push_back(placeholder);
        } else {
            out.a.push_back(placeholder);
            out.b.push_back(b[--j]);
        }
    }
    std::reverse(out.a.begin(), out.a.end());
    std::reverse(out.b.begin(), out.b.end());
    return out;
}

std::int64_t score_aligned_pair(std::string_view a, std::string_view b, char placeholder) {
    if (a.size() != b.size()) throw Error(ErrorKind::InvalidParams, "aligned rows differ in length");
    std::int64_t total = 0;
    for (std::size_t c = 0; c < a.size(); ++c) total += pair_score(a[c], b[c], placeholder);
    return total;
}

GuideTree build_guide_tree(const DistanceMatrix& d) {
    GuideTree tree;
    const auto n = static_cast<std::size_t>(d.rows());
    tree.leaf_count = n;
    if (n < 2) return tree;

    const std::size_t nodes = 2 * n - 1;
    Eigen::MatrixXd branch = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nodes),
                                                   static_cast<Eigen::Index>(nodes));
    branch.topLeftCorner(d.rows(), d.cols()) = d.cast<double>();
    std::vector<std::size_t> active(n);
    for (std::size_t i = 0; i < n; ++i) active[i] = i;

    while (active.size() > 1) {
        std::size_t bj = 0, bk = 1;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t x = 0; x < active.size(); ++x)
            for (std::size_t y = x + 1; y < active.size(); ++y) {
                const double len = branch(static_cast<Eigen::Index>(active[x]), static_cast<Eigen::Index>(active[y]));
                if (len < best) {
                    best = len;
                    bj = x;
                    bk = y;
                }
            }
        const std::size_t j = active[bj];
        const std::size_t k = active[bk];
        const std::size_t z = n + tree.merges.size();
        tree.merges.push_back(GuideMerge{j, k, best});
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(bk));
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(bj));
        const auto zi = static_cast<Eigen::Index>(z);
        for (std::size_t t : active) {
            const auto ti = static_cast<Eigen::Index>(t);
            const double len = 0.5 * (branch(ti, static_cast<Eigen::Index>(j)) + branch(ti, static_cast<Eigen::Index>(k)));
            branch(zi, ti) = branch(ti, zi) = len;
        }
        active.push_back(z);
    }
    return tree;
}

std::string SubstitutionMatrix::stripped(std::size_t row) const {
    std::string out;
    for (char c : rows.at(row))
        if (c != placeholder) out.push_back(c);
    return out;
}

char choose_placeholder(std::span<const std::string> texts) {
    std::array<bool, 256> used{};
    for (const auto& t : texts)
        for (char c : t) used[static_cast<unsigned char>(c)] = true;
    if (!used[static_cast<unsigned char>('-')]) return '-';
    for (int c = 1; c < 256; ++c)
        if (!used[static_cast<std::size_t>(c)]) return static_cast<char>(c);
    if (!used[0]) return '\0';
    throw Error(ErrorKind::InvalidParams, "every byte value occurs in the texts; no placeholder available");
}

SubstitutionMatrix progressive_align(const GuideTree& tree, std::span<const std::string> texts) {
    if (tree.leaf_count != texts.size())
        throw Error(ErrorKind::InvalidParams, "guide tree and texts disagree on the candidate count");
    SubstitutionMatrix out;
    out.placeholder = choose_placeholder(texts);
    if (texts.empty()) return out;

    std::vector<Group> groups;
    groups.reserve(2 * texts.size());
    for (std::size_t i = 0; i < texts.size(); ++i) groups.push_back(Group{{i}, {texts[i]}});
    for (const auto& merge : tree.merges)
        groups.push_back(align_groups(groups[merge.left], groups[merge.right], out.placeholder));

    const Group& root = groups.back();
    out.rows.resize(texts.size());
    for (std::size_t r = 0; r < root.members.size(); ++r) out.rows[root.members[r]] = root.rows[r];
    return out;
}

std::int64_t sp_score(const SubstitutionMatrix& m) {
    std::int64_t total = 0;
    for (const auto& col : profile_columns(m.rows, m.placeholder)) {
        for (const auto& [sym, count] : col.symbols) total += kMatchScore * count * (count - 1) / 2;
        total += kGapScore * col.gaps * col.residues;
    }
    return total;
}

Motif build_motif(const SubstitutionMatrix& m) {
    Motif motif;
    std::array<std::uint32_t, 256> counts{};
    for (std::size_t c = 0; c < m.width(); ++c) {
        counts.fill(0);
        for (const auto& r : m.rows) ++counts[static_cast<unsigned char>(r[c])];
        std::size_t best = 0;
        for (std::size_t s = 1; s < 256; ++s)
            if (counts[s] > counts[best]) best = s;
        const char winner = static_cast<char>(best);
        motif.columns.push_back(winner);
        motif.column_counts.push_back(counts[best]);
        if (winner != m.placeholder) motif.text.push_back(winner);
    }
    return motif;
}

}  // namespace divsearch
