#include "divsearch/qgram_index.hpp"

#include "divsearch/edit_distance.hpp"

#include <algorithm>
#include <unordered_map>

namespace divsearch {

namespace {

// Sorted (gram, multiplicity) runs over views into `text`.
std::vector<std::pair<std::string_view, std::uint32_t>> gram_runs(std::string_view text,
                                                                  std::size_t gram_len) {
    std::vector<std::string_view> grams;
    if (text.empty()) return {};
    if (text.size() < gram_len) {
        grams.push_back(text);
    } else {
        grams.reserve(text.size() - gram_len + 1);
        for (std::size_t i = 0; i + gram_len <= text.size(); ++i) grams.push_back(text.substr(i, gram_len));
    }
    std::sort(grams.begin(), grams.end());
    std::vector<std::pair<std::string_view, std::uint32_t>> runs;
    for (auto g : grams) {
        if (!runs.empty() && runs.back().first == g)
            ++runs.back().second;
        else
            runs.emplace_back(g, 1);
    }
    return runs;
}

const std::vector<Posting> kNoPostings;

}  // namespace

std::size_t GramSet::size() const noexcept {
    std::size_t n = 0;
    for (const auto& e : entries_) n += e.second;
    return n;
}

std::uint32_t GramSet::count(std::string_view gram) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), gram,
                               [](const Entry& e, std::string_view g) { return e.first < g; });
    return (it != entries_.end() && it->first == gram) ? it->second : 0;
}

std::size_t GramSet::shared_with(const GramSet& other) const {
    std::size_t shared = 0;
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() && b != other.entries_.end()) {
        if (a->first < b->first) {
            ++a;
        } else if (b->first < a->first) {
            ++b;
        } else {
            shared += std::min(a->second, b->second);
            ++a;
            ++b;
        }
    }
    return shared;
}

GramSet extract_grams(std::string_view text, std::size_t gram_len) {
    if (gram_len == 0) throw Error(ErrorKind::InvalidParams, "gram_len must be positive");
    std::vector<GramSet::Entry> entries;
    for (auto [g, c] : gram_runs(text, gram_len)) entries.emplace_back(std::string(g), c);
    return GramSet(std::move(entries));
}

std::int64_t min_common_grams(std::size_t query_len, std::size_t epsilon, std::size_t gram_len) {
    const auto q = static_cast<std::int64_t>(query_len);
    const auto g = static_cast<std::int64_t>(gram_len);
    return (q - g + 1) - g * static_cast<std::int64_t>(epsilon);
}

InvertedIndex::InvertedIndex(const Corpus& corpus, std::size_t gram_len, PostingMap postings)
    : corpus_(&corpus), gram_len_(gram_len), postings_(std::move(postings)) {}

const std::vector<Posting>& InvertedIndex::postings_for(std::string_view gram) const {
    auto it = postings_.find(gram);
    return it == postings_.end() ? kNoPostings : it->second;
}

std::vector<std::uint32_t> InvertedIndex::shared_counts(std::string_view query) const {
    std::vector<std::uint32_t> counts(corpus_->size(), 0);
    for (auto [gram, qcount] : gram_runs(query, gram_len_)) {
        for (const auto& p : postings_for(gram)) counts[p.id] += std::min(qcount, p.count);
    }
    return counts;
}

InvertedIndex build_index(const Corpus& corpus, std::size_t gram_len) {
    if (corpus.empty()) throw Error(ErrorKind::EmptyCorpus, "cannot index an empty corpus");
    if (gram_len == 0) throw Error(ErrorKind::InvalidParams, "gram_len must be positive");

    std::unordered_map<std::string_view, std::vector<Posting>> staging;
    for (std::size_t id = 0; id < corpus.size(); ++id) {
        for (auto [gram, count] : gram_runs(corpus.text(static_cast<RecordId>(id)), gram_len))
            staging[gram].push_back(Posting{static_cast<RecordId>(id), count});
    }
    InvertedIndex::PostingMap postings;
    for (auto& [gram, list] : staging) postings.emplace(std::string(gram), std::move(list));
    return InvertedIndex(corpus, gram_len, std::move(postings));
}

std::vector<Candidate> candidate_lookup(const InvertedIndex& index, std::string_view query,
                                        std::size_t epsilon) {
    const auto bound = min_common_grams(query.size(), epsilon, index.gram_len());
    const auto counts = index.shared_counts(query);
    std::vector<Candidate> out;
    for (std::size_t id = 0; id < counts.size(); ++id) {
        if (bound <= 0 || static_cast<std::int64_t>(counts[id]) >= bound)
            out.push_back(Candidate{static_cast<RecordId>(id), counts[id]});
    }
    return out;
}

std::vector<Neighbor> verify_candidates(const Corpus& corpus, std::string_view query,
                                        std::span<const RecordId> candidates, std::size_t epsilon,
                                        Boundary boundary) {
    std::vector<Neighbor> out;
    if (boundary == Boundary::Exclusive && epsilon == 0) return out;
    const std::size_t limit = boundary == Boundary::Inclusive ? epsilon : epsilon - 1;
    for (RecordId id : candidates) {
        std::size_t d = edit_distance_within(query, corpus.text(id), limit);
        if (d <= limit) out.push_back(Neighbor{id, d});
    }
    return out;
}

std::vector<Neighbor> similarity_query(const InvertedIndex& index, std::string_view query,
                                       std::size_t epsilon, Boundary boundary) {
    auto candidates = candidate_lookup(index, query, epsilon);
    std::vector<RecordId> ids;
    ids.reserve(candidates.size());
    for (const auto& c : candidates) ids.push_back(c.id);
    return verify_candidates(index.corpus(), query, ids, epsilon, boundary);
}

}  // namespace divsearch
