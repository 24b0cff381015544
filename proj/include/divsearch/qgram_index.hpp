#pragma once

#include "divsearch/types.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace divsearch {

/// Multiset of q-grams, kept as sorted (gram, multiplicity) pairs.
class GramSet {
public:
    using Entry = std::pair<std::string, std::uint32_t>;

    GramSet() = default;
    explicit GramSet(std::vector<Entry> sorted_entries) : entries_(std::move(sorted_entries)) {}

    const std::vector<Entry>& entries() const noexcept { return entries_; }
    /// Total count with multiplicity.
    std::size_t size() const noexcept;
    bool empty() const noexcept { return entries_.empty(); }
    std::uint32_t count(std::string_view gram) const;

    /// Size of the multiset intersection.
    std::size_t shared_with(const GramSet& other) const;

private:
    std::vector<Entry> entries_;
};

/// Sliding windows of length `gram_len`. A non-empty text shorter than the
/// window yields itself as a single gram; an empty text yields nothing.
GramSet extract_grams(std::string_view text, std::size_t gram_len);

struct Posting {
    RecordId id = 0;
    std::uint32_t count = 0;  // multiplicity of the gram in the record

    bool operator==(const Posting&) const = default;
};

struct Candidate {
    RecordId id = 0;
    std::size_t shared = 0;
};

struct Neighbor {
    RecordId id = 0;
    std::size_t distance = 0;

    bool operator==(const Neighbor&) const = default;
};

/// (|q| - g + 1) - g * epsilon. Values <= 0 mean the filter admits everything.
std::int64_t min_common_grams(std::size_t query_len, std::size_t epsilon, std::size_t gram_len);

/// Gram -> ascending posting list. Immutable once built; holds a reference to
/// the corpus it indexes, which must outlive it.
class InvertedIndex {
public:
    using PostingMap = std::map<std::string, std::vector<Posting>, std::less<>>;

    InvertedIndex(const Corpus& corpus, std::size_t gram_len, PostingMap postings);

    const Corpus& corpus() const noexcept { return *corpus_; }
    std::size_t gram_len() const noexcept { return gram_len_; }
    const PostingMap& postings() const noexcept { return postings_; }

    /// Empty list when the gram is absent.
    const std::vector<Posting>& postings_for(std::string_view gram) const;

    /// Multiset-shared gram count between `query` and every record, dense by id.
    std::vector<std::uint32_t> shared_counts(std::string_view query) const;

private:
    const Corpus* corpus_;
    std::size_t gram_len_;
    PostingMap postings_;
};

/// Throws Error{EmptyCorpus} for an empty corpus, Error{InvalidParams} for gram_len 0.
InvertedIndex build_index(const Corpus& corpus, std::size_t gram_len);

/// Records sharing at least min_common_grams(...) grams with the query, in id
/// order; every record when the bound is <= 0.
std::vector<Candidate> candidate_lookup(const InvertedIndex& index, std::string_view query,
                                        std::size_t epsilon);

enum class Boundary { Inclusive, Exclusive };

/// Keeps candidates with edit distance <= epsilon (or < epsilon when Exclusive).
std::vector<Neighbor> verify_candidates(const Corpus& corpus, std::string_view query,
                                        std::span<const RecordId> candidates, std::size_t epsilon,
                                        Boundary boundary = Boundary::Inclusive);

/// candidate_lookup followed by verify_candidates.
std::vector<Neighbor> similarity_query(const InvertedIndex& index, std::string_view query,
                                       std::size_t epsilon,
                                       Boundary boundary = Boundary::Inclusive);

}  // namespace divsearch
