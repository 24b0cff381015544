#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace divsearch {

using RecordId = std::uint32_t;

enum class ErrorKind {
    InvalidParams,
    EmptySet,
    MissingMember,
    EmptyCorpus,
    Io,
    Format,
    VersionMismatch,
    StaleArtifact,
    TooManyCandidates,
};

/// Single exception type for the library; `kind()` lets callers map failures
/// onto exit codes without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct Record {
    RecordId id = 0;
    std::string text;
};

/// The searchable dataset. Ids are dense and equal to the record's position.
class Corpus {
public:
    Corpus() = default;
    explicit Corpus(std::vector<std::string> texts);

    std::size_t size() const noexcept { return texts_.size(); }
    bool empty() const noexcept { return texts_.empty(); }

    std::string_view text(RecordId id) const { return texts_.at(id); }
    const std::vector<std::string>& texts() const noexcept { return texts_; }

    std::size_t max_length() const noexcept { return max_len_; }
    double mean_length() const noexcept;

    /// FNV-1a over length-prefixed texts; persisted artifacts are keyed on it.
    std::uint64_t checksum() const noexcept;

private:
    std::vector<std::string> texts_;
    std::size_t max_len_ = 0;
    std::size_t total_len_ = 0;
};

/// Every tunable of a query. Construct through `make()` to get validation.
struct SearchParams {
    double lambda = 0.5;
    std::size_t k_min = 25;
    std::size_t k_max = 55;
    std::size_t epsilon0 = 40;
    double sigma = 0.25;
    double omega = 0.75;
    std::size_t gram_len = 2;

    /// Throws Error{InvalidParams} when any field is out of range.
    void validate() const;

    static SearchParams make(double lambda, std::size_t k_min, std::size_t k_max,
                             std::size_t epsilon0, double sigma = 0.25,
                             double omega = 0.75, std::size_t gram_len = 2);

    /// ceil((lambda + 1) * k_min), the relaxation pool floor.
    std::size_t pool_floor() const noexcept;
    /// floor((lambda + 1) * k_max), the relaxation pool cap.
    std::size_t pool_cap() const noexcept;
};

}  // namespace divsearch
