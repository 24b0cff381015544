#pragma once

#include "divsearch/types.hpp"

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <variant>
#include <vector>

namespace divsearch {

enum class IngestMode { RawLine, WordMode };

struct IngestOptions {
    IngestMode mode = IngestMode::RawLine;
    std::vector<std::string> stop_words{"the", "a", "an", "of", "and", "in", "on", "for", "to"};
    std::size_t max_record_length = 4096;
};

struct IngestSummary {
    std::size_t records = 0;
    std::size_t blank_skipped = 0;
    std::size_t too_long_rejected = 0;
};

struct RandomDatasetConfig {
    std::size_t n = 0;
    std::size_t min_len = 1;
    std::size_t max_len = 1;
    std::string alphabet = "abcdefghijklmnopqrstuvwxyz";
    std::uint64_t seed = 0;
};

/// Where a corpus comes from and what it is shaped like.
struct DatasetSpec {
    std::variant<std::filesystem::path, RandomDatasetConfig> source;
    IngestOptions ingest;
    std::string label = "random";  // conference-like | protein-like | mammal-like | random
};

/// One record per non-empty line. Throws Error{Io} when unreadable and
/// Error{EmptyCorpus} when nothing survives ingestion.
Corpus load_dataset(const std::filesystem::path& path, const IngestOptions& options = {},
                    IngestSummary* summary = nullptr);

Corpus read_dataset(std::istream& in, const IngestOptions& options = {},
                    IngestSummary* summary = nullptr);

Corpus load_dataset(const DatasetSpec& spec, IngestSummary* summary = nullptr);

/// Word-mode normalization of one line: lowercase, drop stop tokens,
/// collapse whitespace.
std::string normalize_words(std::string_view line, const std::vector<std::string>& stop_words);

/// Seeded strings with lengths uniform in [min_len, max_len]. n == 0 yields
/// an empty corpus. Throws Error{InvalidParams} on an empty alphabet or
/// min_len > max_len.
Corpus generate_random_dataset(const RandomDatasetConfig& config);

/// `count` strings from the same distribution under a different stream.
std::vector<std::string> generate_random_queries(const RandomDatasetConfig& config,
                                                 std::size_t count, std::uint64_t seed);

void write_dataset(const Corpus& corpus, const std::filesystem::path& path);

}  // namespace divsearch
