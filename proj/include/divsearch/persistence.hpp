#pragma once

#include "divsearch/cb2s.hpp"
#include "divsearch/qgram_index.hpp"

#include <filesystem>
#include <iosfwd>

namespace divsearch {

inline constexpr std::uint32_t kIndexFormatVersion = 1;
inline constexpr std::uint32_t kModelFormatVersion = 1;

// Little-endian container: magic, format version, corpus checksum, a
// type-specific header, the payload, and a trailing FNV-1a of everything
// before it. Load refuses bad magic (Format), another version
// (VersionMismatch), a different corpus (StaleArtifact) and truncated or
// corrupted input (Format).

void write_index(const InvertedIndex& index, std::ostream& out);
InvertedIndex read_index(std::istream& in, const Corpus& corpus);
void save_index(const InvertedIndex& index, const std::filesystem::path& path);
InvertedIndex load_index(const std::filesystem::path& path, const Corpus& corpus);

void write_model(const ClusterModel& model, const Corpus& corpus, std::ostream& out);
ClusterModel read_model(std::istream& in, const Corpus& corpus);
void save_model(const ClusterModel& model, const Corpus& corpus, const std::filesystem::path& path);
ClusterModel load_model(const std::filesystem::path& path, const Corpus& corpus);

}  // namespace divsearch
