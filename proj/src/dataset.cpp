#include "divsearch/dataset.hpp"

#include "divsearch/random.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace divsearch {

std::string normalize_words(std::string_view line, const std::vector<std::string>& stop_words) {
    std::string lowered(line);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    std::istringstream words(lowered);
    std::string word, out;
    while (words >> word) {
        if (std::find(stop_words.begin(), stop_words.end(), word) != stop_words.end()) continue;
        if (!out.empty()) out.push_back(' ');
        out += word;
    }
    return out;
}

Corpus read_dataset(std::istream& in, const IngestOptions& options, IngestSummary* summary) {
    IngestSummary local;
    std::vector<std::string> texts;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (options.mode == IngestMode::WordMode) line = normalize_words(line, options.stop_words);
        if (line.empty()) {
            ++local.blank_skipped;
            continue;
        }
        if (line.size() > options.max_record_length) {
            ++local.too_long_rejected;
            continue;
        }
        texts.push_back(std::move(line));
    }
    local.records = texts.size();
    if (summary) *summary = local;
    if (texts.empty()) throw Error(ErrorKind::EmptyCorpus, "dataset holds no records");
    return Corpus(std::move(texts));
}

Corpus load_dataset(const std::filesystem::path& path, const IngestOptions& options,
                    IngestSummary* summary) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open dataset " + path.string());
    return read_dataset(in, options, summary);
}

Corpus load_dataset(const DatasetSpec& spec, IngestSummary* summary) {
    if (const auto* path = std::get_if<std::filesystem::path>(&spec.source))
        return load_dataset(*path, spec.ingest, summary);
    auto corpus = generate_random_dataset(std::get<RandomDatasetConfig>(spec.source));
    if (summary) *summary = IngestSummary{corpus.size(), 0, 0};
    if (corpus.empty()) throw Error(ErrorKind::EmptyCorpus, "generator produced no records");
    return corpus;
}

namespace {

void check_generator(const RandomDatasetConfig& config) {
    if (config.alphabet.empty()) throw Error(ErrorKind::InvalidParams, "alphabet must not be empty");
    if (config.min_len > config.max_len) throw Error(ErrorKind::InvalidParams, "min_len exceeds max_len");
}

std::string random_string(Rng& rng, const RandomDatasetConfig& config) {
    const std::size_t len = config.min_len + uniform_index(rng, config.max_len - config.min_len + 1);
    std::string s(len, ' ');
    for (auto& c : s) c = config.alphabet[uniform_index(rng, config.alphabet.size())];
    return s;
}

}  // namespace

Corpus generate_random_dataset(const RandomDatasetConfig& config) {
    check_generator(config);
    Rng rng(config.seed);
    std::vector<std::string> texts;
    texts.reserve(config.n);
    for (std::size_t i = 0; i < config.n; ++i) texts.push_back(random_string(rng, config));
    return Corpus(std::move(texts));
}

std::vector<std::string> generate_random_queries(const RandomDatasetConfig& config,
                                                 std::size_t count, std::uint64_t seed) {
    check_generator(config);
    Rng rng(seed ^ 0xa5a5a5a5deadbeefULL);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(random_string(rng, config));
    return out;
}

void write_dataset(const Corpus& corpus, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
    for (const auto& t : corpus.texts()) out << t << '\n';
    if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

}  // namespace divsearch
