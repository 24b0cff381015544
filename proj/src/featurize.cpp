#include "divsearch/featurize.hpp"

#include <algorithm>
#include <unordered_set>

namespace divsearch {

namespace {

std::uint16_t bigram_key(char a, char b) {
    return static_cast<std::uint16_t>((static_cast<unsigned char>(a) << 8) | static_cast<unsigned char>(b));
}

}  // namespace

BigramVocabulary::BigramVocabulary(std::vector<std::string> bigrams) : bigrams_(std::move(bigrams)) {
    for (std::size_t i = 0; i < bigrams_.size(); ++i) {
        if (bigrams_[i].size() != 2) throw Error(ErrorKind::Format, "vocabulary entries must be bigrams");
        slot_.emplace(bigram_key(bigrams_[i][0], bigrams_[i][1]), static_cast<std::uint32_t>(i));
    }
}

BigramVocabulary BigramVocabulary::fit(const Corpus& corpus, std::size_t dims) {
    std::vector<std::uint32_t> df(1u << 16, 0);
    std::vector<std::uint16_t> seen;
    for (const auto& text : corpus.texts()) {
        seen.clear();
        for (std::size_t i = 0; i + 1 < text.size(); ++i) seen.push_back(bigram_key(text[i], text[i + 1]));
        std::sort(seen.begin(), seen.end());
        seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
        for (auto k : seen) ++df[k];
    }
    std::vector<std::uint16_t> keys;
    for (std::uint32_t k = 0; k < df.size(); ++k)
        if (df[k] > 0) keys.push_back(static_cast<std::uint16_t>(k));
    std::stable_sort(keys.begin(), keys.end(), [&](std::uint16_t a, std::uint16_t b) { return df[a] > df[b]; });
    if (keys.size() > dims) keys.resize(dims);

    std::vector<std::string> bigrams;
    bigrams.reserve(keys.size());
    for (auto k : keys) bigrams.push_back({static_cast<char>(k >> 8), static_cast<char>(k & 0xff)});
    return BigramVocabulary(std::move(bigrams));
}

FeatureVector BigramVocabulary::transform(std::string_view text) const {
    FeatureVector v = FeatureVector::Zero(static_cast<Eigen::Index>(dims()));
    for (std::size_t i = 0; i + 1 < text.size(); ++i) {
        auto it = slot_.find(bigram_key(text[i], text[i + 1]));
        if (it != slot_.end()) v(it->second) += 1.0;
    }
    const double norm = v.norm();
    if (norm > 0.0) v /= norm;
    return v;
}

FeatureMatrix BigramVocabulary::transform(const Corpus& corpus) const {
    FeatureMatrix m(static_cast<Eigen::Index>(corpus.size()), static_cast<Eigen::Index>(dims()));
    for (std::size_t i = 0; i < corpus.size(); ++i)
        m.row(static_cast<Eigen::Index>(i)) = transform(corpus.texts()[i]).transpose();
    return m;
}

}  // namespace divsearch
