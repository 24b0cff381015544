#pragma once

#include "divsearch/types.hpp"

#include <Eigen/Dense>

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace divsearch {

template <typename Scalar>
using FeatureMatrixT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using FeatureMatrix = FeatureMatrixT<double>;
using FeatureVector = Eigen::VectorXd;

/// Character-bigram vocabulary frozen from a corpus: the `dims` bigrams with
/// the highest document frequency, ties in byte order.
class BigramVocabulary {
public:
    BigramVocabulary() = default;
    explicit BigramVocabulary(std::vector<std::string> bigrams);

    static BigramVocabulary fit(const Corpus& corpus, std::size_t dims);

    std::size_t dims() const noexcept { return bigrams_.size(); }
    const std::vector<std::string>& bigrams() const noexcept { return bigrams_; }

    /// Unit-length bigram term-frequency vector. Out-of-vocabulary bigrams are
    /// dropped; a text with no known bigram maps to the zero vector.
    FeatureVector transform(std::string_view text) const;

    /// One row per record.
    FeatureMatrix transform(const Corpus& corpus) const;

private:
    std::vector<std::string> bigrams_;
    std::unordered_map<std::uint16_t, std::uint32_t> slot_;
};

inline FeatureMatrix vectorize(const Corpus& corpus, std::size_t dims) {
    return BigramVocabulary::fit(corpus, dims).transform(corpus);
}

}  // namespace divsearch
