#pragma once

#include "divsearch/featurize.hpp"
#include "divsearch/gen_greedy.hpp"

#include <cstdint>
#include <vector>

namespace divsearch {

using ClusterId = std::uint32_t;

struct ClusterModelConfig {
    std::size_t dims = 64;
    std::size_t clusters = 0;  // 0 selects default_cluster_count()
    std::uint64_t seed = 0;
    double sample_rate = 0.05;
    std::size_t max_iters = 100;
};

struct LabeledSample {
    RecordId id = 0;
    ClusterId label = 0;

    bool operator==(const LabeledSample&) const = default;
};

/// Offline state for CB2S: vocabulary, k-means partition, the complete graph
/// of centroid distances and the KNN training sample.
struct ClusterModel {
    ClusterModelConfig config;
    BigramVocabulary vocabulary;
    FeatureMatrix vectors;  // one row per record, derived from vocabulary
    FeatureMatrix centroids;
    std::vector<ClusterId> labels;                 // per record
    std::vector<std::vector<RecordId>> members;    // per cluster, ascending
    std::vector<RecordId> medoids;                 // per cluster
    Eigen::MatrixXd centroid_distances;
    std::vector<LabeledSample> training_sample;
    std::size_t kmeans_iterations = 0;

    std::size_t cluster_count() const noexcept { return members.size(); }
};

/// Upper bound on the text bytes a single cluster should hold.
inline constexpr std::size_t kMaxClusterBytes = std::size_t{64} << 20;

/// max(2, ceil(n / 5000), ceil(bytes / 64 MiB)), never more than n.
std::size_t default_cluster_count(const Corpus& corpus);

/// Member with the least summed edit distance to its co-members. Clusters
/// larger than `exact_limit` are scored on a seeded sample of that many
/// members.
RecordId cluster_medoid(const Corpus& corpus, const std::vector<RecordId>& members,
                        std::uint64_t seed, std::size_t exact_limit = 64);

/// Throws Error{EmptyCorpus} for an empty corpus and Error{InvalidParams}
/// when the cluster count exceeds the corpus size.
ClusterModel build_cluster_model(const Corpus& corpus, const ClusterModelConfig& config);

/// Recomputes the per-record vectors and labels after the persisted parts of
/// a model are restored.
void rehydrate_cluster_model(ClusterModel& model, const Corpus& corpus);

/// Majority label among the `k_neighbors` nearest training samples (Euclidean,
/// ties by record id). A tied vote goes to the tied label met first in
/// distance order.
ClusterId knn_classify(const FeatureVector& query, const ClusterModel& model,
                       std::size_t k_neighbors = 5);

/// The ceil(sigma * M) clusters nearest `center` by centroid distance,
/// `center` first, ties by cluster id. Direct edges are shortest paths in a
/// complete metric graph, so no graph search is needed.
std::vector<ClusterId> prune_clusters(const ClusterModel& model, ClusterId center, double sigma);

enum class Cb2sStop {
    AtKmin,  // stop at the first cluster switch with |S| >= k_min
    AtKmax   // keep harvesting until k_max or the pruned clusters run out
};

struct Cb2sOptions {
    std::size_t k_neighbors = 5;
    Cb2sStop stop = Cb2sStop::AtKmin;
};

struct Cb2sDraw {
    ClusterId cluster = 0;
    RecordId id = 0;
    double vector_distance = 0.0;
};

struct Cb2sOutcome : SearchOutcome {
    ClusterId center = 0;
    std::vector<ClusterId> set_list;
    std::vector<Cb2sDraw> trace;
};

/// Classify the query, prune the cluster graph, then harvest nearest-first
/// inside each cluster. A visit to a cluster ends when F(q, S) drops or when
/// more than (1 - lambda) * k_min records were drawn during the visit;
/// visits cycle through the pruned list until the stop rule is met.
Cb2sOutcome cb2s_search(std::string_view query, const SearchParams& params,
                        const ClusterModel& model, const Corpus& corpus,
                        const Cb2sOptions& options = {});

}  // namespace divsearch
