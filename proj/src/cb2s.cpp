#include "divsearch/cb2s.hpp"

#include "divsearch/edit_distance.hpp"
#include "divsearch/kmeans.hpp"
#include "divsearch/random.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

namespace divsearch {

std::size_t default_cluster_count(const Corpus& corpus) {
    const std::size_t n = corpus.size();
    std::size_t bytes = 0;
    for (const auto& t : corpus.texts()) bytes += t.size();
    std::size_t m = std::max<std::size_t>({2, (n + 4999) / 5000, (bytes + kMaxClusterBytes - 1) / kMaxClusterBytes});
    return std::min(m, n);
}

RecordId cluster_medoid(const Corpus& corpus, const std::vector<RecordId>& members,
                        std::uint64_t seed, std::size_t exact_limit) {
    if (members.empty()) throw Error(ErrorKind::EmptySet, "medoid of an empty cluster");
    std::vector<RecordId> pool = members;
    if (pool.size() > exact_limit) {
        Rng rng(seed);
        auto picks = sample_without_replacement(rng, members.size(), exact_limit);
        std::sort(picks.begin(), picks.end());
        pool.clear();
        for (auto p : picks) pool.push_back(members[p]);
    }
    std::vector<std::size_t> cost(pool.size(), 0);
    for (std::size_t i = 0; i < pool.size(); ++i)
        for (std::size_t j = i + 1; j < pool.size(); ++j) {
            auto d = edit_distance(corpus.text(pool[i]), corpus.text(pool[j]));
            cost[i] += d;
            cost[j] += d;
        }
    auto best = std::min_element(cost.begin(), cost.end());
    return pool[static_cast<std::size_t>(best - cost.begin())];
}

void rehydrate_cluster_model(ClusterModel& model, const Corpus& corpus) {
    model.vectors = model.vocabulary.transform(corpus);
    model.labels.assign(corpus.size(), 0);
    for (std::size_t c = 0; c < model.members.size(); ++c)
        for (RecordId id : model.members[c]) {
            if (id >= corpus.size()) throw Error(ErrorKind::Format, "cluster member id out of range");
            model.labels[id] = static_cast<ClusterId>(c);
        }
}

ClusterModel build_cluster_model(const Corpus& corpus, const ClusterModelConfig& config) {
    if (corpus.empty()) throw Error(ErrorKind::EmptyCorpus, "cannot cluster an empty corpus");
    if (config.dims == 0) throw Error(ErrorKind::InvalidParams, "dims must be positive");
    if (!(config.sample_rate > 0.0 && config.sample_rate <= 1.0))
        throw Error(ErrorKind::InvalidParams, "sample_rate must lie in (0, 1]");
    const std::size_t m = config.clusters == 0 ? default_cluster_count(corpus) : config.clusters;
    if (m > corpus.size())
        throw Error(ErrorKind::InvalidParams, "cluster count exceeds the corpus size");

    ClusterModel model;
    model.config = config;
    model.config.clusters = m;
    model.vocabulary = BigramVocabulary::fit(corpus, config.dims);
    model.vectors = model.vocabulary.transform(corpus);

    auto km = kmeans(model.vectors, m, config.seed, std::max<std::size_t>(config.max_iters, 1));
    model.centroids = std::move(km.centroids);
    model.labels = std::move(km.labels);
    model.kmeans_iterations = km.iterations;
    model.members.assign(m, {});
    for (std::size_t i = 0; i < corpus.size(); ++i) model.members[model.labels[i]].push_back(static_cast<RecordId>(i));

    model.centroid_distances.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (Eigen::Index i = 0; i < model.centroids.rows(); ++i)
        for (Eigen::Index j = 0; j < model.centroids.rows(); ++j)
            model.centroid_distances(i, j) = (model.centroids.row(i) - model.centroids.row(j)).norm();

    for (std::size_t c = 0; c < m; ++c)
        model.medoids.push_back(cluster_medoid(corpus, model.members[c], config.seed + c + 1));

    const auto wanted = static_cast<std::size_t>(std::lround(config.sample_rate * static_cast<double>(corpus.size())));
    Rng rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
    auto picks = sample_without_replacement(rng, corpus.size(), std::clamp<std::size_t>(wanted, 1, corpus.size()));
    std::sort(picks.begin(), picks.end());
    for (auto p : picks) model.training_sample.push_back(LabeledSample{static_cast<RecordId>(p), model.labels[p]});
    return model;
}

ClusterId knn_classify(const FeatureVector& query, const ClusterModel& model, std::size_t k_neighbors) {
    if (model.training_sample.empty()) throw Error(ErrorKind::EmptySet, "model has no training sample");
    std::vector<std::pair<double, std::size_t>> nearest;
    nearest.reserve(model.training_sample.size());
    for (std::size_t i = 0; i < model.training_sample.size(); ++i) {
        const auto row = model.vectors.row(static_cast<Eigen::Index>(model.training_sample[i].id));
        nearest.emplace_back((row.transpose() - query).squaredNorm(), i);
    }
    const std::size_t k = std::clamp<std::size_t>(k_neighbors, 1, nearest.size());
    auto by_distance = [&](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return model.training_sample[a.second].id < model.training_sample[b.second].id;
    };
    std::partial_sort(nearest.begin(), nearest.begin() + static_cast<std::ptrdiff_t>(k), nearest.end(), by_distance);

    std::map<ClusterId, std::size_t> votes;
    for (std::size_t i = 0; i < k; ++i) ++votes[model.training_sample[nearest[i].second].label];
    std::size_t top = 0;
    for (const auto& [label, count] : votes) top = std::max(top, count);
    for (std::size_t i = 0; i < k; ++i) {
        const ClusterId label = model.training_sample[nearest[i].second].label;
        if (votes[label] == top) return label;
    }
    return model.training_sample[nearest.front().second].label;
}

std::vector<ClusterId> prune_clusters(const ClusterModel& model, ClusterId center, double sigma) {
    const std::size_t m = model.cluster_count();
    if (center >= m) throw Error(ErrorKind::InvalidParams, "center cluster out of range");
    const auto keep = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::ceil(sigma * static_cast<double>(m) - 1e-9)), 1, m);

    std::vector<ClusterId> order;
    for (ClusterId c = 0; c < m; ++c)
        if (c != center) order.push_back(c);
    const auto row = model.centroid_distances.row(center);
    std::stable_sort(order.begin(), order.end(), [&](ClusterId a, ClusterId b) { return row(a) < row(b); });
    order.insert(order.begin(), center);
    order.resize(keep);
    return order;
}

Cb2sOutcome cb2s_search(std::string_view query, const SearchParams& params,
                        const ClusterModel& model, const Corpus& corpus, const Cb2sOptions& options) {
    params.validate();
    if (corpus.empty() || model.cluster_count() == 0)
        throw Error(ErrorKind::EmptyCorpus, "cb2s needs a non-empty corpus and model");
    if (static_cast<std::size_t>(model.vectors.rows()) != corpus.size())
        throw Error(ErrorKind::StaleArtifact, "cluster model was built for a different corpus");

    Cb2sOutcome out;
    const FeatureVector qv = model.vocabulary.transform(query);
    out.center = knn_classify(qv, model, options.k_neighbors);
    out.set_list = prune_clusters(model, out.center, params.sigma);

    // Per-cluster draw order: nearest vector first, ties by id.
    std::vector<std::vector<std::pair<double, RecordId>>> queues;
    for (ClusterId c : out.set_list) {
        std::vector<std::pair<double, RecordId>> q;
        q.reserve(model.members[c].size());
        for (RecordId id : model.members[c])
            q.emplace_back((model.vectors.row(static_cast<Eigen::Index>(id)).transpose() - qv).norm(), id);
        std::sort(q.begin(), q.end());
        queues.push_back(std::move(q));
    }
    std::vector<std::size_t> cursor(queues.size(), 0);
    std::size_t remaining = 0;
    for (const auto& q : queues) remaining += q.size();

    out.result.query = std::string(query);
    double sum_to_query = 0.0;
    double sum_pairs = 0.0;
    auto current_f = [&] {
        const double k = static_cast<double>(out.result.size());
        const double sim = sum_to_query / k;
        const double div = k < 2 ? 0.0 : 2.0 * sum_pairs / (k * (k - 1.0));
        return objective(params.lambda, div, sim);
    };

    const double visit_budget = (1.0 - params.lambda) * static_cast<double>(params.k_min);
    std::optional<double> previous_f;
    bool done = false;
    for (std::size_t pos = 0; !done; pos = (pos + 1) % queues.size()) {
        if (remaining == 0) {
            out.exhausted = out.result.size() < params.k_min;
            break;
        }
        auto& queue = queues[pos];
        std::size_t drawn = 0;
        while (cursor[pos] < queue.size()) {
            const auto [vdist, id] = queue[cursor[pos]++];
            --remaining;
            const auto text = corpus.text(id);
            for (const auto& m : out.result.members) sum_pairs += static_cast<double>(edit_distance(m.text, text));
            const std::size_t dq = edit_distance(query, text);
            sum_to_query += static_cast<double>(dq);
            out.result.members.push_back(ResultMember{id, std::string(text), dq});
            out.trace.push_back(Cb2sDraw{out.set_list[pos], id, vdist});
            ++drawn;

            const double f = current_f();
            if (out.result.size() >= params.k_max) {
                done = true;
                break;
            }
            const bool dropped = previous_f && f < *previous_f;
            previous_f = f;
            if (dropped || static_cast<double>(drawn) > visit_budget) break;
        }
        if (!done && options.stop == Cb2sStop::AtKmin && out.result.size() >= params.k_min) done = true;
    }

    const double k = static_cast<double>(out.result.size());
    if (!out.result.empty()) {
        out.quality.arg_sim = sum_to_query / k;
        out.quality.arg_div = k < 2 ? 0.0 : 2.0 * sum_pairs / (k * (k - 1.0));
        out.quality.f_value = objective(params.lambda, out.quality.arg_div, out.quality.arg_sim);
        out.quality.result_count = out.result.size();
    }
    out.pool_size = out.result.size();
    return out;
}

}  // namespace divsearch
