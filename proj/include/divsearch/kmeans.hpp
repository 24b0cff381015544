#pragma once

#include "divsearch/random.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace divsearch {

template <typename Scalar>
struct KMeansResult {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> centroids;
    std::vector<std::uint32_t> labels;
    std::size_t iterations = 0;
    bool converged = false;
};

namespace detail {

template <typename Derived, typename Row>
std::size_t nearest_row(const Eigen::MatrixBase<Derived>& centers, const Row& p,
                        typename Derived::Scalar* out_dist = nullptr) {
    using Scalar = typename Derived::Scalar;
    std::size_t best = 0;
    Scalar best_d = std::numeric_limits<Scalar>::max();
    for (Eigen::Index c = 0; c < centers.rows(); ++c) {
        Scalar d = (centers.row(c) - p).squaredNorm();
        if (d < best_d) {
            best_d = d;
            best = static_cast<std::size_t>(c);
        }
    }
    if (out_dist) *out_dist = best_d;
    return best;
}

}  // namespace detail

/// Seeded farthest-point initialization: the first centre is a uniformly
/// drawn row, each further centre is the row farthest from all chosen ones
/// (lowest index on ties).
template <typename Derived>
std::vector<std::size_t> farthest_point_init(const Eigen::MatrixBase<Derived>& points,
                                             std::size_t k, std::uint64_t seed) {
    using Scalar = typename Derived::Scalar;
    const auto n = static_cast<std::size_t>(points.rows());
    Rng rng(seed);
    std::vector<std::size_t> chosen{uniform_index(rng, n)};
    std::vector<Scalar> min_d(n, std::numeric_limits<Scalar>::max());
    while (chosen.size() < k) {
        const auto& last = points.row(static_cast<Eigen::Index>(chosen.back()));
        std::size_t far = 0;
        Scalar far_d = Scalar(-1);
        for (std::size_t i = 0; i < n; ++i) {
            min_d[i] = std::min(min_d[i], (points.row(static_cast<Eigen::Index>(i)) - last).squaredNorm());
            if (min_d[i] > far_d) {
                far_d = min_d[i];
                far = i;
            }
        }
        chosen.push_back(far);
    }
    return chosen;
}

/// Lloyd iterations until assignments stop changing or `max_iters` is hit.
/// An emptied cluster is re-seeded with the point farthest from its own
/// centroid among points whose cluster would not empty in turn.
template <typename Derived>
KMeansResult<typename Derived::Scalar> kmeans(const Eigen::MatrixBase<Derived>& points,
                                              std::size_t k, std::uint64_t seed,
                                              std::size_t max_iters) {
    using Scalar = typename Derived::Scalar;
    const auto n = static_cast<std::size_t>(points.rows());
    if (k == 0 || k > n) throw std::invalid_argument("kmeans: cluster count must be in [1, rows]");

    KMeansResult<Scalar> out;
    out.centroids.resize(static_cast<Eigen::Index>(k), points.cols());
    auto init = farthest_point_init(points, k, seed);
    for (std::size_t c = 0; c < k; ++c)
        out.centroids.row(static_cast<Eigen::Index>(c)) = points.row(static_cast<Eigen::Index>(init[c]));

    out.labels.assign(n, std::numeric_limits<std::uint32_t>::max());
    std::vector<Scalar> dist(n);
    std::vector<std::size_t> counts(k);

    for (out.iterations = 0; out.iterations < max_iters; ++out.iterations) {
        bool changed = false;
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            auto c = static_cast<std::uint32_t>(
                detail::nearest_row(out.centroids, points.row(static_cast<Eigen::Index>(i)), &dist[i]));
            if (c != out.labels[i]) {
                out.labels[i] = c;
                changed = true;
            }
            ++counts[c];
        }

        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] != 0) continue;
            std::size_t far = n;
            Scalar far_d = Scalar(-1);
            for (std::size_t i = 0; i < n; ++i) {
                if (counts[out.labels[i]] > 1 && dist[i] > far_d) {
                    far_d = dist[i];
                    far = i;
                }
            }
            if (far == n) break;
            --counts[out.labels[far]];
            out.labels[far] = static_cast<std::uint32_t>(c);
            counts[c] = 1;
            dist[far] = Scalar(0);
            changed = true;
        }

        if (!changed && out.iterations > 0) {
            out.converged = true;
            break;
        }

        out.centroids.setZero();
        for (std::size_t i = 0; i < n; ++i)
            out.centroids.row(out.labels[i]) += points.row(static_cast<Eigen::Index>(i));
        for (std::size_t c = 0; c < k; ++c)
            out.centroids.row(static_cast<Eigen::Index>(c)) /= static_cast<Scalar>(counts[c]);
    }
    return out;
}

}  // namespace divsearch
