#include "atmscore/kmeans.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "atmscore/errors.hpp"
#include "atmscore/rng.hpp"

namespace atmscore {

namespace {

constexpr const char* kModule = "kmeans";

double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

Matrix kmeanspp_init(const Matrix& points, int k, Rng& rng) {
    const size_t n = points.size();
    Matrix centroids;
    centroids.reserve(static_cast<size_t>(k));
    centroids.push_back(points[rng.below(n)]);
    std::vector<double> dist2(n);
    while (centroids.size() < static_cast<size_t>(k)) {
        for (size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& c : centroids) {
                best = std::min(best, squared_distance(points[i], c));
            }
            dist2[i] = best;
        }
        centroids.push_back(points[rng.weighted_index(dist2)]);
    }
    return centroids;
}

struct LloydResult {
    Matrix centroids;
    std::vector<int> labels;
    double sse = 0.0;
    int iterations = 0;
    std::vector<double> trace;
};

LloydResult lloyd(const Matrix& points, int k, Rng& rng, const KmeansParams& params) {
    const size_t n = points.size();
    const size_t d = points[0].size();
    LloydResult res;
    res.centroids = kmeanspp_init(points, k, rng);

    double prev_sse = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < params.max_iter; ++iter) {
        res.labels = assign(points, res.centroids);

        // Empty-cluster repair: hand the cluster the point farthest from its
        // assigned centroid, skipping points that sit alone in their cluster.
        std::vector<int> sizes(static_cast<size_t>(k), 0);
        for (int lbl : res.labels) ++sizes[static_cast<size_t>(lbl)];
        for (int c = 0; c < k; ++c) {
            if (sizes[static_cast<size_t>(c)] > 0) continue;
            double far_d = -1.0;
            size_t far_i = 0;
            for (size_t i = 0; i < n; ++i) {
                if (sizes[static_cast<size_t>(res.labels[i])] < 2) continue;
                double dd = squared_distance(points[i],
                                             res.centroids[static_cast<size_t>(res.labels[i])]);
                if (dd > far_d) {
                    far_d = dd;
                    far_i = i;
                }
            }
            --sizes[static_cast<size_t>(res.labels[far_i])];
            res.labels[far_i] = c;
            ++sizes[static_cast<size_t>(c)];
            res.centroids[static_cast<size_t>(c)] = points[far_i];
        }

        for (int c = 0; c < k; ++c) {
            auto& centroid = res.centroids[static_cast<size_t>(c)];
            centroid.assign(d, 0.0);
            for (size_t i = 0; i < n; ++i) {
                if (res.labels[i] != c) continue;
                for (size_t j = 0; j < d; ++j) centroid[j] += points[i][j];
            }
            const double m = static_cast<double>(sizes[static_cast<size_t>(c)]);
            for (size_t j = 0; j < d; ++j) centroid[j] /= m;
        }

        res.sse = sse(points, res.centroids, res.labels);
        res.trace.push_back(res.sse);
        res.iterations = iter + 1;

        if (prev_sse - res.sse <= params.tol * std::max(prev_sse, 1e-300) &&
            std::isfinite(prev_sse)) {
            break;
        }
        prev_sse = res.sse;
    }
    return res;
}

}  // namespace

std::vector<int> assign(const Matrix& points, const Matrix& centroids) {
    if (centroids.empty()) {
        throw DomainError(kModule, "assign: no centroids");
    }
    const size_t d = centroids[0].size();
    for (const auto& c : centroids) {
        if (c.size() != d) {
            throw DomainError(kModule, "assign: ragged centroid matrix");
        }
    }
    std::vector<int> labels(points.size(), 0);
    for (size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != d) {
            throw DomainError(kModule, "assign: point/centroid dimension mismatch");
        }
        double best = squared_distance(points[i], centroids[0]);
        int best_c = 0;
        for (size_t c = 1; c < centroids.size(); ++c) {
            const double dd = squared_distance(points[i], centroids[c]);
            if (dd < best) {
                best = dd;
                best_c = static_cast<int>(c);
            }
        }
        labels[i] = best_c;
    }
    return labels;
}

double sse(const Matrix& points, const Matrix& centroids, const std::vector<int>& labels) {
    if (labels.size() != points.size()) {
        throw DomainError(kModule, "sse: label/point count mismatch");
    }
    double total = 0.0;
    for (size_t i = 0; i < points.size(); ++i) {
        if (labels[i] < 0 || labels[i] >= static_cast<int>(centroids.size())) {
            throw DomainError(kModule, "sse: label " + std::to_string(labels[i]) +
                                           " out of range at point " + std::to_string(i));
        }
        total += squared_distance(points[i], centroids[static_cast<size_t>(labels[i])]);
    }
    return total;
}

ClusterModel kmeans_fit(const Matrix& points, int k, uint64_t seed,
                        const KmeansParams& params) {
    const size_t n = points.size();
    if (k < 1) {
        throw DomainError(kModule, "kmeans_fit: k must be >= 1");
    }
    if (n < static_cast<size_t>(k)) {
        throw DomainError(kModule, "kmeans_fit: n=" + std::to_string(n) + " < k=" +
                                       std::to_string(k));
    }
    const size_t d = points[0].size();
    if (d == 0) {
        throw DomainError(kModule, "kmeans_fit: zero-dimensional points");
    }
    for (const auto& p : points) {
        if (p.size() != d) {
            throw DomainError(kModule, "kmeans_fit: ragged point matrix");
        }
        for (double v : p) {
            if (!std::isfinite(v)) {
                throw DomainError(kModule, "kmeans_fit: non-finite input");
            }
        }
    }

    ClusterModel best;
    best.k = k;
    best.seed = seed;
    best.sse = std::numeric_limits<double>::infinity();
    const int restarts = std::max(1, params.restarts);
    for (int r = 0; r < restarts; ++r) {
        Rng rng(derive_seed(seed, "kmeans_restart", static_cast<uint64_t>(r)));
        LloydResult run = lloyd(points, k, rng, params);
        best.restart_traces.push_back(run.trace);
        if (run.sse < best.sse) {
            best.sse = run.sse;
            best.centroids = std::move(run.centroids);
            best.labels = std::move(run.labels);
            best.iterations_run = run.iterations;
        }
    }
    return best;
}

}  // namespace atmscore
