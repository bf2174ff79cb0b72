#pragma once

#include <cstdint>
#include <vector>

namespace atmscore {

using Matrix = std::vector<std::vector<double>>;

struct KmeansParams {
    int max_iter = 300;
    double tol = 1e-6;  // relative SSE improvement below which Lloyd stops
    int restarts = 10;
};

struct ClusterModel {
    int k = 0;
    Matrix centroids;         // k x d
    std::vector<int> labels;  // length n, values in [0, k)
    double sse = 0.0;
    int iterations_run = 0;   // of the winning restart
    uint64_t seed = 0;
    // per-iteration SSE of every restart, for monotonicity audits
    std::vector<std::vector<double>> restart_traces;
};

// Lloyd's algorithm with k-means++ seeding, best of `restarts` runs by SSE.
// Deterministic given (points, k, seed, params). The returned model never
// carries an empty cluster.
ClusterModel kmeans_fit(const Matrix& points, int k, uint64_t seed,
                        const KmeansParams& params = {});

// Nearest centroid by squared Euclidean distance; ties go to the lowest
// centroid index.
std::vector<int> assign(const Matrix& points, const Matrix& centroids);

double sse(const Matrix& points, const Matrix& centroids, const std::vector<int>& labels);

}  // namespace atmscore
