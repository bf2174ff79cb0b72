#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "atmscore/dataset.hpp"

namespace atmscore {

struct GlobalWeights {
    std::vector<std::pair<std::string, double>> entries;  // (feature, weight), ordered
    bool normalized = false;

    double weight(const std::string& feature) const;  // 0 when absent
    double sum() const;
};

// Numerically stable softmax (max-shifted); output sums to 1 within 1e-12.
std::vector<double> softmax(const std::vector<double>& raw);

// The shipped 11-feature weight vector. The printed weights sum to 0.999 and
// are treated as already normalized; re-normalizing them would flatten the
// vector, so softmax is applied only to user-supplied raw weights.
GlobalWeights default_global_weights();

// Applies softmax to the raw weights, preserving feature order.
GlobalWeights normalize_weights(const GlobalWeights& raw);

// Flat "feature = weight" text. When `raw` is true the result still needs
// normalize_weights; otherwise the weights must already sum to ~1.
GlobalWeights load_weights(const std::filesystem::path& path, bool raw);

struct ZipScore {
    std::string zipcode;
    double y_global = 0.0;
};

// y_global = sum_i w_i * x_i over the weight vector's features only.
double global_zip_score(const GlobalWeights& weights, const NormalizedTable& table, size_t row);
double global_zip_score(const GlobalWeights& weights,
                        const std::vector<std::pair<std::string, double>>& row);

std::vector<ZipScore> global_scores(const GlobalWeights& weights, const NormalizedTable& table);

}  // namespace atmscore
