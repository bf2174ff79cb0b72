#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "atmscore/kmeans.hpp"  // Matrix

namespace atmscore {

struct ForestParams {
    int n_trees = 100;
    int max_depth = 0;  // 0 = grow until pure or below min_samples_split
    int min_samples_split = 2;
    int features_per_split = 0;  // 0 = ceil(sqrt(d))
    bool bootstrap = true;
};

// Splits with weighted Gini decrease at or below this are treated as no gain.
constexpr double kMinImpurityDecrease = 1e-12;

struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double impurity_decrease = 0.0;  // parent Gini minus size-weighted child Gini
    int n_samples = 0;
    std::vector<int> class_counts;
};

struct Tree {
    std::vector<TreeNode> nodes;  // nodes[0] is the root

    int predict(const std::vector<double>& x) const;
};

struct Forest {
    std::vector<Tree> trees;
    int n_features = 0;
    int n_classes = 0;
    std::vector<double> importances;  // mean decrease in impurity, sums to 1 when any split exists
    ForestParams params;
    uint64_t seed = 0;
};

// Gini impurity 1 - sum p_c^2; requires at least one nonzero count.
double gini(const std::vector<int>& class_counts);

struct SplitResult {
    int feature = -1;
    double threshold = 0.0;
    double impurity_decrease = 0.0;
};

// Exhaustive scan over candidate features and midpoints between consecutive
// distinct sorted values, maximizing weighted Gini decrease. Ties go to the
// lower feature index, then the lower threshold. Empty when no split clears
// kMinImpurityDecrease.
std::optional<SplitResult> best_split(const Matrix& samples, const std::vector<int>& labels,
                                      const std::vector<int>& candidate_features);

Forest forest_fit(const Matrix& samples, const std::vector<int>& labels,
                  const ForestParams& params, uint64_t seed);

// Majority vote over per-tree leaf-plurality predictions; ties go to the
// lowest class index.
int predict(const Forest& forest, const std::vector<double>& x);

std::vector<double> feature_importance(const Forest& forest);

}  // namespace atmscore
