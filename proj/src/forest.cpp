#include "atmscore/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "atmscore/errors.hpp"
#include "atmscore/rng.hpp"

namespace atmscore {

namespace {

int argmax_count(const std::vector<int>& counts) {
    int best = 0;
    for (int c = 1; c < static_cast<int>(counts.size()); ++c) {
        if (counts[c] > counts[best]) best = c;
    }
    return best;
}

double gini_from_counts(const std::vector<int>& counts, int total) {
    double sum_sq = 0.0;
    for (int c : counts) {
        double p = static_cast<double>(c) / total;
        sum_sq += p * p;
    }
    return 1.0 - sum_sq;
}

struct NodeSplit {
    SplitResult split;
    bool found = false;
};

// Best split over the samples named by idx, considering candidate features in
// ascending order so the tie-break falls out of the strict comparison.
NodeSplit best_split_indexed(const Matrix& samples, const std::vector<int>& labels,
                             const std::vector<int>& idx, const std::vector<int>& candidates,
                             int n_classes) {
    NodeSplit out;
    const int n = static_cast<int>(idx.size());
    if (n < 2) return out;

    std::vector<int> parent_counts(n_classes, 0);
    for (int i : idx) parent_counts[labels[i]]++;
    const double parent_gini = gini_from_counts(parent_counts, n);

    std::vector<std::pair<double, int>> order(n);  // (value, label)
    std::vector<int> left_counts(n_classes), right_counts(n_classes);
    for (int f : candidates) {
        for (int i = 0; i < n; ++i) order[i] = {samples[idx[i]][f], labels[idx[i]]};
        std::sort(order.begin(), order.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::fill(left_counts.begin(), left_counts.end(), 0);
        right_counts = parent_counts;
        for (int i = 0; i + 1 < n; ++i) {
            left_counts[order[i].second]++;
            right_counts[order[i].second]--;
            if (order[i].first == order[i + 1].first) continue;
            const int n_left = i + 1;
            const int n_right = n - n_left;
            double decrease = parent_gini -
                              (static_cast<double>(n_left) / n) * gini_from_counts(left_counts, n_left) -
                              (static_cast<double>(n_right) / n) * gini_from_counts(right_counts, n_right);
            if (decrease > out.split.impurity_decrease) {
                out.split.feature = f;
                out.split.threshold = order[i].first + (order[i + 1].first - order[i].first) / 2.0;
                out.split.impurity_decrease = decrease;
                out.found = true;
            }
        }
    }
    if (out.found && out.split.impurity_decrease <= kMinImpurityDecrease) out.found = false;
    return out;
}

struct TreeBuilder {
    const Matrix& samples;
    const std::vector<int>& labels;
    const ForestParams& params;
    int n_classes;
    int n_features;
    int root_n;
    Rng& rng;
    Tree tree;

    std::vector<int> draw_candidates() {
        int m = params.features_per_split;
        if (m <= 0) m = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n_features))));
        if (m >= n_features) {
            std::vector<int> all(n_features);
            std::iota(all.begin(), all.end(), 0);
            return all;
        }
        std::vector<int> pool(n_features);
        std::iota(pool.begin(), pool.end(), 0);
        for (int i = 0; i < m; ++i) {
            size_t j = i + rng.below(pool.size() - i);
            std::swap(pool[i], pool[j]);
        }
        pool.resize(m);
        std::sort(pool.begin(), pool.end());
        return pool;
    }

    int build(std::vector<int>& idx, int depth) {
        const int node_id = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        {
            TreeNode& node = tree.nodes[node_id];
            node.n_samples = static_cast<int>(idx.size());
            node.class_counts.assign(n_classes, 0);
            for (int i : idx) node.class_counts[labels[i]]++;
        }

        const bool pure = std::count(tree.nodes[node_id].class_counts.begin(),
                                     tree.nodes[node_id].class_counts.end(), 0) == n_classes - 1;
        const bool depth_capped = params.max_depth > 0 && depth >= params.max_depth;
        if (pure || depth_capped || static_cast<int>(idx.size()) < params.min_samples_split)
            return node_id;

        NodeSplit found = best_split_indexed(samples, labels, idx, draw_candidates(), n_classes);
        if (!found.found) return node_id;

        std::vector<int> left_idx, right_idx;
        left_idx.reserve(idx.size());
        right_idx.reserve(idx.size());
        for (int i : idx) {
            (samples[i][found.split.feature] <= found.split.threshold ? left_idx : right_idx)
                .push_back(i);
        }
        idx.clear();
        idx.shrink_to_fit();

        {
            TreeNode& node = tree.nodes[node_id];
            node.feature = found.split.feature;
            node.threshold = found.split.threshold;
            node.impurity_decrease = found.split.impurity_decrease;
        }
        int left = build(left_idx, depth + 1);
        tree.nodes[node_id].left = left;
        int right = build(right_idx, depth + 1);
        tree.nodes[node_id].right = right;
        return node_id;
    }
};

}  // namespace

double gini(const std::vector<int>& class_counts) {
    int total = 0;
    for (int c : class_counts) {
        if (c < 0) throw DomainError("forest", "negative class count");
        total += c;
    }
    if (total == 0) throw DomainError("forest", "gini of empty class counts");
    return gini_from_counts(class_counts, total);
}

std::optional<SplitResult> best_split(const Matrix& samples, const std::vector<int>& labels,
                                      const std::vector<int>& candidate_features) {
    if (samples.size() != labels.size())
        throw DomainError("forest", "samples and labels differ in length");
    if (samples.empty()) throw DomainError("forest", "best_split on empty sample set");
    const int d = static_cast<int>(samples[0].size());
    int n_classes = 0;
    for (int y : labels) {
        if (y < 0) throw DomainError("forest", "negative class label");
        n_classes = std::max(n_classes, y + 1);
    }
    std::vector<int> candidates = candidate_features;
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (int f : candidates) {
        if (f < 0 || f >= d) throw DomainError("forest", "candidate feature out of range");
    }
    std::vector<int> idx(samples.size());
    std::iota(idx.begin(), idx.end(), 0);
    NodeSplit found = best_split_indexed(samples, labels, idx, candidates, n_classes);
    if (!found.found) return std::nullopt;
    return found.split;
}

int Tree::predict(const std::vector<double>& x) const {
    int node_id = 0;
    while (nodes[node_id].feature >= 0) {
        const TreeNode& node = nodes[node_id];
        node_id = x[node.feature] <= node.threshold ? node.left : node.right;
    }
    return argmax_count(nodes[node_id].class_counts);
}

Forest forest_fit(const Matrix& samples, const std::vector<int>& labels,
                  const ForestParams& params, uint64_t seed) {
    const size_t n = samples.size();
    if (n != labels.size()) throw DomainError("forest", "samples and labels differ in length");
    if (n < 2) throw DomainError("forest", "need at least 2 samples");
    const size_t d = samples[0].size();
    if (d == 0) throw DomainError("forest", "samples have no features");
    for (const auto& row : samples) {
        if (row.size() != d) throw DomainError("forest", "ragged sample matrix");
        for (double v : row) {
            if (!std::isfinite(v)) throw DomainError("forest", "non-finite sample value");
        }
    }
    int n_classes = 0;
    for (int y : labels) {
        if (y < 0) throw DomainError("forest", "negative class label");
        n_classes = std::max(n_classes, y + 1);
    }
    if (params.n_trees < 1) throw DomainError("forest", "n_trees must be positive");
    if (params.min_samples_split < 2) throw DomainError("forest", "min_samples_split must be >= 2");

    Forest forest;
    forest.n_features = static_cast<int>(d);
    forest.n_classes = n_classes;
    forest.params = params;
    forest.seed = seed;
    forest.trees.reserve(params.n_trees);

    for (int t = 0; t < params.n_trees; ++t) {
        Rng rng(derive_seed(seed, "forest_tree", static_cast<uint64_t>(t)));
        std::vector<int> idx(n);
        if (params.bootstrap) {
            for (size_t i = 0; i < n; ++i) idx[i] = static_cast<int>(rng.below(n));
        } else {
            std::iota(idx.begin(), idx.end(), 0);
        }
        TreeBuilder builder{samples, labels, params, n_classes, static_cast<int>(d),
                            static_cast<int>(n), rng, Tree{}};
        builder.build(idx, 0);
        forest.trees.push_back(std::move(builder.tree));
    }
    forest.importances = feature_importance(forest);
    return forest;
}

int predict(const Forest& forest, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != forest.n_features)
        throw DomainError("forest", "feature vector length mismatch");
    std::vector<int> votes(forest.n_classes, 0);
    for (const Tree& tree : forest.trees) votes[tree.predict(x)]++;
    return argmax_count(votes);
}

std::vector<double> feature_importance(const Forest& forest) {
    std::vector<double> mean(forest.n_features, 0.0);
    if (forest.trees.empty()) return mean;
    std::vector<double> per_tree(forest.n_features);
    for (const Tree& tree : forest.trees) {
        std::fill(per_tree.begin(), per_tree.end(), 0.0);
        const double root_n = tree.nodes.empty() ? 0.0 : tree.nodes[0].n_samples;
        double total = 0.0;
        for (const TreeNode& node : tree.nodes) {
            if (node.feature < 0) continue;
            double contribution = (node.n_samples / root_n) * node.impurity_decrease;
            per_tree[node.feature] += contribution;
            total += contribution;
        }
        if (total > 0.0) {
            for (int f = 0; f < forest.n_features; ++f) mean[f] += per_tree[f] / total;
        }
    }
    for (double& v : mean) v /= forest.trees.size();
    double sum = std::accumulate(mean.begin(), mean.end(), 0.0);
    if (sum > 0.0) {
        for (double& v : mean) v /= sum;
    }
    return mean;
}

}  // namespace atmscore
