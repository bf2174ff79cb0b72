#include "atmscore/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "atmscore/errors.hpp"
#include "atmscore/forest.hpp"
#include "atmscore/kmeans.hpp"
#include "atmscore/rng.hpp"

namespace atmscore {

namespace {

void check_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw DomainError("scoring", "alpha must lie in [0, 1], got " + std::to_string(alpha));
}

std::vector<size_t> county_row_indices(const NormalizedTable& table, const std::string& county) {
    std::vector<size_t> rows;
    for (size_t i = 0; i < table.counties.size(); ++i) {
        if (table.counties[i] == county) rows.push_back(i);
    }
    if (rows.empty()) throw DomainError("scoring", "unknown county '" + county + "'");
    return rows;
}

// Mean relative_score of the network's ATMs across the given zipcodes;
// false when the network has none there.
std::pair<double, bool> network_asa(const std::string& network,
                                    const std::vector<AtmRecord>& atms,
                                    const std::map<std::string, bool>& zip_in_scope) {
    double sum = 0.0;
    int count = 0;
    for (const AtmRecord& atm : atms) {
        if (atm.network != network) continue;
        if (!zip_in_scope.count(atm.zipcode)) continue;
        sum += atm.relative_score;
        count++;
    }
    if (count == 0) return {0.0, false};
    return {sum / count, true};
}

}  // namespace

double zip_atm_score(double s_zip, double asa, int freq) {
    if (freq < 0) throw DomainError("scoring", "negative ATM frequency");
    if (asa < 0.0) throw DomainError("scoring", "negative average network score");
    return s_zip * asa * freq;
}

double county_global_score(const std::string& network, const std::string& county,
                           const NormalizedTable& table, const std::vector<ZipScore>& zip_scores,
                           const FrequencyIndex& freq, const std::vector<AtmRecord>& atms) {
    if (zip_scores.size() != table.rows())
        throw DomainError("scoring", "zip score vector does not match the table");
    std::vector<size_t> rows = county_row_indices(table, county);

    // Per-zipcode relative_score sums for the network, so ASA = sum / count.
    std::map<std::string, std::pair<double, int>> by_zip;
    for (const AtmRecord& atm : atms) {
        if (atm.network != network) continue;
        auto& acc = by_zip[atm.zipcode];
        acc.first += atm.relative_score;
        acc.second++;
    }

    double total = 0.0;
    for (size_t i : rows) {
        const std::string& zip = table.zipcodes[i];
        auto it = by_zip.find(zip);
        if (it == by_zip.end()) continue;
        const auto& [score_sum, n] = it->second;
        int frequency = freq.count(zip, network);
        if (frequency != n)
            throw DomainError("scoring", "frequency index disagrees with ATM rows at " + zip);
        total += zip_atm_score(zip_scores[i].y_global, score_sum / n, frequency);
    }
    return total;
}

std::vector<int> top_k_features(const std::vector<double>& importance, int k) {
    if (k < 1) throw DomainError("scoring", "top-features count must be at least 1");
    std::vector<int> order(importance.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (importance[a] != importance[b]) return importance[a] > importance[b];
        return a < b;
    });
    std::vector<int> top;
    for (int f : order) {
        if (static_cast<int>(top.size()) == k) break;
        if (importance[f] <= 0.0) break;
        top.push_back(f);
    }
    return top;
}

LocalModel fit_county_local_model(const NormalizedTable& table, const std::string& county,
                                  const FusionConfig& config, uint64_t seed) {
    std::vector<size_t> rows = county_row_indices(table, county);
    LocalModel model;
    if (rows.size() < 2) return model;

    Matrix sub(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) sub[i] = table.normalized[rows[i]];

    int k_eff = std::max(1, std::min<int>(config.k, static_cast<int>(rows.size())));
    model.k_effective = k_eff;

    KmeansParams kp;
    kp.restarts = config.restarts;
    ClusterModel clusters = kmeans_fit(sub, k_eff, derive_seed(seed, "local_kmeans", 0), kp);
    model.cluster_labels = clusters.labels;

    ForestParams fp;
    fp.n_trees = config.trees;
    Forest forest = forest_fit(sub, clusters.labels, fp, derive_seed(seed, "local_forest", 0));

    model.top_features = top_k_features(forest.importances, config.top_features);
    if (model.top_features.empty()) return model;  // forest never split

    double weight_sum = 0.0;
    for (int f : model.top_features) weight_sum += forest.importances[f];
    model.weights.reserve(model.top_features.size());
    for (int f : model.top_features) model.weights.push_back(forest.importances[f] / weight_sum);

    for (size_t j = 0; j < model.top_features.size(); ++j) {
        int f = model.top_features[j];
        double mean = 0.0;
        for (size_t i : rows) mean += table.normalized[i][f];
        mean /= rows.size();
        model.base_score += model.weights[j] * mean;
    }
    model.informative = true;
    return model;
}

double county_local_score(const std::string& network, const std::string& county,
                          const NormalizedTable& table, const std::vector<AtmRecord>& atms,
                          const FusionConfig& config, uint64_t seed) {
    LocalModel model = fit_county_local_model(table, county, config, seed);
    std::map<std::string, bool> in_scope;
    for (size_t i : county_row_indices(table, county)) in_scope[table.zipcodes[i]] = true;
    auto [asa, present] = network_asa(network, atms, in_scope);
    if (!present) return 0.0;
    return model.base_score * asa;
}

double fuse(double s_local_norm, double s_global_norm, double alpha) {
    check_alpha(alpha);
    return (1.0 - alpha) * s_local_norm + alpha * s_global_norm;
}

std::vector<std::string> rank_networks(const std::vector<CountyNetworkScore>& county_rows) {
    std::vector<const CountyNetworkScore*> order;
    order.reserve(county_rows.size());
    for (const auto& row : county_rows) order.push_back(&row);
    std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
        if (a->s_fused != b->s_fused) return a->s_fused > b->s_fused;
        return a->network < b->network;
    });
    std::vector<std::string> names;
    names.reserve(order.size());
    for (const auto* row : order) names.push_back(row->network);
    return names;
}

std::vector<FeatureFrequency> feature_frequency_table(
    const std::vector<std::vector<std::string>>& county_feature_lists) {
    std::map<std::string, int> counts;
    for (const auto& list : county_feature_lists) {
        for (const std::string& feature : list) counts[feature]++;
    }
    std::vector<FeatureFrequency> table;
    table.reserve(counts.size());
    for (const auto& [feature, count] : counts) table.push_back({feature, count, 0});
    std::sort(table.begin(), table.end(), [](const auto& a, const auto& b) {
        if (a.county_count != b.county_count) return a.county_count > b.county_count;
        return a.feature < b.feature;
    });
    for (size_t i = 0; i < table.size(); ++i) table[i].rank = static_cast<int>(i) + 1;
    return table;
}

ScoreReport compute_score_report(const Dataset& data, const std::vector<AtmRecord>& atms,
                                 const GlobalWeights& weights, const FusionConfig& config,
                                 uint64_t seed) {
    check_alpha(config.alpha);
    if (config.top_features < 1)
        throw DomainError("scoring", "top-features count must be at least 1");
    if (config.k < 1) throw DomainError("scoring", "cluster count must be at least 1");

    ScoreReport report;
    report.config = config;
    report.seed = seed;

    NormalizedTable table = normalize_features(data);
    std::vector<ZipScore> y = global_scores(weights, table);
    FrequencyIndex freq = atm_frequency(atms);
    std::map<std::string, std::vector<size_t>> by_county = table.county_rows();

    // Networks present per county, via the zipcode -> county map.
    std::map<std::string, std::string> zip_county;
    for (size_t i = 0; i < table.rows(); ++i) zip_county[table.zipcodes[i]] = table.counties[i];
    std::map<std::string, std::map<std::string, std::pair<double, int>>> county_networks;
    for (const AtmRecord& atm : atms) {
        auto it = zip_county.find(atm.zipcode);
        if (it == zip_county.end())
            throw DomainError("scoring", "ATM references unknown zipcode " + atm.zipcode);
        auto& acc = county_networks[it->second][atm.network];
        acc.first += atm.relative_score;
        acc.second++;
    }

    size_t county_index = 0;
    for (const auto& [county, rows] : by_county) {
        uint64_t county_seed = derive_seed(seed, "county", county_index++);
        LocalModel local = fit_county_local_model(table, county, config, county_seed);

        CountyFeatures cf;
        cf.county = county;
        cf.fallback = !local.informative;
        for (int f : local.top_features) cf.features.push_back(table.feature_names[f]);
        report.county_features.push_back(std::move(cf));

        auto networks_it = county_networks.find(county);
        if (networks_it == county_networks.end()) continue;  // county hosts no ATMs
        for (const auto& [network, acc] : networks_it->second) {
            CountyNetworkScore row;
            row.county = county;
            row.network = network;
            row.local_fallback = !local.informative;
            double asa = acc.first / acc.second;
            row.s_local = local.informative ? local.base_score * asa : 0.0;
            row.s_global = county_global_score(network, county, table, y, freq, atms);
            report.rows.push_back(std::move(row));
        }
    }

    // Min-max across all (county, network) rows; constant ranges map to 0.
    auto min_max_apply = [](std::vector<CountyNetworkScore>& rows, auto raw_of, auto norm_of,
                            auto include) {
        double lo = 0.0, hi = 0.0;
        bool any = false;
        for (const auto& row : rows) {
            if (!include(row)) continue;
            double v = raw_of(row);
            if (!any) {
                lo = hi = v;
                any = true;
            } else {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
        for (auto& row : rows) {
            if (!include(row)) continue;
            norm_of(row) = hi > lo ? (raw_of(row) - lo) / (hi - lo) : 0.0;
        }
    };
    min_max_apply(
        report.rows, [](const CountyNetworkScore& r) { return r.s_global; },
        [](CountyNetworkScore& r) -> double& { return r.s_global_norm; },
        [](const CountyNetworkScore&) { return true; });
    min_max_apply(
        report.rows, [](const CountyNetworkScore& r) { return r.s_local; },
        [](CountyNetworkScore& r) -> double& { return r.s_local_norm; },
        [](const CountyNetworkScore& r) { return !r.local_fallback; });
    for (auto& row : report.rows) {
        if (row.local_fallback) row.s_local_norm = row.s_global_norm;
        row.s_fused = fuse(row.s_local_norm, row.s_global_norm, config.alpha);
    }

    std::sort(report.rows.begin(), report.rows.end(), [](const auto& a, const auto& b) {
        if (a.county != b.county) return a.county < b.county;
        return a.network < b.network;
    });

    for (auto it = report.rows.begin(); it != report.rows.end();) {
        auto end = it;
        while (end != report.rows.end() && end->county == it->county) ++end;
        std::vector<CountyNetworkScore> county_rows(it, end);
        report.rankings.push_back({it->county, rank_networks(county_rows)});
        it = end;
    }

    std::vector<std::vector<std::string>> lists;
    for (const auto& cf : report.county_features) {
        if (!cf.features.empty()) lists.push_back(cf.features);
    }
    report.feature_frequency = feature_frequency_table(lists);
    return report;
}

}  // namespace atmscore
