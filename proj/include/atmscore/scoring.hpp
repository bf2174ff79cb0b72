#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "atmscore/dataset.hpp"
#include "atmscore/global_model.hpp"

namespace atmscore {

struct FusionConfig {
    double alpha = 0.35;   // weight of the global model; local keeps 0.65
    int top_features = 20;
    int k = 7;
    int trees = 100;
    int restarts = 10;
};

// Score of one network's presence at one zipcode: zipcode score x average
// name-tag score of the network's ATMs there x how many it operates there.
double zip_atm_score(double s_zip, double asa, int freq);

// Sum of zip_atm_score over every zipcode of the county.
double county_global_score(const std::string& network, const std::string& county,
                           const NormalizedTable& table, const std::vector<ZipScore>& zip_scores,
                           const FrequencyIndex& freq, const std::vector<AtmRecord>& atms);

// Indices of the k largest importances, descending; ties by ascending index;
// zero-importance features never make the list.
std::vector<int> top_k_features(const std::vector<double>& importance, int k);

// Per-county local pipeline: k-means labels -> random forest -> importance
// vector -> top features -> weighted mean of the county's normalized rows.
struct LocalModel {
    std::vector<int> top_features;   // indices into table.feature_names
    std::vector<double> weights;     // importances renormalized over top_features
    std::vector<int> cluster_labels; // per county row, [0, k_eff)
    int k_effective = 0;
    double base_score = 0.0;         // weighted feature mean, before the ASA factor
    bool informative = false;        // false: single row, or the forest never split
};

LocalModel fit_county_local_model(const NormalizedTable& table, const std::string& county,
                                  const FusionConfig& config, uint64_t seed);

double county_local_score(const std::string& network, const std::string& county,
                          const NormalizedTable& table, const std::vector<AtmRecord>& atms,
                          const FusionConfig& config, uint64_t seed);

// Convex blend of the two normalized county scores.
double fuse(double s_local_norm, double s_global_norm, double alpha);

struct CountyNetworkScore {
    std::string county;
    std::string network;
    double s_local = 0.0;  // raw
    double s_global = 0.0; // raw
    double s_local_norm = 0.0;
    double s_global_norm = 0.0;
    double s_fused = 0.0;
    bool local_fallback = false;  // local model uninformative; norm copied from global
};

// Networks of one county ordered by descending s_fused, ties by name.
std::vector<std::string> rank_networks(const std::vector<CountyNetworkScore>& county_rows);

struct FeatureFrequency {
    std::string feature;
    int county_count = 0;
    int rank = 0;  // 1-based position after sorting
};

// How many counties picked each feature into their top list; descending
// count, ties by ascending feature name.
std::vector<FeatureFrequency> feature_frequency_table(
    const std::vector<std::vector<std::string>>& county_feature_lists);

struct CountyFeatures {
    std::string county;
    std::vector<std::string> features;  // names, importance order
    bool fallback = false;
};

struct CountyRanking {
    std::string county;
    std::vector<std::string> networks;  // best first
};

struct ScoreReport {
    std::vector<CountyNetworkScore> rows;  // sorted by (county, network)
    std::vector<CountyRanking> rankings;   // sorted by county
    std::vector<CountyFeatures> county_features;
    std::vector<FeatureFrequency> feature_frequency;
    FusionConfig config;
    uint64_t seed = 0;
};

// The full pipeline: normalize -> global zip scores -> per-county local
// models -> min-max across counties -> fusion -> rankings and the
// feature-frequency table. Rows exist for every (county, network) pair with
// at least one ATM. Deterministic given (data, atms, weights, config, seed).
ScoreReport compute_score_report(const Dataset& data, const std::vector<AtmRecord>& atms,
                                 const GlobalWeights& weights, const FusionConfig& config,
                                 uint64_t seed);

}  // namespace atmscore
