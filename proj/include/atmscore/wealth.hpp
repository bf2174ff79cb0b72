#pragma once

#include <string>
#include <vector>

#include "atmscore/dataset.hpp"

namespace atmscore {

// Inputs to the wealth estimate: min-max scaled population density and median
// household income, plus the not-earning share as a plain fraction.
struct WealthInputs {
    double pd = 0.0;
    double mhi = 0.0;
    double pne = 0.0;
};

// WE = pd * mhi * (1 - pne), the synthetic stand-in for per-zipcode
// transaction volume. All inputs must lie in [0,1].
double wealth_estimate(const WealthInputs& w);

// Sample Pearson correlation. Requires equal lengths >= 2 and nonconstant
// inputs.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

struct FeatureCorrelation {
    std::string feature;
    double r = 0.0;
    bool constant = false;  // constant columns report r = 0 and are flagged
};

struct CorrelationReport {
    std::vector<FeatureCorrelation> entries;   // every feature except the WE inputs
    std::vector<double> wealth;                // WE per table row
    double threshold = 0.0;                    // filled by the caller on selection
    std::vector<std::string> selected;
};

CorrelationReport correlate_features(const NormalizedTable& table);

// Features with |r| >= threshold, constants excluded, ordered by descending
// |r| then ascending name.
std::vector<std::string> select_features(const CorrelationReport& report, double threshold);

constexpr double kDefaultCorrelationThreshold = 0.3;

}  // namespace atmscore
