#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "atmscore/dataset.hpp"

namespace atmscore {

struct SynthConfig {
    int zipcodes = 5000;
    int counties = 40;
    int atms = 11229;
    int extra_features = 61;  // f_* noise columns beyond the 12 canonical ones
    bool planted = true;      // plant per-county cluster tiers and wealth-driven ATM density
};

struct SynthData {
    Dataset dataset;
    std::vector<AtmRecord> atms;
    std::vector<double> wealth_estimate;  // per zipcode, from the generated table
    std::vector<int> atm_counts;          // per zipcode, same order as dataset.records
};

// Deterministic given (config, seed). With planted structure on, each county's
// feature matrix holds well-separated wealth tiers and per-zipcode ATM counts
// are monotone nondecreasing in the wealth estimate.
SynthData generate_synthetic_data(const SynthConfig& config, uint64_t seed);

void generate_synthetic(const SynthConfig& config, uint64_t seed,
                        const std::filesystem::path& zipcode_path,
                        const std::filesystem::path& atm_path);

}  // namespace atmscore
