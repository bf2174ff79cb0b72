#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "atmscore/dataset.hpp"
#include "atmscore/optimizer.hpp"
#include "atmscore/scoring.hpp"
#include "atmscore/wealth.hpp"

namespace atmscore {

// FNV-1a over the file's bytes; cheap, stable content fingerprint for the
// run manifest.
uint64_t fnv1a64_file(const std::filesystem::path& path);
std::string digest_string(uint64_t hash);  // "fnv1a64:<16 hex digits>"

void write_scores_csv(const std::filesystem::path& path, const ScoreReport& report);
void write_rankings_csv(const std::filesystem::path& path, const ScoreReport& report);
void write_feature_frequency_csv(const std::filesystem::path& path, const ScoreReport& report);
// Structured report: county scores, rankings, feature-frequency table.
void write_report_json(const std::filesystem::path& path, const ScoreReport& report);

void write_correlations_csv(const std::filesystem::path& path, const CorrelationReport& report);
void write_selected_features_csv(const std::filesystem::path& path,
                                 const CorrelationReport& report);
// One (we, feature_value) file per selected feature under dir, named
// scatter/<feature>.csv, with raw feature values for plotting.
void write_scatter_files(const std::filesystem::path& dir, const NormalizedTable& table,
                         const CorrelationReport& report,
                         const std::vector<std::string>& features);

void write_plan_csv(const std::filesystem::path& path, const Plan& plan,
                    const std::vector<Candidate>& candidates);

// Seed, flags, and content digests of every input and output file, so a run
// is replayable and verifiable from the manifest alone. No timestamps: two
// identical runs produce identical manifests.
void write_manifest(const std::filesystem::path& path, const std::string& subcommand,
                    uint64_t seed, const nlohmann::ordered_json& flags,
                    const std::vector<std::filesystem::path>& inputs,
                    const std::vector<std::filesystem::path>& outputs);

}  // namespace atmscore
