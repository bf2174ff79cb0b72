#include "atmscore/report.hpp"

#include <fstream>
#include <map>

#include "atmscore/csv.hpp"
#include "atmscore/errors.hpp"

namespace atmscore {

namespace {

using nlohmann::ordered_json;

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("report", "cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw IoError("report", "write failed for " + path.string());
}

}  // namespace

uint64_t fnv1a64_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("report", "cannot open " + path.string() + " for digest");
    uint64_t hash = 0xcbf29ce484222325ULL;
    char buffer[1 << 14];
    while (in.read(buffer, sizeof(buffer)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            hash ^= static_cast<unsigned char>(buffer[i]);
            hash *= 0x100000001b3ULL;
        }
    }
    return hash;
}

std::string digest_string(uint64_t hash) {
    char out[32];
    std::snprintf(out, sizeof(out), "fnv1a64:%016llx", static_cast<unsigned long long>(hash));
    return out;
}

void write_scores_csv(const std::filesystem::path& path, const ScoreReport& report) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(report.rows.size());
    for (const auto& row : report.rows) {
        rows.push_back({row.county, row.network, format_general(row.s_local),
                        format_general(row.s_global), format_general(row.s_fused)});
    }
    write_csv(path, {"county", "network", "s_local", "s_global", "s_fused"}, rows);
}

void write_rankings_csv(const std::filesystem::path& path, const ScoreReport& report) {
    std::map<std::pair<std::string, std::string>, double> fused;
    for (const auto& row : report.rows) fused[{row.county, row.network}] = row.s_fused;
    std::vector<std::vector<std::string>> rows;
    for (const auto& ranking : report.rankings) {
        for (size_t i = 0; i < ranking.networks.size(); ++i) {
            rows.push_back({ranking.county, std::to_string(i + 1), ranking.networks[i],
                            format_general(fused.at({ranking.county, ranking.networks[i]}))});
        }
    }
    write_csv(path, {"county", "rank", "network", "s_fused"}, rows);
}

void write_feature_frequency_csv(const std::filesystem::path& path, const ScoreReport& report) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(report.feature_frequency.size());
    for (const auto& entry : report.feature_frequency) {
        rows.push_back(
            {entry.feature, std::to_string(entry.county_count), std::to_string(entry.rank)});
    }
    write_csv(path, {"feature", "county_count", "rank"}, rows);
}

void write_report_json(const std::filesystem::path& path, const ScoreReport& report) {
    ordered_json doc;
    doc["config"] = {{"alpha", report.config.alpha},
                     {"local_weight", 1.0 - report.config.alpha},
                     {"k", report.config.k},
                     {"top_features", report.config.top_features},
                     {"trees", report.config.trees},
                     {"restarts", report.config.restarts},
                     {"seed", report.seed}};

    ordered_json scores = ordered_json::array();
    for (const auto& row : report.rows) {
        scores.push_back({{"county", row.county},
                          {"network", row.network},
                          {"s_local", row.s_local},
                          {"s_global", row.s_global},
                          {"s_local_norm", row.s_local_norm},
                          {"s_global_norm", row.s_global_norm},
                          {"s_fused", row.s_fused},
                          {"local_fallback", row.local_fallback}});
    }
    doc["county_scores"] = std::move(scores);

    ordered_json rankings = ordered_json::array();
    for (const auto& ranking : report.rankings)
        rankings.push_back({{"county", ranking.county}, {"networks", ranking.networks}});
    doc["rankings"] = std::move(rankings);

    ordered_json freq = ordered_json::array();
    for (const auto& entry : report.feature_frequency) {
        freq.push_back({{"feature", entry.feature},
                        {"county_count", entry.county_count},
                        {"rank", entry.rank}});
    }
    doc["feature_frequency"] = std::move(freq);

    write_text(path, doc.dump(2) + "\n");
}

void write_correlations_csv(const std::filesystem::path& path, const CorrelationReport& report) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(report.entries.size());
    for (const auto& entry : report.entries)
        rows.push_back({entry.feature, format_general(entry.r)});
    write_csv(path, {"feature", "pearson_r"}, rows);
}

void write_selected_features_csv(const std::filesystem::path& path,
                                 const CorrelationReport& report) {
    std::map<std::string, double> by_name;
    for (const auto& entry : report.entries) by_name[entry.feature] = entry.r;
    std::vector<std::vector<std::string>> rows;
    rows.reserve(report.selected.size());
    for (const auto& feature : report.selected)
        rows.push_back({feature, format_general(by_name.at(feature))});
    write_csv(path, {"feature", "pearson_r"}, rows);
}

void write_scatter_files(const std::filesystem::path& dir, const NormalizedTable& table,
                         const CorrelationReport& report,
                         const std::vector<std::string>& features) {
    if (report.wealth.size() != table.rows())
        throw DomainError("report", "wealth vector does not match the table");
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("report", "cannot create " + dir.string());
    for (const std::string& feature : features) {
        int col = table.column(feature);
        if (col < 0) throw SchemaError("report", "unknown feature '" + feature + "'");
        std::vector<std::vector<std::string>> rows;
        rows.reserve(table.rows());
        for (size_t i = 0; i < table.rows(); ++i) {
            rows.push_back(
                {format_general(report.wealth[i]), format_fixed(table.raw[i][col], 6)});
        }
        write_csv(dir / (feature + ".csv"), {"we", "feature_value"}, rows);
    }
}

void write_plan_csv(const std::filesystem::path& path, const Plan& plan,
                    const std::vector<Candidate>& candidates) {
    std::map<std::string, const Candidate*> by_id;
    for (const Candidate& c : candidates) by_id[c.id] = &c;
    std::vector<std::vector<std::string>> rows;
    for (const std::string& id : plan.selected) {
        const Candidate* c = by_id.at(id);
        rows.push_back({id, format_general(c->score), format_general(c->cost)});
    }
    rows.push_back(
        {"TOTAL", format_general(plan.total_score), format_general(plan.total_cost)});
    write_csv(path, {"id", "score", "cost"}, rows);
}

void write_manifest(const std::filesystem::path& path, const std::string& subcommand,
                    uint64_t seed, const nlohmann::ordered_json& flags,
                    const std::vector<std::filesystem::path>& inputs,
                    const std::vector<std::filesystem::path>& outputs) {
    ordered_json doc;
    doc["subcommand"] = subcommand;
    doc["seed"] = seed;
    doc["flags"] = flags;
    ordered_json in = ordered_json::object();
    for (const auto& p : inputs) in[p.filename().string()] = digest_string(fnv1a64_file(p));
    doc["inputs"] = std::move(in);
    ordered_json out = ordered_json::object();
    for (const auto& p : outputs) out[p.filename().string()] = digest_string(fnv1a64_file(p));
    doc["outputs"] = std::move(out);
    write_text(path, doc.dump(2) + "\n");
}

}  // namespace atmscore
