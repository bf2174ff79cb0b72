#include "atmscore/global_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "atmscore/csv.hpp"
#include "atmscore/errors.hpp"

namespace atmscore {

namespace {

constexpr const char* kModule = "global_model";

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

double GlobalWeights::weight(const std::string& feature) const {
    for (const auto& [name, w] : entries) {
        if (name == feature) return w;
    }
    return 0.0;
}

double GlobalWeights::sum() const {
    double s = 0.0;
    for (const auto& [name, w] : entries) s += w;
    return s;
}

std::vector<double> softmax(const std::vector<double>& raw) {
    if (raw.empty()) {
        throw DomainError(kModule, "softmax: empty input");
    }
    double hi = raw[0];
    for (double v : raw) {
        if (!std::isfinite(v)) {
            throw DomainError(kModule, "softmax: non-finite input");
        }
        hi = std::max(hi, v);
    }
    std::vector<double> out(raw.size());
    double total = 0.0;
    for (size_t i = 0; i < raw.size(); ++i) {
        out[i] = std::exp(raw[i] - hi);
        total += out[i];
    }
    for (double& v : out) v /= total;
    return out;
}

GlobalWeights default_global_weights() {
    GlobalWeights w;
    w.entries = {
        {"transportation_pct", 0.13},
        {"employment_pct", 0.083},
        {"private_primary_school_pct", 0.083},
        {"median_home_value", 0.093},
        {"rented_1br_pct", 0.102},
        {"educated_pct", 0.074},
        {"population_density", 0.167},
        {"median_household_income", 0.045},
        {"earning_pct", 0.083},
        {"single_pct", 0.065},
        {"single_with_roommates_pct", 0.074},
    };
    w.normalized = true;
    return w;
}

GlobalWeights normalize_weights(const GlobalWeights& raw) {
    std::vector<double> values;
    values.reserve(raw.entries.size());
    for (const auto& [name, v] : raw.entries) values.push_back(v);
    std::vector<double> normalized = softmax(values);
    GlobalWeights out;
    out.entries.reserve(raw.entries.size());
    for (size_t i = 0; i < raw.entries.size(); ++i) {
        out.entries.emplace_back(raw.entries[i].first, normalized[i]);
    }
    out.normalized = true;
    return out;
}

GlobalWeights load_weights(const std::filesystem::path& path, bool raw) {
    std::ifstream in(path);
    if (!in) {
        throw IoError(kModule, "cannot open weights file " + path.string());
    }
    GlobalWeights w;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        size_t eq = s.find('=');
        if (eq == std::string::npos) {
            throw ValidationError(kModule, path.string() + " line " + std::to_string(lineno) +
                                               ": expected 'feature = weight'");
        }
        std::string feature = trim(s.substr(0, eq));
        bool ok = false;
        double value = parse_double(trim(s.substr(eq + 1)), ok);
        if (feature.empty() || !ok || !std::isfinite(value)) {
            throw ValidationError(kModule, path.string() + " line " + std::to_string(lineno) +
                                               ": malformed weight entry");
        }
        for (const auto& [name, v] : w.entries) {
            if (name == feature) {
                throw ValidationError(kModule, path.string() + " line " +
                                                   std::to_string(lineno) +
                                                   ": duplicate feature '" + feature + "'");
            }
        }
        w.entries.emplace_back(std::move(feature), value);
    }
    if (w.entries.empty()) {
        throw ValidationError(kModule, path.string() + ": no weight entries");
    }
    if (raw) {
        return normalize_weights(w);
    }
    // Printed weight vectors round to ~3 decimals, so allow 1e-3 slack.
    if (std::abs(w.sum() - 1.0) > 1e-3) {
        throw ValidationError(kModule, path.string() + ": weights sum to " +
                                           format_general(w.sum()) +
                                           "; pass --raw-weights to softmax-normalize them");
    }
    w.normalized = true;
    return w;
}

double global_zip_score(const GlobalWeights& weights, const NormalizedTable& table, size_t row) {
    double score = 0.0;
    for (const auto& [feature, w] : weights.entries) {
        int col = table.column(feature);
        if (col < 0) {
            throw SchemaError(kModule, "global_zip_score: missing feature column '" + feature +
                                           "'");
        }
        score += w * table.normalized[row][static_cast<size_t>(col)];
    }
    return score;
}

double global_zip_score(const GlobalWeights& weights,
                        const std::vector<std::pair<std::string, double>>& row) {
    double score = 0.0;
    for (const auto& [feature, w] : weights.entries) {
        bool found = false;
        for (const auto& [name, x] : row) {
            if (name == feature) {
                score += w * x;
                found = true;
                break;
            }
        }
        if (!found) {
            throw SchemaError(kModule, "global_zip_score: missing feature column '" + feature +
                                           "'");
        }
    }
    return score;
}

std::vector<ZipScore> global_scores(const GlobalWeights& weights, const NormalizedTable& table) {
    std::vector<ZipScore> out;
    out.reserve(table.rows());
    for (size_t i = 0; i < table.rows(); ++i) {
        out.push_back({table.zipcodes[i], global_zip_score(weights, table, i)});
    }
    return out;
}

}  // namespace atmscore
