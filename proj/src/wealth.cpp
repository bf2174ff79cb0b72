#include "atmscore/wealth.hpp"

#include <algorithm>
#include <cmath>

#include "atmscore/errors.hpp"

namespace atmscore {

namespace {

constexpr const char* kModule = "wealth";

bool in_unit_interval(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

}  // namespace

double wealth_estimate(const WealthInputs& w) {
    if (!in_unit_interval(w.pd) || !in_unit_interval(w.mhi) || !in_unit_interval(w.pne)) {
        throw DomainError(kModule, "wealth_estimate inputs must lie in [0,1]");
    }
    return w.pd * w.mhi * (1.0 - w.pne);
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) {
        throw DomainError(kModule, "pearson: length mismatch (" + std::to_string(x.size()) +
                                       " vs " + std::to_string(y.size()) + ")");
    }
    const size_t n = x.size();
    if (n < 2) {
        throw DomainError(kModule, "pearson: need at least 2 samples");
    }
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw DomainError(kModule, "pearson: undefined for constant input");
    }
    double r = sxy / std::sqrt(sxx * syy);
    return std::clamp(r, -1.0, 1.0);
}

CorrelationReport correlate_features(const NormalizedTable& table) {
    if (table.rows() < 2) {
        throw ValidationError(kModule, "correlate_features: need at least 2 rows");
    }
    const int pd_col = table.column("population_density");
    const int mhi_col = table.column("median_household_income");
    const int pne_col = table.column("pct_not_earning");
    for (auto [name, col] : {std::pair<const char*, int>{"population_density", pd_col},
                             {"median_household_income", mhi_col},
                             {"pct_not_earning", pne_col}}) {
        if (col < 0) {
            throw SchemaError(kModule, std::string("correlate_features: missing column '") +
                                           name + "'");
        }
    }

    CorrelationReport report;
    const size_t n = table.rows();
    report.wealth.resize(n);
    for (size_t i = 0; i < n; ++i) {
        WealthInputs w{table.normalized[i][static_cast<size_t>(pd_col)],
                       table.normalized[i][static_cast<size_t>(mhi_col)],
                       table.raw[i][static_cast<size_t>(pne_col)] / 100.0};
        report.wealth[i] = wealth_estimate(w);
    }

    for (size_t f = 0; f < table.cols(); ++f) {
        const int fi = static_cast<int>(f);
        if (fi == pd_col || fi == mhi_col || fi == pne_col) continue;
        FeatureCorrelation fc;
        fc.feature = table.feature_names[f];
        if (table.feature_max[f] == table.feature_min[f]) {
            fc.constant = true;
            fc.r = 0.0;
        } else {
            std::vector<double> column(n);
            for (size_t i = 0; i < n; ++i) column[i] = table.raw[i][f];
            fc.r = pearson(column, report.wealth);
        }
        report.entries.push_back(std::move(fc));
    }
    return report;
}

std::vector<std::string> select_features(const CorrelationReport& report, double threshold) {
    if (threshold < 0.0 || !std::isfinite(threshold)) {
        throw DomainError(kModule, "select_features: threshold must be a nonnegative real");
    }
    std::vector<const FeatureCorrelation*> kept;
    for (const auto& e : report.entries) {
        if (!e.constant && std::abs(e.r) >= threshold) kept.push_back(&e);
    }
    std::sort(kept.begin(), kept.end(), [](const FeatureCorrelation* a,
                                           const FeatureCorrelation* b) {
        const double ra = std::abs(a->r), rb = std::abs(b->r);
        if (ra != rb) return ra > rb;
        return a->feature < b->feature;
    });
    std::vector<std::string> out;
    out.reserve(kept.size());
    for (const auto* e : kept) out.push_back(e->feature);
    return out;
}

}  // namespace atmscore
