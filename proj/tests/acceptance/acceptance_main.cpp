// End-to-end acceptance checks. Run with --cli <path-to-atmscore>; prints one
// PASS/FAIL line per criterion and exits nonzero if any fail.
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "atmscore/dataset.hpp"
#include "atmscore/forest.hpp"
#include "atmscore/global_model.hpp"
#include "atmscore/kmeans.hpp"
#include "atmscore/optimizer.hpp"
#include "atmscore/rng.hpp"
#include "atmscore/scoring.hpp"
#include "atmscore/synth.hpp"
#include "atmscore/wealth.hpp"

using namespace atmscore;
namespace fs = std::filesystem;

namespace {

struct Checker {
    bool ok = true;
    std::string detail;

    void expect(bool cond, const std::string& msg) {
        if (!cond && ok) detail = msg;
        ok = ok && cond;
    }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string quoted(const fs::path& p) { return "\"" + p.string() + "\""; }

int shell(const std::string& cmd) {
    int rc = std::system(cmd.c_str());
    if (rc == -1) return -1;
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// --- criterion 1: shipped constants -----------------------------------------

Checker check_constants(const fs::path& cli, const fs::path& tmp) {
    Checker c;
    c.expect(kNameTagCount == 7, "expected 7 venue classes");
    const std::pair<NameTag, int> venue_scores[] = {
        {NameTag::shopping_malls, 10},    {NameTag::banks_exchange_centre, 9},
        {NameTag::recreation_centre, 8},  {NameTag::gas_stations_car_wash, 7},
        {NameTag::office_area, 6},        {NameTag::individual_store, 5},
        {NameTag::null_data, 4},
    };
    for (const auto& [tag, score] : venue_scores) {
        c.expect(relative_score(tag) == score,
                 std::string("wrong venue score for ") + name_tag_label(tag));
    }

    GlobalWeights weights = default_global_weights();
    c.expect(weights.entries.size() == 11, "default weight vector should have 11 features");
    c.expect(std::fabs(weights.sum() - 0.999) <= 1e-9, "default weights should sum to 0.999");
    const std::pair<const char*, double> expected_weights[] = {
        {"population_density", 0.167},     {"transportation_pct", 0.13},
        {"rented_1br_pct", 0.102},         {"median_home_value", 0.093},
        {"employment_pct", 0.083},         {"private_primary_school_pct", 0.083},
        {"earning_pct", 0.083},            {"educated_pct", 0.074},
        {"single_with_roommates_pct", 0.074}, {"single_pct", 0.065},
        {"median_household_income", 0.045},
    };
    for (const auto& [name, value] : expected_weights) {
        c.expect(weights.weight(name) == value, std::string("unexpected weight for ") + name);
    }

    fs::path help_file = tmp / "score_help.txt";
    c.expect(shell(quoted(cli) + " score --help > " + quoted(help_file) + " 2>&1") == 0,
             "score --help should exit 0");
    std::string help = slurp(help_file);
    c.expect(help.find("0.35") != std::string::npos, "help text should state the 0.35 default");
    c.expect(help.find("0.65") != std::string::npos,
             "help text should state the 0.65 local weight");

    fs::path data = tmp / "c1_data";
    fs::path out = tmp / "c1_out";
    c.expect(shell(quoted(cli) +
                   " gen-data --zipcodes 80 --counties 4 --atms 200 --extra-features 2 --out " +
                   quoted(data) + " > " + quoted(tmp / "c1_gen.log") + " 2>&1") == 0,
             "small gen-data run failed");
    c.expect(shell(quoted(cli) + " score --zipcodes " + quoted(data / "zipcodes.csv") +
                   " --atms " + quoted(data / "atms.csv") + " --trees 15 --restarts 3 --out " +
                   quoted(out) + " > " + quoted(tmp / "c1_score.log") + " 2>&1") == 0,
             "small score run failed");
    auto manifest = nlohmann::json::parse(slurp(out / "manifest.json"));
    c.expect(std::fabs(manifest["flags"]["alpha"].get<double>() - 0.35) <= 1e-12,
             "manifest alpha should be 0.35");
    c.expect(std::fabs(manifest["flags"]["local_weight"].get<double>() - 0.65) <= 1e-12,
             "manifest local_weight should be 0.65");
    return c;
}

// --- criterion 2: softmax properties ----------------------------------------

Checker check_softmax() {
    Checker c;
    Rng rng(derive_seed(4242, "acc_softmax", 0));
    for (int trial = 0; trial < 1000 && c.ok; ++trial) {
        size_t n = 1 + rng.below(16);
        std::vector<double> x(n);
        for (double& v : x) v = rng.uniform(-40.0, 40.0);
        std::vector<double> s = softmax(x);
        c.expect(std::fabs(std::accumulate(s.begin(), s.end(), 0.0) - 1.0) <= 1e-12,
                 "softmax output should sum to 1");

        double shift = static_cast<double>(rng.uniform_int(-100, 100));
        std::vector<double> shifted = x;
        for (double& v : shifted) v += shift;
        std::vector<double> s2 = softmax(shifted);
        for (size_t i = 0; i < n; ++i)
            c.expect(std::fabs(s[i] - s2[i]) <= 1e-12, "softmax should be shift invariant");

        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < n; ++j) {
                if (x[i] < x[j]) c.expect(s[i] < s[j], "softmax should preserve input order");
                if (x[i] == x[j]) c.expect(s[i] == s[j], "equal inputs should map equally");
            }
        }
    }
    return c;
}

// --- criterion 3: correlation oracle ----------------------------------------

double pearson_reference(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

Checker check_pearson() {
    Checker c;
    Rng rng(derive_seed(4242, "acc_pearson", 0));
    for (int trial = 0; trial < 100 && c.ok; ++trial) {
        size_t n = 2 + rng.below(63);
        std::vector<double> x(n), y(n);
        for (size_t i = 0; i < n; ++i) {
            x[i] = rng.normal(0.0, 3.0);
            y[i] = 0.4 * x[i] + rng.normal();
        }
        double got = pearson(x, y);
        c.expect(std::fabs(got - pearson_reference(x, y)) <= 1e-10,
                 "pearson deviates from the reference definition");

        double a = 0.5 + rng.uniform01() * 3.0;
        double b = rng.uniform(-5.0, 5.0);
        std::vector<double> xt(n);
        for (size_t i = 0; i < n; ++i) xt[i] = a * x[i] + b;
        c.expect(std::fabs(pearson(xt, y) - got) <= 1e-12,
                 "pearson should be invariant under positive affine maps");
    }
    return c;
}

// --- criterion 4: clustering vs exhaustive optimum ---------------------------

std::vector<int> canonical(const std::vector<int>& labels) {
    std::map<int, int> remap;
    std::vector<int> out;
    out.reserve(labels.size());
    for (int label : labels) {
        auto [it, inserted] = remap.try_emplace(label, static_cast<int>(remap.size()));
        out.push_back(it->second);
    }
    return out;
}

double partition_sse(const Matrix& points, const std::vector<int>& labels, int k) {
    const size_t d = points[0].size();
    Matrix centroids(k, std::vector<double>(d, 0.0));
    std::vector<int> counts(k, 0);
    for (size_t i = 0; i < points.size(); ++i) {
        counts[labels[i]]++;
        for (size_t j = 0; j < d; ++j) centroids[labels[i]][j] += points[i][j];
    }
    for (int cl = 0; cl < k; ++cl) {
        for (size_t j = 0; j < d; ++j) centroids[cl][j] /= counts[cl];
    }
    double total = 0.0;
    for (size_t i = 0; i < points.size(); ++i) {
        for (size_t j = 0; j < d; ++j) {
            double diff = points[i][j] - centroids[labels[i]][j];
            total += diff * diff;
        }
    }
    return total;
}

// minimum-SSE assignment over all k^n labelings that use every cluster
std::pair<double, std::vector<int>> optimal_partition(const Matrix& points, int k) {
    const size_t n = points.size();
    std::vector<int> assignment(n, 0);
    double best_sse = std::numeric_limits<double>::infinity();
    std::vector<int> best_labels;
    while (true) {
        int used = 0;
        for (int label : assignment) used |= 1 << label;
        if (used == (1 << k) - 1) {
            double s = partition_sse(points, assignment, k);
            if (s < best_sse) {
                best_sse = s;
                best_labels = assignment;
            }
        }
        size_t pos = 0;
        while (pos < n && assignment[pos] == k - 1) assignment[pos++] = 0;
        if (pos == n) break;
        ++assignment[pos];
    }
    return {best_sse, canonical(best_labels)};
}

Checker check_kmeans() {
    Checker c;
    auto start = std::chrono::steady_clock::now();
    // blob centers sit 78+ units apart against unit jitter
    const double cx[3] = {0.0, 70.0, -60.0};
    const double cy[3] = {0.0, 60.0, 50.0};
    for (int inst = 0; inst < 20 && c.ok; ++inst) {
        int k = inst < 10 ? 2 : 3;
        int n = 6 + inst % 7;
        Rng rng(derive_seed(4242, "acc_kmeans", inst));
        Matrix points;
        points.reserve(n);
        for (int i = 0; i < n; ++i) {
            int blob = i % k;
            points.push_back({cx[blob] + rng.normal(), cy[blob] + rng.normal()});
        }
        ClusterModel model = kmeans_fit(points, k, derive_seed(4242, "acc_kmeans_fit", inst));
        auto [best_sse, best_labels] = optimal_partition(points, k);
        c.expect(canonical(model.labels) == best_labels,
                 "clustering missed the exhaustive-optimum partition");
        c.expect(std::fabs(model.sse - best_sse) <= 1e-9,
                 "clustering SSE differs from the exhaustive optimum");
        for (const auto& trace : model.restart_traces) {
            for (size_t i = 0; i + 1 < trace.size(); ++i)
                c.expect(trace[i + 1] <= trace[i] + 1e-9, "an SSE trace increased");
        }
    }
    c.expect(seconds_since(start) < 30.0, "clustering suite exceeded 30s");
    return c;
}

// --- criterion 5: forest recovers a planted feature --------------------------

Checker check_forest_recovery() {
    Checker c;
    auto start = std::chrono::steady_clock::now();
    const int n = 200, d = 20;
    int hits = 0;
    for (int trial = 0; trial < 10; ++trial) {
        Rng rng(derive_seed(4242, "acc_forest", trial));
        Matrix samples(n, std::vector<double>(d));
        std::vector<int> labels(n);
        for (int i = 0; i < n; ++i) {
            samples[i][0] = rng.uniform01();
            labels[i] = samples[i][0] > 0.5 ? 1 : 0;
            for (int j = 1; j < d - 1; ++j) samples[i][j] = rng.uniform01();
            samples[i][d - 1] = 0.25;  // constant column
        }
        Forest forest =
            forest_fit(samples, labels, {}, derive_seed(4242, "acc_forest_fit", trial));
        std::vector<double> importance = feature_importance(forest);
        c.expect(static_cast<int>(importance.size()) == d, "importance vector length off");
        double sum = std::accumulate(importance.begin(), importance.end(), 0.0);
        c.expect(std::fabs(sum - 1.0) <= 1e-9, "importances should sum to 1");
        c.expect(importance[d - 1] == 0.0, "a constant feature should carry zero importance");
        if (std::max_element(importance.begin(), importance.end()) == importance.begin())
            ++hits;
    }
    c.expect(hits >= 9, "planted feature ranked first in only " + std::to_string(hits) +
                            " of 10 seeds");
    c.expect(seconds_since(start) < 60.0, "forest suite exceeded 60s");
    return c;
}

// --- criterion 6: split finder vs exhaustive scan ----------------------------

struct ReferenceSplit {
    int feature = -1;
    double threshold = 0.0;
    double decrease = 0.0;
};

std::optional<ReferenceSplit> split_reference(const Matrix& samples,
                                              const std::vector<int>& labels) {
    const int n = static_cast<int>(samples.size());
    const int d = static_cast<int>(samples[0].size());
    int n_classes = 1 + *std::max_element(labels.begin(), labels.end());
    auto gini_of = [](const std::vector<int>& counts, int total) {
        double sum_sq = 0.0;
        for (int count : counts) {
            double p = static_cast<double>(count) / total;
            sum_sq += p * p;
        }
        return 1.0 - sum_sq;
    };
    std::vector<int> parent(n_classes, 0);
    for (int y : labels) parent[y]++;
    const double parent_gini = gini_of(parent, n);

    ReferenceSplit best;
    bool found = false;
    for (int f = 0; f < d; ++f) {
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return samples[a][f] < samples[b][f]; });
        std::vector<int> left(n_classes, 0);
        std::vector<int> right = parent;
        for (int i = 0; i + 1 < n; ++i) {
            left[labels[order[i]]]++;
            right[labels[order[i]]]--;
            double lo = samples[order[i]][f];
            double hi = samples[order[i + 1]][f];
            if (lo == hi) continue;
            int n_left = i + 1;
            int n_right = n - n_left;
            double decrease = parent_gini -
                              (static_cast<double>(n_left) / n) * gini_of(left, n_left) -
                              (static_cast<double>(n_right) / n) * gini_of(right, n_right);
            if (decrease > best.decrease) {
                best.feature = f;
                best.threshold = lo + (hi - lo) / 2.0;
                best.decrease = decrease;
                found = true;
            }
        }
    }
    if (!found || best.decrease <= kMinImpurityDecrease) return std::nullopt;
    return best;
}

Checker check_best_split() {
    Checker c;
    Rng rng(derive_seed(4242, "acc_split", 0));
    for (int trial = 0; trial < 50 && c.ok; ++trial) {
        int n = 2 + static_cast<int>(rng.below(29));
        int d = 1 + static_cast<int>(rng.below(5));
        bool grid = trial % 2 == 0;  // integer grids force exact ties
        Matrix samples(n, std::vector<double>(d));
        std::vector<int> labels(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < d; ++j)
                samples[i][j] = grid ? static_cast<double>(rng.below(5)) : rng.uniform01();
            labels[i] = static_cast<int>(rng.below(3));
        }
        std::vector<int> features(d);
        std::iota(features.begin(), features.end(), 0);
        auto got = best_split(samples, labels, features);
        auto want = split_reference(samples, labels);
        if (!want.has_value()) {
            c.expect(!got.has_value(), "found a split where the reference scan finds none");
            continue;
        }
        c.expect(got.has_value(), "missed a split the reference scan finds");
        if (!got.has_value()) continue;
        c.expect(got->feature == want->feature, "split feature mismatch");
        c.expect(got->threshold == want->threshold, "split threshold mismatch");
        c.expect(std::fabs(got->impurity_decrease - want->decrease) <= 1e-12,
                 "impurity decrease mismatch");
    }
    return c;
}

// --- criterion 7: scoring algebra --------------------------------------------

Checker check_scoring_algebra() {
    Checker c;
    c.expect(zip_atm_score(0.5, 8.0, 3) == 12.0, "zip score product off");
    c.expect(zip_atm_score(0.0, 9.0, 4) == 0.0, "zero zipcode score should zero the product");
    c.expect(zip_atm_score(1.0, 4.0, 1) == 4.0, "unit case off");
    c.expect(zip_atm_score(0.25, 10.0, 2) == 5.0, "fractional case off");
    c.expect(fuse(0.37, 0.81, 0.0) == 0.37, "alpha 0 should return the local score");
    c.expect(fuse(0.37, 0.81, 1.0) == 0.81, "alpha 1 should return the global score");

    SynthConfig config;
    config.zipcodes = 150;
    config.counties = 5;
    config.atms = 600;
    config.extra_features = 4;
    SynthData synth = generate_synthetic_data(config, 20260825);
    NormalizedTable table = normalize_features(synth.dataset);
    GlobalWeights weights = default_global_weights();
    std::vector<ZipScore> zip_scores = global_scores(weights, table);
    FrequencyIndex freq = atm_frequency(synth.atms);
    std::map<std::string, double> score_by_zip;
    for (const ZipScore& z : zip_scores) score_by_zip[z.zipcode] = z.y_global;
    std::map<std::string, std::string> county_of = synth.dataset.zip_to_county();

    std::set<std::pair<std::string, std::string>> pairs;
    for (const AtmRecord& atm : synth.atms)
        pairs.insert({county_of.at(atm.zipcode), atm.network});
    c.expect(pairs.size() >= 10, "synthetic instance too small to be meaningful");
    for (const auto& [county, network] : pairs) {
        double got = county_global_score(network, county, table, zip_scores, freq, synth.atms);
        double brute = 0.0;
        for (const AtmRecord& atm : synth.atms) {
            if (atm.network == network && county_of.at(atm.zipcode) == county)
                brute += score_by_zip.at(atm.zipcode) * atm.relative_score;
        }
        c.expect(std::fabs(got - brute) <= 1e-9,
                 "county score differs from raw per-ATM re-summation");
    }

    // tripling every venue score must not reorder networks within a county
    FusionConfig fusion;
    fusion.trees = 30;
    fusion.restarts = 5;
    ScoreReport before = compute_score_report(synth.dataset, synth.atms, weights, fusion, 99);
    std::vector<AtmRecord> scaled = synth.atms;
    for (AtmRecord& atm : scaled) atm.relative_score *= 3;
    ScoreReport after = compute_score_report(synth.dataset, scaled, weights, fusion, 99);
    c.expect(before.rankings.size() == after.rankings.size(),
             "county coverage changed under venue-score scaling");
    for (size_t i = 0; i < before.rankings.size() && c.ok; ++i) {
        c.expect(before.rankings[i].county == after.rankings[i].county &&
                     before.rankings[i].networks == after.rankings[i].networks,
                 "within-county ranking changed under venue-score scaling");
    }
    return c;
}

// --- criterion 8: planted wealth factors in the frequency table --------------

Checker check_feature_frequency() {
    Checker c;
    SynthConfig config;
    config.zipcodes = 2000;
    config.counties = 40;
    config.atms = 5000;
    config.extra_features = 8;
    SynthData synth = generate_synthetic_data(config, 4242);
    ScoreReport report =
        compute_score_report(synth.dataset, synth.atms, default_global_weights(), {}, 4242);
    c.expect(report.rankings.size() >= 30, "expected at least 30 scored counties");
    for (const char* name :
         {"population_density", "median_household_income", "pct_not_earning"}) {
        int count = 0;
        for (const FeatureFrequency& entry : report.feature_frequency) {
            if (entry.feature == name) count = entry.county_count;
        }
        c.expect(count >= 30, std::string(name) + " picked by only " + std::to_string(count) +
                                  " counties");
    }
    return c;
}

// --- criterion 9: placement solvers -------------------------------------------

Plan knapsack_reference(const std::vector<Candidate>& candidates, double budget) {
    Plan best;
    const size_t n = candidates.size();
    for (uint64_t mask = 0; mask < (1ull << n); ++mask) {
        double score = 0.0, cost = 0.0;
        std::vector<std::string> ids;
        for (size_t i = 0; i < n; ++i) {
            if (mask & (1ull << i)) {
                score += candidates[i].score;
                cost += candidates[i].cost;
                ids.push_back(candidates[i].id);
            }
        }
        if (cost > budget) continue;
        std::sort(ids.begin(), ids.end());
        bool better =
            score > best.total_score ||
            (score == best.total_score &&
             (cost < best.total_cost ||
              (cost == best.total_cost &&
               std::lexicographical_compare(ids.begin(), ids.end(), best.selected.begin(),
                                            best.selected.end()))));
        if (better) {
            best.total_score = score;
            best.total_cost = cost;
            best.selected = std::move(ids);
        }
    }
    return best;
}

std::vector<Candidate> random_candidates(Rng& rng, size_t max_n) {
    size_t n = 1 + rng.below(max_n);
    std::vector<Candidate> candidates(n);
    for (size_t i = 0; i < n; ++i) {
        candidates[i].id = "c" + std::to_string(10 + i);
        candidates[i].score = static_cast<double>(rng.below(30));
        candidates[i].cost = static_cast<double>(1 + rng.below(20));
    }
    return candidates;
}

Checker check_optimizer() {
    Checker c;
    auto start = std::chrono::steady_clock::now();
    Rng rng(derive_seed(4242, "acc_knapsack", 0));
    for (int trial = 0; trial < 50 && c.ok; ++trial) {
        auto candidates = random_candidates(rng, 18);
        double budget = static_cast<double>(rng.below(80));
        Plan got = exact_placement(candidates, budget);
        Plan want = knapsack_reference(candidates, budget);
        c.expect(got.selected == want.selected && got.total_score == want.total_score &&
                     got.total_cost == want.total_cost,
                 "exact plan differs from brute-force enumeration");
    }
    for (int trial = 0; trial < 200 && c.ok; ++trial) {
        auto candidates = random_candidates(rng, 20);
        double budget = static_cast<double>(rng.below(70));
        Plan greedy = greedy_placement(candidates, budget);
        Plan exact = exact_placement(candidates, budget);
        c.expect(greedy.total_cost <= budget, "greedy plan exceeded the budget");
        c.expect(2.0 * greedy.total_score >= exact.total_score,
                 "greedy fell below half the optimum");
    }
    for (int trial = 0; trial < 100 && c.ok; ++trial) {
        auto candidates = random_candidates(rng, 16);
        double low = static_cast<double>(rng.below(50));
        double high = low + static_cast<double>(rng.below(40));
        c.expect(exact_placement(candidates, high).total_score >=
                     exact_placement(candidates, low).total_score,
                 "a larger budget lowered the achievable score");
    }
    c.expect(seconds_since(start) < 10.0, "placement suite exceeded 10s");
    return c;
}

// --- criterion 10: full-scale determinism -------------------------------------

Checker check_end_to_end(const fs::path& cli, const fs::path& tmp) {
    Checker c;
    auto gen_cmd = [&](const fs::path& out, const fs::path& log) {
        return quoted(cli) + " gen-data --zipcodes 5000 --counties 40 --atms 11229 --seed 42" +
               " --out " + quoted(out) + " > " + quoted(log) + " 2>&1";
    };
    auto score_cmd = [&](const fs::path& data, const fs::path& out, const fs::path& log) {
        return quoted(cli) + " score --zipcodes " + quoted(data / "zipcodes.csv") + " --atms " +
               quoted(data / "atms.csv") + " --seed 42 --out " + quoted(out) + " > " +
               quoted(log) + " 2>&1";
    };

    fs::path data_a = tmp / "full_a", out_a = tmp / "full_a_scores";
    fs::path data_b = tmp / "full_b", out_b = tmp / "full_b_scores";
    auto start = std::chrono::steady_clock::now();
    c.expect(shell(gen_cmd(data_a, tmp / "full_a_gen.log")) == 0, "full-scale gen-data failed");
    c.expect(shell(score_cmd(data_a, out_a, tmp / "full_a_score.log")) == 0,
             "full-scale score failed");
    double elapsed = seconds_since(start);
    c.expect(elapsed < 60.0,
             "full-scale run took " + std::to_string(elapsed) + "s, budget is 60s");

    c.expect(shell(gen_cmd(data_b, tmp / "full_b_gen.log")) == 0, "second gen-data failed");
    c.expect(shell(score_cmd(data_b, out_b, tmp / "full_b_score.log")) == 0,
             "second score failed");

    for (const char* name : {"zipcodes.csv", "atms.csv", "manifest.json"}) {
        c.expect(slurp(data_a / name) == slurp(data_b / name),
                 std::string("gen-data reruns differ in ") + name);
    }
    for (const char* name : {"scores.csv", "rankings.csv", "feature_frequency.csv",
                             "report.json", "manifest.json"}) {
        c.expect(slurp(out_a / name) == slurp(out_b / name),
                 std::string("score reruns differ in ") + name);
    }
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    fs::path cli;
    for (int i = 1; i < argc; ++i) {
        if (std::string(argv[i]) == "--cli" && i + 1 < argc) cli = argv[++i];
    }
    if (cli.empty() || !fs::exists(cli)) {
        std::fprintf(stderr, "usage: acceptance --cli <path-to-atmscore-binary>\n");
        return 2;
    }
    fs::path tmp = fs::temp_directory_path() / "atmscore_acceptance";
    std::error_code ec;
    fs::remove_all(tmp, ec);
    fs::create_directories(tmp, ec);
    if (ec) {
        std::fprintf(stderr, "cannot create %s\n", tmp.string().c_str());
        return 2;
    }

    bool all_ok = true;
    auto report = [&](const char* name, auto&& fn) {
        Checker c;
        try {
            c = fn();
        } catch (const std::exception& e) {
            c.ok = false;
            c.detail = e.what();
        }
        if (c.ok) {
            std::printf("PASS  %s\n", name);
        } else {
            std::printf("FAIL  %s (%s)\n", name, c.detail.c_str());
        }
        std::fflush(stdout);
        all_ok = all_ok && c.ok;
    };

    report("constants: venue scores, default weights, fusion split in help and manifest",
           [&] { return check_constants(cli, tmp); });
    report("softmax: sums to one, shift invariant, order preserving on 1000 vectors",
           [] { return check_softmax(); });
    report("pearson: matches reference on 100 pairs, affine invariant",
           [] { return check_pearson(); });
    report("k-means: optimal on 20 crafted instances, SSE traces monotone",
           [] { return check_kmeans(); });
    report("forest: planted feature tops importance in >=9/10 seeds",
           [] { return check_forest_recovery(); });
    report("best split: matches exhaustive scan on 50 instances",
           [] { return check_best_split(); });
    report("scoring: per-zip product, county re-summation, fusion endpoints, scale invariance",
           [] { return check_scoring_algebra(); });
    report("feature frequency: wealth factors span >=30 counties on planted data",
           [] { return check_feature_frequency(); });
    report("optimizer: brute-force match, greedy half bound, budget monotone",
           [] { return check_optimizer(); });
    report("end-to-end: full-scale run under 60s, reruns byte-identical",
           [&] { return check_end_to_end(cli, tmp); });

    return all_ok ? 0 : 1;
}
