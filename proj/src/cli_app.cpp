#include "atmscore/cli_app.hpp"

#include <cstdio>
#include <filesystem>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "atmscore/csv.hpp"
#include "atmscore/dataset.hpp"
#include "atmscore/errors.hpp"
#include "atmscore/global_model.hpp"
#include "atmscore/optimizer.hpp"
#include "atmscore/report.hpp"
#include "atmscore/scoring.hpp"
#include "atmscore/synth.hpp"
#include "atmscore/wealth.hpp"

namespace atmscore {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

void ensure_out_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cli", "cannot create output directory " + dir.string());
}

struct ScoreOptions {
    std::string zipcodes_path;
    std::string atms_path;
    std::string out_dir = ".";
    std::string weights_path;
    bool raw_weights = false;
    std::string keywords_path;
    FusionConfig fusion;
    uint64_t seed = 42;
};

void add_score_options(CLI::App* cmd, ScoreOptions& opt) {
    cmd->add_option("--zipcodes", opt.zipcodes_path, "Zipcode table (CSV)")->required();
    cmd->add_option("--atms", opt.atms_path, "ATM table (CSV)")->required();
    cmd->add_option("--out", opt.out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--alpha", opt.fusion.alpha,
                    "Weight of the global model in fusion; the local model keeps 1 - alpha "
                    "(default 0.35, so the local weight is 0.65)")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--k", opt.fusion.k, "Clusters per county")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--top-features", opt.fusion.top_features,
                    "Features kept from the importance ranking")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--trees", opt.fusion.trees, "Trees per random forest")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--restarts", opt.fusion.restarts, "k-means restarts")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", opt.seed, "Master RNG seed")->capture_default_str();
    cmd->add_option("--weights", opt.weights_path,
                    "Global weight file (feature = weight lines); default is the built-in "
                    "11-feature vector");
    cmd->add_flag("--raw-weights", opt.raw_weights,
                  "Treat --weights values as raw scores and softmax-normalize them");
    cmd->add_option("--keywords", opt.keywords_path,
                    "Keyword table for venue classification (class = keyword, ... lines)");
}

ordered_json score_flags_json(const ScoreOptions& opt) {
    ordered_json flags;
    flags["alpha"] = opt.fusion.alpha;
    flags["local_weight"] = 1.0 - opt.fusion.alpha;
    flags["k"] = opt.fusion.k;
    flags["top_features"] = opt.fusion.top_features;
    flags["trees"] = opt.fusion.trees;
    flags["restarts"] = opt.fusion.restarts;
    flags["weights"] = opt.weights_path.empty() ? "default" : opt.weights_path;
    flags["raw_weights"] = opt.raw_weights;
    flags["keywords"] = opt.keywords_path.empty() ? "default" : opt.keywords_path;
    return flags;
}

struct ScoreRun {
    ScoreReport report;
    std::vector<fs::path> inputs;
};

ScoreRun run_score_pipeline(const ScoreOptions& opt) {
    if (opt.raw_weights && opt.weights_path.empty())
        throw ValidationError("cli", "--raw-weights needs --weights");
    Dataset data = load_zipcodes(opt.zipcodes_path);
    KeywordTable keywords =
        opt.keywords_path.empty() ? KeywordTable::defaults() : KeywordTable::load(opt.keywords_path);
    AtmLoadResult atms = load_atms(opt.atms_path, data, keywords);
    if (atms.rejected_count > 0)
        std::fprintf(stderr, "note: skipped %d ATM rows with unknown zipcodes\n",
                     atms.rejected_count);
    GlobalWeights weights = default_global_weights();
    if (!opt.weights_path.empty()) weights = load_weights(opt.weights_path, opt.raw_weights);

    ScoreRun run;
    run.report = compute_score_report(data, atms.records, weights, opt.fusion, opt.seed);
    run.inputs = {fs::path(opt.zipcodes_path), fs::path(opt.atms_path)};
    if (!opt.weights_path.empty()) run.inputs.push_back(fs::path(opt.weights_path));
    if (!opt.keywords_path.empty()) run.inputs.push_back(fs::path(opt.keywords_path));
    return run;
}

int cmd_gen_data(const SynthConfig& config, uint64_t seed, const std::string& out_dir) {
    fs::path dir(out_dir);
    ensure_out_dir(dir);
    fs::path zip_path = dir / "zipcodes.csv";
    fs::path atm_path = dir / "atms.csv";
    generate_synthetic(config, seed, zip_path, atm_path);

    ordered_json flags;
    flags["zipcodes"] = config.zipcodes;
    flags["counties"] = config.counties;
    flags["atms"] = config.atms;
    flags["extra_features"] = config.extra_features;
    flags["planted"] = config.planted;
    write_manifest(dir / "manifest.json", "gen-data", seed, flags, {}, {zip_path, atm_path});
    std::printf("wrote %s and %s\n", zip_path.string().c_str(), atm_path.string().c_str());
    return 0;
}

int cmd_correlate(const std::string& zipcodes_path, const std::string& out_dir, double threshold,
                  bool scatter, uint64_t seed) {
    Dataset data = load_zipcodes(zipcodes_path);
    NormalizedTable table = normalize_features(data);
    CorrelationReport report = correlate_features(table);
    report.threshold = threshold;
    report.selected = select_features(report, threshold);

    fs::path dir(out_dir);
    ensure_out_dir(dir);
    std::vector<fs::path> outputs = {dir / "correlations.csv", dir / "selected_features.csv"};
    write_correlations_csv(outputs[0], report);
    write_selected_features_csv(outputs[1], report);
    if (scatter) {
        write_scatter_files(dir / "scatter", table, report, report.selected);
        for (const std::string& feature : report.selected)
            outputs.push_back(dir / "scatter" / (feature + ".csv"));
    }

    ordered_json flags;
    flags["threshold"] = threshold;
    flags["scatter"] = scatter;
    write_manifest(dir / "manifest.json", "correlate", seed, flags, {fs::path(zipcodes_path)},
                   outputs);
    std::printf("%zu of %zu features selected at |r| >= %s\n", report.selected.size(),
                report.entries.size(), format_general(threshold).c_str());
    return 0;
}

int cmd_score(const ScoreOptions& opt) {
    ScoreRun run = run_score_pipeline(opt);
    fs::path dir(opt.out_dir);
    ensure_out_dir(dir);
    std::vector<fs::path> outputs = {dir / "scores.csv", dir / "rankings.csv",
                                     dir / "feature_frequency.csv", dir / "report.json"};
    write_scores_csv(outputs[0], run.report);
    write_rankings_csv(outputs[1], run.report);
    write_feature_frequency_csv(outputs[2], run.report);
    write_report_json(outputs[3], run.report);
    write_manifest(dir / "manifest.json", "score", run.report.seed, score_flags_json(opt),
                   run.inputs, outputs);
    std::printf("scored %zu county-network pairs across %zu counties\n", run.report.rows.size(),
                run.report.rankings.size());
    return 0;
}

int cmd_rank(const ScoreOptions& opt, const std::string& county) {
    ScoreRun run = run_score_pipeline(opt);
    fs::path dir(opt.out_dir);
    ensure_out_dir(dir);
    std::vector<fs::path> outputs = {dir / "rankings.csv"};
    write_rankings_csv(outputs[0], run.report);
    ordered_json flags = score_flags_json(opt);
    flags["county"] = county.empty() ? "all" : county;
    write_manifest(dir / "manifest.json", "rank", run.report.seed, flags, run.inputs, outputs);

    bool found = county.empty();
    for (const auto& ranking : run.report.rankings) {
        if (!county.empty() && ranking.county != county) continue;
        found = true;
        std::printf("%s:", ranking.county.c_str());
        for (const auto& network : ranking.networks) std::printf(" %s", network.c_str());
        std::printf("\n");
    }
    if (!found) throw DomainError("cli", "county '" + county + "' has no scored networks");
    return 0;
}

// scores.csv reduced to one candidate per county: the named network's row,
// or each county's best fused score when no network is given.
std::vector<Candidate> candidates_from_scores(const fs::path& scores_path,
                                              const fs::path& costs_path,
                                              const std::string& network) {
    CsvTable scores = read_csv(scores_path);
    int county_col = scores.column("county");
    int network_col = scores.column("network");
    int fused_col = scores.column("s_fused");
    if (county_col < 0 || network_col < 0 || fused_col < 0)
        throw SchemaError("cli", scores_path.string() +
                                     " must carry county, network and s_fused columns");

    std::map<std::string, double> best;
    for (size_t i = 0; i < scores.rows.size(); ++i) {
        const auto& row = scores.rows[i];
        if (!network.empty() && row[network_col] != network) continue;
        bool ok = false;
        double fused = parse_double(row[fused_col], ok);
        if (!ok)
            throw ValidationError("cli", scores_path.string() + " row " + std::to_string(i + 2) +
                                             ": s_fused is not numeric");
        auto [it, inserted] = best.try_emplace(row[county_col], fused);
        if (!inserted) it->second = std::max(it->second, fused);
    }
    if (best.empty())
        throw ValidationError("cli", network.empty()
                                         ? scores_path.string() + " holds no score rows"
                                         : "network '" + network + "' absent from " +
                                               scores_path.string());

    std::map<std::string, double> costs;
    if (!costs_path.empty()) {
        CsvTable table = read_csv(costs_path);
        int id_col = table.column("county");
        int cost_col = table.column("cost");
        if (id_col < 0 || cost_col < 0)
            throw SchemaError("cli", costs_path.string() + " must carry county and cost columns");
        for (size_t i = 0; i < table.rows.size(); ++i) {
            bool ok = false;
            double cost = parse_double(table.rows[i][cost_col], ok);
            if (!ok || !(cost > 0.0))
                throw ValidationError("cli", costs_path.string() + " row " +
                                                 std::to_string(i + 2) +
                                                 ": cost must be a positive number");
            if (!costs.emplace(table.rows[i][id_col], cost).second)
                throw ValidationError("cli", costs_path.string() + ": duplicate county '" +
                                                 table.rows[i][id_col] + "'");
        }
    }

    std::vector<Candidate> candidates;
    candidates.reserve(best.size());
    for (const auto& [county, score] : best) {
        double cost = 1.0;
        if (!costs.empty()) {
            auto it = costs.find(county);
            if (it == costs.end())
                throw ValidationError("cli", costs_path.string() + " is missing county '" +
                                                 county + "'");
            cost = it->second;
        }
        candidates.push_back({county, std::max(score, 0.0), cost});
    }
    return candidates;
}

int cmd_optimize(const std::string& scores_path, const std::string& costs_path, double budget,
                 const std::string& method, const std::string& network,
                 const std::string& out_dir, uint64_t seed) {
    if (!(budget >= 0.0)) throw ValidationError("cli", "--budget must be nonnegative");
    std::vector<Candidate> candidates =
        candidates_from_scores(scores_path, costs_path, network);

    Plan plan;
    if (method == "exact") {
        plan = exact_placement(candidates, budget);
    } else if (method == "greedy") {
        plan = greedy_placement(candidates, budget);
    } else if (method == "auto") {
        plan = static_cast<int>(candidates.size()) <= kExactPlacementLimit
                   ? exact_placement(candidates, budget)
                   : greedy_placement(candidates, budget);
    } else {
        throw ValidationError("cli", "--method must be auto, exact or greedy");
    }

    fs::path dir(out_dir);
    ensure_out_dir(dir);
    fs::path plan_path = dir / "plan.csv";
    write_plan_csv(plan_path, plan, candidates);

    ordered_json flags;
    flags["budget"] = budget;
    flags["method"] = method;
    flags["resolved_method"] = plan.method;
    flags["network"] = network.empty() ? "best-per-county" : network;
    flags["costs"] = costs_path.empty() ? "uniform-1.0" : costs_path;
    std::vector<fs::path> inputs = {fs::path(scores_path)};
    if (!costs_path.empty()) inputs.push_back(fs::path(costs_path));
    write_manifest(dir / "manifest.json", "optimize", seed, flags, inputs, {plan_path});
    std::printf("%s plan: %zu of %zu candidates, score %s, cost %s\n", plan.method.c_str(),
                plan.selected.size(), candidates.size(),
                format_general(plan.total_score).c_str(),
                format_general(plan.total_cost).c_str());
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"ATM location scoring: demographic ingestion, dual global/local models, "
                 "fused county rankings, and budgeted placement"};
    app.name("atmscore");
    app.require_subcommand(1);

    // gen-data
    SynthConfig synth;
    uint64_t gen_seed = 42;
    std::string gen_out = ".";
    CLI::App* gen = app.add_subcommand("gen-data", "Generate a seeded synthetic dataset");
    gen->add_option("--zipcodes", synth.zipcodes, "Zipcode rows")->capture_default_str();
    gen->add_option("--counties", synth.counties, "County count")->capture_default_str();
    gen->add_option("--atms", synth.atms, "ATM rows")->capture_default_str();
    gen->add_option("--extra-features", synth.extra_features, "Extra f_* noise columns")
        ->capture_default_str();
    bool no_planted = false;
    gen->add_flag("--no-planted", no_planted,
                  "Disable planted cluster tiers and wealth-driven ATM density");
    gen->add_option("--seed", gen_seed, "Master RNG seed")->capture_default_str();
    gen->add_option("--out", gen_out, "Output directory")->capture_default_str();

    // correlate
    std::string corr_zipcodes, corr_out = ".";
    double corr_threshold = kDefaultCorrelationThreshold;
    bool corr_scatter = false;
    uint64_t corr_seed = 42;
    CLI::App* corr =
        app.add_subcommand("correlate", "Correlate every feature with the wealth estimate");
    corr->add_option("--zipcodes", corr_zipcodes, "Zipcode table (CSV)")->required();
    corr->add_option("--threshold", corr_threshold, "Selection bar on |r|")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    corr->add_flag("--scatter", corr_scatter, "Also write per-feature scatter files");
    corr->add_option("--seed", corr_seed, "Recorded in the manifest")->capture_default_str();
    corr->add_option("--out", corr_out, "Output directory")->capture_default_str();

    // score
    ScoreOptions score_opt;
    CLI::App* score = app.add_subcommand(
        "score", "Run the full scoring pipeline and write reports");
    add_score_options(score, score_opt);

    // rank
    ScoreOptions rank_opt;
    std::string rank_county;
    CLI::App* rank =
        app.add_subcommand("rank", "Score and print per-county network rankings");
    add_score_options(rank, rank_opt);
    rank->add_option("--county", rank_county, "Only print this county");

    // optimize
    std::string opt_scores, opt_costs, opt_method = "auto", opt_network, opt_out = ".";
    double opt_budget = 0.0;
    uint64_t opt_seed = 42;
    CLI::App* optimize =
        app.add_subcommand("optimize", "Pick counties to maximize fused score under a budget");
    optimize->add_option("--scores", opt_scores, "scores.csv from a score run")->required();
    optimize->add_option("--costs", opt_costs,
                         "County cost table (county, cost); omitted means every cost is 1.0");
    optimize->add_option("--budget", opt_budget, "Total cost allowed")
        ->required()
        ->check(CLI::NonNegativeNumber);
    optimize->add_option("--method", opt_method, "auto, exact or greedy")
        ->capture_default_str();
    optimize->add_option("--network", opt_network,
                         "Score counties by this network instead of their best network");
    optimize->add_option("--seed", opt_seed, "Recorded in the manifest")->capture_default_str();
    optimize->add_option("--out", opt_out, "Output directory")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (gen->parsed()) {
            synth.planted = !no_planted;
            return cmd_gen_data(synth, gen_seed, gen_out);
        }
        if (corr->parsed())
            return cmd_correlate(corr_zipcodes, corr_out, corr_threshold, corr_scatter,
                                 corr_seed);
        if (score->parsed()) return cmd_score(score_opt);
        if (rank->parsed()) return cmd_rank(rank_opt, rank_county);
        if (optimize->parsed())
            return cmd_optimize(opt_scores, opt_costs, opt_budget, opt_method, opt_network,
                                opt_out, opt_seed);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.exit_code();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}

}  // namespace atmscore
