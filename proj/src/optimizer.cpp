#include "atmscore/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "atmscore/errors.hpp"

namespace atmscore {

namespace {

void check_instance(const std::vector<Candidate>& candidates, double budget) {
    if (!(budget >= 0.0)) throw DomainError("optimizer", "budget must be nonnegative");
    std::set<std::string> ids;
    for (const Candidate& c : candidates) {
        if (c.id.empty()) throw DomainError("optimizer", "candidate with empty id");
        if (!ids.insert(c.id).second)
            throw DomainError("optimizer", "duplicate candidate id '" + c.id + "'");
        if (!(c.cost > 0.0) || !std::isfinite(c.cost))
            throw DomainError("optimizer", "candidate '" + c.id + "' needs a positive cost");
        if (!(c.score >= 0.0) || !std::isfinite(c.score))
            throw DomainError("optimizer", "candidate '" + c.id + "' needs a nonnegative score");
    }
}

std::vector<std::string> sorted_ids(const std::vector<Candidate>& candidates,
                                    const std::vector<int>& chosen) {
    std::vector<std::string> ids;
    ids.reserve(chosen.size());
    for (int i : chosen) ids.push_back(candidates[i].id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

// True when (score, cost, ids) beats the incumbent: higher score, then lower
// cost, then lexicographically smaller id set.
bool beats(double score, double cost, const std::vector<std::string>& ids, const Plan& best) {
    if (score != best.total_score) return score > best.total_score;
    if (cost != best.total_cost) return cost < best.total_cost;
    return std::lexicographical_compare(ids.begin(), ids.end(), best.selected.begin(),
                                        best.selected.end());
}

struct ExactSearch {
    const std::vector<Candidate>& candidates;
    double budget;
    std::vector<double> suffix_score;  // total score of items i..n-1
    std::vector<int> chosen;
    Plan best;

    void consider(double score, double cost) {
        std::vector<std::string> ids = sorted_ids(candidates, chosen);
        if (beats(score, cost, ids, best)) {
            best.total_score = score;
            best.total_cost = cost;
            best.selected = std::move(ids);
        }
    }

    void dfs(size_t i, double score, double cost) {
        if (i == candidates.size()) {
            consider(score, cost);
            return;
        }
        if (score + suffix_score[i] < best.total_score) return;  // cannot beat or tie
        if (cost + candidates[i].cost <= budget) {
            chosen.push_back(static_cast<int>(i));
            dfs(i + 1, score + candidates[i].score, cost + candidates[i].cost);
            chosen.pop_back();
        }
        dfs(i + 1, score, cost);
    }
};

}  // namespace

Plan exact_placement(const std::vector<Candidate>& candidates, double budget) {
    check_instance(candidates, budget);
    if (static_cast<int>(candidates.size()) > kExactPlacementLimit)
        throw DomainError("optimizer",
                          "exact solver handles at most " + std::to_string(kExactPlacementLimit) +
                              " candidates; use greedy_placement (--method greedy)");
    ExactSearch search{candidates, budget, {}, {}, {}};
    search.suffix_score.assign(candidates.size() + 1, 0.0);
    for (size_t i = candidates.size(); i-- > 0;)
        search.suffix_score[i] = search.suffix_score[i + 1] + candidates[i].score;
    search.best.method = "exact";
    search.dfs(0, 0.0, 0.0);
    return search.best;
}

Plan greedy_placement(const std::vector<Candidate>& candidates, double budget) {
    check_instance(candidates, budget);

    std::vector<int> order(candidates.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        double ra = candidates[a].score / candidates[a].cost;
        double rb = candidates[b].score / candidates[b].cost;
        if (ra != rb) return ra > rb;
        if (candidates[a].score != candidates[b].score)
            return candidates[a].score > candidates[b].score;
        return candidates[a].id < candidates[b].id;
    });

    Plan plan;
    plan.method = "greedy";
    std::vector<int> chosen;
    for (int i : order) {
        if (plan.total_cost + candidates[i].cost > budget) continue;
        chosen.push_back(i);
        plan.total_score += candidates[i].score;
        plan.total_cost += candidates[i].cost;
    }
    plan.selected = sorted_ids(candidates, chosen);

    // Ratio-greedy can starve a single heavy, high-score candidate; keeping
    // the better of the two bounds the gap at half the optimum.
    int single = -1;
    for (size_t i = 0; i < candidates.size(); ++i) {
        if (candidates[i].cost > budget) continue;
        if (single < 0 || candidates[i].score > candidates[single].score ||
            (candidates[i].score == candidates[single].score &&
             (candidates[i].cost < candidates[single].cost ||
              (candidates[i].cost == candidates[single].cost &&
               candidates[i].id < candidates[single].id))))
            single = static_cast<int>(i);
    }
    if (single >= 0) {
        std::vector<std::string> ids = {candidates[single].id};
        if (beats(candidates[single].score, candidates[single].cost, ids, plan)) {
            plan.total_score = candidates[single].score;
            plan.total_cost = candidates[single].cost;
            plan.selected = std::move(ids);
        }
    }
    return plan;
}

}  // namespace atmscore
