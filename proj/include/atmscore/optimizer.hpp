#pragma once

#include <string>
#include <vector>

namespace atmscore {

struct Candidate {
    std::string id;
    double score = 0.0;  // reward for placing here
    double cost = 0.0;   // setup cost, must be positive
};

struct Plan {
    std::vector<std::string> selected;  // candidate ids, sorted
    double total_score = 0.0;
    double total_cost = 0.0;
    std::string method;  // "exact" or "greedy"
};

// Largest candidate set the exhaustive solver accepts.
constexpr int kExactPlacementLimit = 24;

// Exhaustive 0/1 selection maximizing total score under the budget. Ties
// broken by lower total cost, then lexicographically smaller id set.
Plan exact_placement(const std::vector<Candidate>& candidates, double budget);

// Score/cost-ratio greedy with skip-and-continue, compared against the best
// single affordable candidate; the better plan wins. At least half the exact
// optimum.
Plan greedy_placement(const std::vector<Candidate>& candidates, double budget);

}  // namespace atmscore
