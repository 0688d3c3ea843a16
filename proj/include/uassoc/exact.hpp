#pragma once

#include <chrono>
#include <cstdint>

#include "uassoc/model.hpp"

namespace uassoc::exact {

enum class SolveStatus { Optimal, Infeasible, TimedOut };

const char* to_string(SolveStatus status);

struct SolveResult {
    model::Assignment assignment;  // empty when no feasible solution was found
    double cost = 0.0;             // +inf when no feasible solution was found
    SolveStatus status = SolveStatus::Infeasible;
    std::uint64_t nodes_explored = 0;
    std::chrono::milliseconds elapsed{0};
};

struct BruteForceOptions {
    std::uint64_t enumeration_cap = 10'000'000;  // max |N|^|U| assignments
};

/// Exhaustive enumeration in lexicographic station_of order; the minimum-cost
/// feasible assignment wins and ties keep the lexicographically smallest one.
/// Throws std::invalid_argument when |N|^|U| exceeds the cap.
SolveResult solve_bruteforce(const model::Instance& inst, const BruteForceOptions& opts = {});

struct BnbOptions {
    std::chrono::milliseconds time_limit{60'000};
};

/// Depth-first branch and bound. Users are branched in descending regret
/// order (gap between their best and second-best pair cost), children are
/// visited in ascending pair cost, and nodes are pruned when
///   partial_cost + sum of remaining capacity-ignoring minima >= incumbent.
/// Exhausting the tree proves Optimal; hitting the time limit returns the
/// incumbent as TimedOut.
SolveResult solve_bnb(const model::Instance& inst, const BnbOptions& opts = {});

}  // namespace uassoc::exact
