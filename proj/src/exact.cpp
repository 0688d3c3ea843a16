#include "uassoc/exact.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace uassoc::exact {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

std::chrono::milliseconds since(Clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
}

struct BruteForceSearch {
    const model::Instance& inst;
    const model::CostTable costs;
    std::vector<int> current;
    std::vector<int> load;
    std::vector<int> best;
    double best_cost = kInf;
    std::uint64_t nodes = 0;

    explicit BruteForceSearch(const model::Instance& instance)
        : inst(instance), costs(model::CostTable::build(instance)),
          current(instance.num_users(), 0), load(instance.num_stations(), 0) {}

    // Lexicographic DFS over station_of; strict improvement keeps the first
    // (lexicographically smallest) optimum. Prefixes that already exceed a
    // capacity cannot recover because demands are positive.
    void enumerate(std::size_t user, double partial) {
        if (user == inst.num_users()) {
            if (partial < best_cost) {
                best_cost = partial;
                best = current;
            }
            return;
        }
        for (std::size_t i = 0; i < inst.num_stations(); ++i) {
            ++nodes;
            const int l = inst.demand[user][i];
            if (static_cast<double>(load[i] + l) > inst.stations[i].capacity) {
                continue;
            }
            load[i] += l;
            current[user] = static_cast<int>(i);
            enumerate(user + 1, partial + costs.cost(user, i));
            load[i] -= l;
        }
    }
};

struct BnbSearch {
    const model::Instance& inst;
    const model::CostTable costs;
    std::vector<std::size_t> branch_order;           // users, descending regret
    std::vector<std::vector<std::size_t>> children;  // per user, stations by ascending cost
    std::vector<double> suffix_min;                  // sum of per-user minima from depth d on
    std::vector<int> current;
    std::vector<int> load;
    std::vector<int> best;
    double best_cost = kInf;
    std::uint64_t nodes = 0;
    bool timed_out = false;
    Clock::time_point deadline;

    explicit BnbSearch(const model::Instance& instance)
        : inst(instance), costs(model::CostTable::build(instance)),
          current(instance.num_users(), 0), load(instance.num_stations(), 0) {
        const std::size_t k = inst.num_users();
        const std::size_t n = inst.num_stations();
        children.resize(k);
        std::vector<double> regret(k, 0.0);
        for (std::size_t u = 0; u < k; ++u) {
            children[u].resize(n);
            std::iota(children[u].begin(), children[u].end(), std::size_t{0});
            std::sort(children[u].begin(), children[u].end(),
                      [&](std::size_t a, std::size_t b) {
                          const double ca = costs.cost(u, a);
                          const double cb = costs.cost(u, b);
                          return ca != cb ? ca < cb : a < b;
                      });
            if (n >= 2) {
                regret[u] = costs.cost(u, children[u][1]) - costs.cost(u, children[u][0]);
            }
        }
        branch_order.resize(k);
        std::iota(branch_order.begin(), branch_order.end(), std::size_t{0});
        std::stable_sort(branch_order.begin(), branch_order.end(),
                         [&](std::size_t a, std::size_t b) { return regret[a] > regret[b]; });
        suffix_min.assign(k + 1, 0.0);
        for (std::size_t d = k; d-- > 0;) {
            const std::size_t u = branch_order[d];
            suffix_min[d] = suffix_min[d + 1] + costs.cost(u, children[u][0]);
        }
    }

    void search(std::size_t depth, double partial) {
        if (timed_out) {
            return;
        }
        if (depth == inst.num_users()) {
            // Recompute in user-index order so reported costs do not depend
            // on the branching order's summation sequence.
            double cost = 0.0;
            for (std::size_t u = 0; u < current.size(); ++u) {
                cost += costs.cost(u, static_cast<std::size_t>(current[u]));
            }
            if (cost < best_cost) {
                best_cost = cost;
                best = current;
            }
            return;
        }
        const std::size_t u = branch_order[depth];
        for (const std::size_t i : children[u]) {
            const double bound = partial + costs.cost(u, i) + suffix_min[depth + 1];
            if (bound >= best_cost) {
                break;  // children are cost-sorted; later ones bound no lower
            }
            const int l = inst.demand[u][i];
            if (static_cast<double>(load[i] + l) > inst.stations[i].capacity) {
                continue;
            }
            if ((++nodes & 0xfff) == 0 && Clock::now() >= deadline) {
                timed_out = true;
                return;
            }
            load[i] += l;
            current[u] = static_cast<int>(i);
            search(depth + 1, partial + costs.cost(u, i));
            load[i] -= l;
            if (timed_out) {
                return;
            }
        }
    }
};

}  // namespace

const char* to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::Optimal: return "Optimal";
        case SolveStatus::Infeasible: return "Infeasible";
        case SolveStatus::TimedOut: return "TimedOut";
    }
    return "?";
}

SolveResult solve_bruteforce(const model::Instance& inst, const BruteForceOptions& opts) {
    const auto start = Clock::now();
    const std::size_t k = inst.num_users();
    const std::size_t n = inst.num_stations();

    SolveResult result;
    if (k > 0 && n == 0) {
        result.status = SolveStatus::Infeasible;
        result.cost = kInf;
        result.elapsed = since(start);
        return result;
    }

    // Overflow-safe |N|^|U| <= cap check.
    std::uint64_t total = 1;
    for (std::size_t u = 0; u < k && n > 1; ++u) {
        if (total > opts.enumeration_cap / n) {
            throw std::invalid_argument("solve_bruteforce: |N|^|U| exceeds the enumeration cap");
        }
        total *= n;
    }

    BruteForceSearch search(inst);
    search.enumerate(0, 0.0);
    result.nodes_explored = search.nodes;
    if (search.best_cost < kInf) {
        result.assignment = model::Assignment::from_stations(inst, search.best);
        result.cost = search.best_cost;
        result.status = SolveStatus::Optimal;
    } else {
        result.cost = kInf;
        result.status = SolveStatus::Infeasible;
    }
    result.elapsed = since(start);
    return result;
}

SolveResult solve_bnb(const model::Instance& inst, const BnbOptions& opts) {
    const auto start = Clock::now();
    SolveResult result;
    const std::size_t k = inst.num_users();
    const std::size_t n = inst.num_stations();
    if (k > 0 && n == 0) {
        result.status = SolveStatus::Infeasible;
        result.cost = kInf;
        result.elapsed = since(start);
        return result;
    }

    BnbSearch search(inst);
    search.deadline = start + opts.time_limit;
    search.search(0, 0.0);

    result.nodes_explored = search.nodes;
    if (search.best_cost < kInf) {
        result.assignment = model::Assignment::from_stations(inst, search.best);
        result.cost = search.best_cost;
        result.status = search.timed_out ? SolveStatus::TimedOut : SolveStatus::Optimal;
        assert(model::is_feasible(inst, result.assignment));
    } else {
        result.cost = kInf;
        result.status = search.timed_out ? SolveStatus::TimedOut : SolveStatus::Infeasible;
    }
    result.elapsed = since(start);
    return result;
}

}  // namespace uassoc::exact
