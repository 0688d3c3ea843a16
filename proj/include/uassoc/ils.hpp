#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "uassoc/model.hpp"
#include "uassoc/rng.hpp"

namespace uassoc::ils {

/// Raised when no feasible assignment could be constructed after the retry
/// budget; usually means the instance is infeasible or extremely tight.
struct ConstructionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IlsParams {
    std::chrono::milliseconds time_budget{2000};    // T
    int restart_threshold = 2;                      // alpha: stalled iterations before a restart
    int perturbation_strength = 2;                  // random moves per perturbation
    std::uint64_t seed = 0;
    /// When set, the solver runs exactly this many perturb+descent iterations
    /// instead of watching the clock, which makes runs reproducible.
    std::optional<std::uint64_t> iteration_budget;
    /// When true, plateau acceptances also reset the stall counter; when
    /// false, only strict improvements do, so a run orbiting an equal-cost
    /// plateau still ages toward a restart.
    bool reset_stall_on_equal = true;
};

struct IlsResult {
    model::Assignment best;
    double best_cost = 0.0;
    std::uint64_t iterations = 0;
    std::uint64_t restarts = 0;
    std::chrono::milliseconds elapsed{0};
};

/// Greedy randomized construction: users are visited in a shuffled order and
/// each connects to its cheapest station with enough remaining capacity (ties
/// resolved by a shuffled station order). Dead ends retry with fresh shuffles
/// up to 50 times before throwing ConstructionFailure.
model::Assignment initial_solution(const model::Instance& inst, const model::CostTable& costs,
                                   rng::Engine& eng);

/// First-improvement exchange of two users' stations. Scans pairs (u, v) with
/// u < v in index order, applies the first strict cost decrease that respects
/// both capacities, and updates the running cost. Returns whether a move was
/// made.
bool swap_ue(const model::Instance& inst, const model::CostTable& costs, model::Assignment& a,
             double& cost);

/// First-improvement relocation of one user to another station, same
/// contract as swap_ue.
bool insert_ue(const model::Instance& inst, const model::CostTable& costs, model::Assignment& a,
               double& cost);

/// Variable neighborhood descent over [swap_ue, insert_ue]; any improvement
/// restarts from the first neighborhood. The result admits no improving swap
/// or insert.
void vnd(const model::Instance& inst, const model::CostTable& costs, model::Assignment& a,
         double& cost);

/// Applies `strength` random feasible moves (swap or insert, coin-flipped)
/// without any cost test. Operands are rejection-sampled; a move whose
/// sampling budget runs out is skipped, so a fully saturated instance comes
/// back unchanged.
void perturb(const model::Instance& inst, const model::CostTable& costs, model::Assignment& a,
             double& cost, int strength, rng::Engine& eng);

/// Iterated local search: construct, descend, then loop perturbation +
/// descent, accepting non-worsening solutions and restarting from a fresh
/// construction after `restart_threshold` stalled iterations. The best
/// feasible solution seen anywhere in the run is archived and returned.
IlsResult ils_solve(const model::Instance& inst, const IlsParams& params);

}  // namespace uassoc::ils
