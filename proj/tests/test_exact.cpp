#include <algorithm>
#include <limits>

#include <doctest.h>

#include "helpers.hpp"
#include "uassoc/exact.hpp"
#include "uassoc/instgen.hpp"
#include "uassoc/model.hpp"

using namespace uassoc;
using testing::make_instance;
using testing::station;
using testing::user;

namespace {

// Best feasible completion of a fixed prefix, found by exhaustive
// enumeration. Used as the reference for bound admissibility.
double best_completion_cost(const model::Instance& inst, const model::CostTable& costs,
                            const std::vector<int>& prefix) {
    const std::size_t k = inst.num_users();
    const std::size_t n = inst.num_stations();
    std::vector<int> load(n, 0);
    double partial = 0.0;
    for (std::size_t u = 0; u < prefix.size(); ++u) {
        load[static_cast<std::size_t>(prefix[u])] += inst.demand[u][static_cast<std::size_t>(prefix[u])];
        partial += costs.cost(u, static_cast<std::size_t>(prefix[u]));
    }
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> choice(k - prefix.size(), 0);
    const std::size_t tail = choice.size();
    for (;;) {
        double cost = partial;
        std::vector<int> trial_load = load;
        bool feasible = true;
        for (std::size_t t = 0; t < tail; ++t) {
            const std::size_t u = prefix.size() + t;
            const auto i = static_cast<std::size_t>(choice[t]);
            trial_load[i] += inst.demand[u][i];
            if (static_cast<double>(trial_load[i]) > inst.stations[i].capacity) {
                feasible = false;
                break;
            }
            cost += costs.cost(u, i);
        }
        if (feasible) {
            best = std::min(best, cost);
        }
        std::size_t digit = 0;
        while (digit < tail) {
            if (++choice[digit] < static_cast<int>(n)) {
                break;
            }
            choice[digit] = 0;
            ++digit;
        }
        if (digit == tail) {
            break;
        }
    }
    return best;
}

}  // namespace

TEST_SUITE_BEGIN("exact");

TEST_CASE("brute force picks the cheaper station") {
    const auto inst = testing::colocated_pair(0.0, 2.0);  // costs 5 and 7
    const auto result = exact::solve_bruteforce(inst);
    REQUIRE(result.status == exact::SolveStatus::Optimal);
    CHECK(result.cost == 5.0);
    CHECK(result.assignment.station_of == std::vector<int>{0});
}

TEST_CASE("brute force detects infeasibility") {
    const auto inst = make_instance({user(0, 0.0, 0.0), user(1, 1.0, 0.0)},
                                    {station(0, 0.0, 0.0, 500.0, 10.0)},
                                    {{6}, {6}});
    const auto result = exact::solve_bruteforce(inst);
    CHECK(result.status == exact::SolveStatus::Infeasible);
    CHECK(result.assignment.station_of.empty());
}

TEST_CASE("brute force tie-breaks to the lexicographically smallest assignment") {
    // Both stations identical: every assignment costs the same.
    const auto inst = make_instance({user(0, 10.0, 0.0), user(1, 20.0, 0.0)},
                                    {station(0, 0.0, 0.0, 500.0, 100.0),
                                     station(1, 0.0, 0.0, 500.0, 100.0)},
                                    {{5, 5}, {5, 5}});
    const auto result = exact::solve_bruteforce(inst);
    REQUIRE(result.status == exact::SolveStatus::Optimal);
    CHECK(result.assignment.station_of == std::vector<int>{0, 0});
}

TEST_CASE("brute force rejects instances over the enumeration cap") {
    const auto spec = [] {
        instgen::InstanceSpec s;
        s.type = instgen::InstanceType::A;
        s.num_users = 100;
        s.num_stations = 5;
        s.seed = 3;
        return s;
    }();
    const auto inst = instgen::gen_instance(spec);
    CHECK_THROWS_AS(exact::solve_bruteforce(inst), std::invalid_argument);
}

TEST_CASE("empty user set solves to zero") {
    const auto inst = make_instance({}, {station(0, 0.0, 0.0, 500.0, 10.0),
                                         station(1, 1.0, 0.0, 500.0, 10.0)},
                                    {});
    for (const auto& result : {exact::solve_bruteforce(inst), exact::solve_bnb(inst)}) {
        CHECK(result.status == exact::SolveStatus::Optimal);
        CHECK(result.cost == 0.0);
        CHECK(result.assignment.station_of.empty());
    }
}

TEST_CASE("branch and bound equals brute force on random instances") {
    rng::Engine eng(2024);
    int infeasible_seen = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const auto inst = testing::random_instance(eng);
        const auto reference = exact::solve_bruteforce(inst);
        const auto bnb = exact::solve_bnb(inst);
        CHECK(bnb.status == reference.status);
        if (reference.status == exact::SolveStatus::Optimal) {
            CHECK(bnb.cost == reference.cost);
            CHECK(model::is_feasible(inst, bnb.assignment));
            CHECK(model::total_cost(inst, bnb.assignment) == doctest::Approx(bnb.cost).epsilon(1e-12));
        } else {
            ++infeasible_seen;
        }
    }
    CHECK(infeasible_seen > 0);  // the mix should exercise the infeasible path
}

TEST_CASE("uncapacitated optimum is the sum of per-user minima") {
    rng::Engine eng(77);
    for (int trial = 0; trial < 20; ++trial) {
        auto inst = testing::random_instance(eng, 7, 4);
        // Lift every capacity to the total demand so nothing binds.
        double total_demand = 0.0;
        for (const auto& row : inst.demand) {
            total_demand += static_cast<double>(*std::max_element(row.begin(), row.end()));
        }
        for (auto& s : inst.stations) {
            s.capacity = total_demand;
        }
        const auto costs = model::CostTable::build(inst);
        double greedy = 0.0;
        for (std::size_t u = 0; u < inst.num_users(); ++u) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < inst.num_stations(); ++i) {
                best = std::min(best, costs.cost(u, i));
            }
            greedy += best;
        }
        const auto solved = exact::solve_bnb(inst);
        REQUIRE(solved.status == exact::SolveStatus::Optimal);
        CHECK(solved.cost == doctest::Approx(greedy).epsilon(1e-12));
    }
}

TEST_CASE("lower bound is admissible for feasible completions") {
    rng::Engine eng(31337);
    int checked = 0;
    while (checked < 40) {
        const auto inst = testing::random_instance(eng, 6, 3);
        if (inst.num_users() < 2) {
            continue;
        }
        const auto costs = model::CostTable::build(inst);
        const std::size_t depth = rng::uniform_index(eng, inst.num_users());
        std::vector<int> prefix(depth);
        std::vector<int> load(inst.num_stations(), 0);
        bool prefix_ok = true;
        double partial = 0.0;
        for (std::size_t u = 0; u < depth; ++u) {
            prefix[u] = static_cast<int>(rng::uniform_index(eng, inst.num_stations()));
            const auto i = static_cast<std::size_t>(prefix[u]);
            load[i] += inst.demand[u][i];
            if (static_cast<double>(load[i]) > inst.stations[i].capacity) {
                prefix_ok = false;
                break;
            }
            partial += costs.cost(u, i);
        }
        if (!prefix_ok) {
            continue;
        }
        // The branch-and-bound bound: partial plus capacity-ignoring minima.
        double bound = partial;
        for (std::size_t u = depth; u < inst.num_users(); ++u) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < inst.num_stations(); ++i) {
                best = std::min(best, costs.cost(u, i));
            }
            bound += best;
        }
        const double completion = best_completion_cost(inst, costs, prefix);
        if (std::isinf(completion)) {
            continue;  // prefix admits no feasible completion
        }
        CHECK(bound <= completion + 1e-9);
        ++checked;
    }
}

TEST_CASE("relaxing capacities never increases the optimum") {
    rng::Engine eng(4096);
    int compared = 0;
    while (compared < 30) {
        auto inst = testing::random_instance(eng);
        const auto tight = exact::solve_bnb(inst);
        if (tight.status != exact::SolveStatus::Optimal) {
            continue;
        }
        auto relaxed = inst;
        for (auto& s : relaxed.stations) {
            s.capacity = 1e12;
        }
        const auto loose = exact::solve_bnb(relaxed);
        REQUIRE(loose.status == exact::SolveStatus::Optimal);
        CHECK(loose.cost <= tight.cost + 1e-9);
        ++compared;
    }
}

TEST_CASE("time limit returns the incumbent as TimedOut") {
    // Two colocated stations with a capacity split that forces a huge
    // search: the bound never tightens, so exhausting C(40, 20)-style
    // prefixes is hopeless within 1 ms.
    std::vector<model::User> users;
    model::DemandMatrix demand;
    for (int u = 0; u < 40; ++u) {
        users.push_back(user(u, 0.0, 0.0));
        demand.push_back({10, 10});
    }
    const auto inst = make_instance(std::move(users),
                                    {station(0, 0.0, 0.0, 500.0, 200.0, 0.0),
                                     station(1, 0.0, 0.0, 500.0, 1e9, 1.0)},
                                    std::move(demand));
    exact::BnbOptions opts;
    opts.time_limit = std::chrono::milliseconds(1);
    const auto result = exact::solve_bnb(inst, opts);
    CHECK(result.status == exact::SolveStatus::TimedOut);
    CHECK(result.cost < std::numeric_limits<double>::infinity());
    CHECK(model::is_feasible(inst, result.assignment));
}

TEST_SUITE_END();
