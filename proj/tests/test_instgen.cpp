#include <algorithm>
#include <stdexcept>

#include <doctest.h>

#include "uassoc/exact.hpp"
#include "uassoc/instgen.hpp"
#include "uassoc/model.hpp"

using namespace uassoc;

namespace {

instgen::InstanceSpec spec_of(instgen::InstanceType type, std::size_t users, std::size_t stations,
                              std::uint64_t seed) {
    instgen::InstanceSpec spec;
    spec.type = type;
    spec.num_users = users;
    spec.num_stations = stations;
    spec.seed = seed;
    return spec;
}

}  // namespace

TEST_SUITE_BEGIN("instgen");

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(spec_of(instgen::InstanceType::A, 10, 1, 0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(spec_of(instgen::InstanceType::A, 3, 5, 0).validate(), std::invalid_argument);
    auto bad_demand = spec_of(instgen::InstanceType::A, 10, 5, 0);
    bad_demand.demand_range = {0, 10};
    CHECK_THROWS_AS(bad_demand.validate(), std::invalid_argument);
    CHECK_NOTHROW(spec_of(instgen::InstanceType::A, 5, 5, 0).validate());
}

TEST_CASE("demands are integers in the inclusive range") {
    auto spec = spec_of(instgen::InstanceType::A, 40, 6, 99);
    const auto demand = instgen::gen_demands(spec);
    REQUIRE(demand.size() == 40);
    for (const auto& row : demand) {
        REQUIRE(row.size() == 6);
        for (const int l : row) {
            CHECK(l >= 5);
            CHECK(l <= 25);
        }
    }
    CHECK(instgen::gen_demands(spec) == demand);  // same seed, same matrix

    spec.demand_range = {7, 7};
    for (const auto& row : instgen::gen_demands(spec)) {
        for (const int l : row) {
            CHECK(l == 7);
        }
    }
}

TEST_CASE("l_max sums row maxima") {
    CHECK(instgen::l_max({{5, 10}, {20, 15}}) == 30.0);
    CHECK(instgen::l_max(model::DemandMatrix(100, std::vector<int>(4, 25))) == 2500.0);
    CHECK(instgen::l_max({{13}}) == 13.0);
    CHECK_THROWS_AS(instgen::l_max({}), std::invalid_argument);
}

TEST_CASE("capacities follow the type formulas") {
    // Constant demands force l_max, so the capacity value is fully pinned.
    const model::DemandMatrix all25(100, std::vector<int>(5, 25));
    auto spec_a = spec_of(instgen::InstanceType::A, 100, 5, 0);
    const auto caps_a = instgen::capacities(spec_a, all25);
    REQUIRE(caps_a.size() == 5);
    for (const double c : caps_a) {
        CHECK(c == 1180.0);  // 0.6 * 20 * 15 + 0.4 * 2500
    }
    auto spec_b = spec_a;
    spec_b.type = instgen::InstanceType::B;
    for (const double c : instgen::capacities(spec_b, all25)) {
        CHECK(c == doctest::Approx(826.0).epsilon(1e-15));
    }

    const model::DemandMatrix all5(200, std::vector<int>(20, 5));
    auto spec_wide = spec_of(instgen::InstanceType::A, 200, 20, 0);
    for (const double c : instgen::capacities(spec_wide, all5)) {
        CHECK(c == 490.0);  // 0.6 * 10 * 15 + 0.4 * 1000
    }
}

TEST_CASE("type B capacity is exactly 0.7 of type A") {
    for (const std::uint64_t seed : {1ULL, 5ULL, 77ULL}) {
        auto a = spec_of(instgen::InstanceType::A, 60, 6, seed);
        auto b = a;
        b.type = instgen::InstanceType::B;
        const auto demand = instgen::gen_demands(a);
        const auto caps_a = instgen::capacities(a, demand);
        const auto caps_b = instgen::capacities(b, demand);
        for (std::size_t i = 0; i < caps_a.size(); ++i) {
            CHECK(caps_b[i] == 0.7 * caps_a[i]);
        }
    }
}

TEST_CASE("handover matrix shape and determinism") {
    auto spec = spec_of(instgen::InstanceType::A, 10, 4, 123);
    const auto h = instgen::gen_handover_matrix(spec);
    REQUIRE(h.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        REQUIRE(h[i].size() == 4);
        CHECK(h[i][i] == 0.0);
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(h[i][j] >= 0.0);
            CHECK(h[i][j] <= 1.0);
        }
    }
    CHECK(instgen::gen_handover_matrix(spec) == h);

    spec.handover_range = {0.0, 0.0};
    for (const auto& row : instgen::gen_handover_matrix(spec)) {
        for (const double v : row) {
            CHECK(v == 0.0);
        }
    }
}

TEST_CASE("gen_instance assembles a valid deterministic instance") {
    auto spec = spec_of(instgen::InstanceType::A, 100, 5, 4242);
    const auto inst = instgen::gen_instance(spec);
    CHECK(inst.num_users() == 100);
    CHECK(inst.num_stations() == 5);
    CHECK_NOTHROW(inst.validate());
    CHECK(inst.handover.has_value());
    for (const auto& u : inst.users) {
        CHECK(u.pos.x >= 0.0);
        CHECK(u.pos.x <= instgen::kRegionSide);
        CHECK(u.pos.y >= 0.0);
        CHECK(u.pos.y <= instgen::kRegionSide);
    }
    for (const auto& s : inst.stations) {
        CHECK(s.radius == instgen::kDefaultRadius);
        // Table II shapes keep every single demand far below the capacity.
        for (const auto& row : inst.demand) {
            CHECK(static_cast<double>(*std::max_element(row.begin(), row.end())) <= s.capacity);
        }
    }
    CHECK(instgen::gen_instance(spec) == inst);
    CHECK(instgen::feasibility_plausible(inst));

    auto bprime = spec_of(instgen::InstanceType::Bprime, 1500, 20, 7);
    const auto big = instgen::gen_instance(bprime);
    CHECK(big.num_users() == 1500);
    CHECK(big.num_stations() == 20);
    CHECK_NOTHROW(big.validate());
}

TEST_CASE("small generated instances admit a feasible assignment") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        for (const auto type : {instgen::InstanceType::A, instgen::InstanceType::B}) {
            const auto inst = instgen::gen_instance(spec_of(type, 7, 3, 1000 + seed));
            const auto solved = exact::solve_bruteforce(inst);
            CHECK(solved.status == exact::SolveStatus::Optimal);
        }
    }
}

TEST_CASE("standard suite covers the 18 benchmark shapes") {
    const auto specs = instgen::standard_suite_specs(50);
    REQUIRE(specs.size() == 18);
    CHECK(specs[3].type == instgen::InstanceType::A);
    CHECK(specs[3].num_users == 200);
    CHECK(specs[3].num_stations == 5);
    CHECK(specs[14].type == instgen::InstanceType::Bprime);
    CHECK(specs[14].num_users == 1200);
    CHECK(specs[14].num_stations == 20);
    for (std::size_t i = 0; i < specs.size(); ++i) {
        CHECK(specs[i].seed == 50 + i);
    }
    int a_count = 0;
    int b_count = 0;
    int bprime_count = 0;
    for (const auto& s : specs) {
        switch (s.type) {
            case instgen::InstanceType::A: ++a_count; break;
            case instgen::InstanceType::B: ++b_count; break;
            case instgen::InstanceType::Bprime: ++bprime_count; break;
        }
    }
    CHECK(a_count == 6);
    CHECK(b_count == 6);
    CHECK(bprime_count == 6);
}

TEST_SUITE_END();
