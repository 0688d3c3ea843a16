#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "uassoc/model.hpp"

namespace uassoc::instgen {

// Benchmark families: A has comfortable station capacities, B scales them by
// 0.7, Bprime is B with much larger user counts.
enum class InstanceType { A, B, Bprime };

const char* to_string(InstanceType type);
InstanceType instance_type_from_string(const std::string& s);

struct InstanceSpec {
    InstanceType type = InstanceType::A;
    std::size_t num_users = 0;
    std::size_t num_stations = 0;
    std::uint64_t seed = 0;
    std::pair<int, int> demand_range{5, 25};          // inclusive
    std::pair<double, double> handover_range{0.0, 1.0};

    /// Throws std::invalid_argument unless num_users >= num_stations >= 2 and
    /// 1 <= demand min <= demand max.
    void validate() const;

    std::string label() const;  // e.g. "A-100x5"

    friend bool operator==(const InstanceSpec&, const InstanceSpec&) = default;
};

// Side of the square region nodes are placed in, and the default station
// radius, both in meters.
inline constexpr double kRegionSide = 2000.0;
inline constexpr double kDefaultRadius = 500.0;

/// |U| x |N| integers drawn uniformly (inclusive) from the demand range.
/// Deterministic per spec.seed; independent of the other gen_* streams.
model::DemandMatrix gen_demands(const InstanceSpec& spec);

/// Sum over users of the row maximum demand.
double l_max(const model::DemandMatrix& demand);

/// Identical capacity for every station:
///   Type A:       0.6 * (|U| / |N|) * 15 + 0.4 * l_max
///   Type B, B':   0.7 * (Type A value)
std::vector<double> capacities(const InstanceSpec& spec, const model::DemandMatrix& demand);

/// |N| x |N| matrix, zero diagonal, off-diagonal entries uniform in the
/// handover range. Deterministic per spec.seed.
model::HandoverMatrix gen_handover_matrix(const InstanceSpec& spec);

/// Necessary capacity condition: sum of capacities covers the sum of each
/// user's cheapest demand. Not sufficient for feasibility, but cheap.
bool feasibility_plausible(const model::Instance& inst);

/// Assembles a full instance: demands, type-scaled capacities, handover
/// matrix and uniform node positions in the 2000 m region. Re-rolls the
/// derived random stream up to 10 times if the plausibility check fails,
/// then throws.
model::Instance gen_instance(const InstanceSpec& spec);

/// The 18 benchmark shapes: types A and B over {100,200} users x {5,10,20}
/// stations, Bprime over {1200,1500} x {5,10,20}. Seeds are base_seed plus
/// the ordinal position, so any single instance can be regenerated alone.
std::vector<InstanceSpec> standard_suite_specs(std::uint64_t base_seed);
std::vector<model::Instance> standard_suite(std::uint64_t base_seed);

}  // namespace uassoc::instgen
