#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "uassoc/model.hpp"

namespace uassoc::mobility {

struct RoutePoint {
    double t = 0.0;  // seconds (or step index); strictly increasing along a trace
    model::Vec2 pos;
    friend bool operator==(const RoutePoint&, const RoutePoint&) = default;
};

using RouteTrace = std::vector<RoutePoint>;

enum class Strategy { IlsVnd, Exact, PredictBaseline };

const char* to_string(Strategy strategy);
Strategy strategy_from_string(const std::string& s);

/// Extra stationary users that ils/exact strategies associate jointly with
/// the tracked vehicle (their bandwidth competes for station capacity).
struct BackgroundUe {
    model::Vec2 pos;
    int demand = 1;
};

struct Scenario {
    std::vector<model::BaseStation> stations;
    RouteTrace route;
    double region_w = 0.0;
    double region_h = 0.0;
    model::RsrqParams rsrq_params;
    int ue_demand = 1;  // tracked vehicle's bandwidth requirement
    Strategy strategy = Strategy::IlsVnd;
    model::CostMode cost_mode = model::CostMode::Magnitude;
    std::vector<BackgroundUe> background;
    std::uint64_t ils_iteration_budget = 200;  // per-step re-solve budget

    void validate() const;
};

struct HandoverEvent {
    std::size_t step = 0;
    int from_station = 0;
    int to_station = 0;
    friend bool operator==(const HandoverEvent&, const HandoverEvent&) = default;
};

struct SimResult {
    std::vector<int> serving;          // station index per route step
    std::vector<double> rsrq_series;   // dB to the serving station per step
    std::vector<HandoverEvent> handovers;
    std::vector<double> shares;        // fraction of steps per station, sums to 1
};

/// Replays the route one location per step. Step 0 connects to the
/// strategy's preferred station; afterwards the vehicle hands over only when
/// the strategy strictly prefers another station at the new position (ties
/// keep the current one). Deterministic for a fixed (scenario, seed).
SimResult simulate(const Scenario& sc, std::uint64_t seed);

/// Route-prediction baseline score for one station at one step:
///   RSRQ + factor_direction + factor_distratio
/// factor_direction is 1 when the distance to the station strictly decreased
/// since the previous position (0 at step 0); factor_distratio is the
/// fraction of route points from this step onward that lie within the
/// station's radius. Higher is better.
double predict_score(const Scenario& sc, std::size_t step, std::size_t station,
                     const std::optional<model::Vec2>& prev_pos);

/// Fraction of steps served by each station; sums to 1.
std::vector<double> connection_shares(const SimResult& result, std::size_t num_stations);

struct PlacementComparison {
    std::size_t instance = 0;
    double mean_rsrq_ils = 0.0;
    double mean_rsrq_predict = 0.0;
};

/// Re-places the template's stations uniformly at random in the region
/// n_instances times (same route, same per-station radius/capacity/handover)
/// and replays the route under both the ILS strategy and the prediction
/// baseline, recording each run's mean RSRQ. Deterministic per seed.
std::vector<PlacementComparison> random_placement_experiment(std::size_t n_instances,
                                                             const Scenario& templ,
                                                             std::uint64_t seed);

enum class FcdErrorKind { MalformedXml, VehicleNotFound, NonMonotonicTime };

struct FcdError : std::runtime_error {
    FcdErrorKind kind;
    FcdError(FcdErrorKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

/// Extracts the (time, x, y) trace of one vehicle from floating-car-data XML
/// (timestep elements wrapping vehicle elements with id/x/y attributes).
/// Throws FcdError with a distinct kind for syntax problems, an absent
/// vehicle id, and non-increasing timestamps.
RouteTrace ingest_fcd(const std::string& xml_text, const std::string& vehicle_id);

}  // namespace uassoc::mobility
