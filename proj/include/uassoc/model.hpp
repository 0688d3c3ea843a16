#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace uassoc::model {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Vec2&, const Vec2&) = default;
};

/// Euclidean distance in meters.
double distance(const Vec2& a, const Vec2& b);

struct BaseStation {
    int id = 0;
    Vec2 pos;
    double radius = 500.0;      // R_i, meters
    double capacity = 0.0;      // L_i, bandwidth units
    double avg_handover = 0.0;  // hbar_i; ignored when the instance carries a handover matrix
    friend bool operator==(const BaseStation&, const BaseStation&) = default;
};

struct User {
    int id = 0;
    Vec2 pos;
    friend bool operator==(const User&, const User&) = default;
};

double distance(const User& u, const BaseStation& s);

// Linear RSRQ scale: theta_max at d = 0 down to theta_min at d = radius.
struct RsrqParams {
    double theta_min = -12.0;
    double theta_max = -5.0;
    friend bool operator==(const RsrqParams&, const RsrqParams&) = default;
};

// Magnitude scores a pair as hbar_i + |theta|, so minimization prefers strong
// signal; Raw keeps the literal hbar_i + theta, which prefers weak signal and
// exists for side-by-side comparison only.
enum class CostMode { Magnitude, Raw };

enum class SignalLevel { Excellent, Good, Fair, Poor };

const char* to_string(SignalLevel level);
const char* to_string(CostMode mode);

using DemandMatrix = std::vector<std::vector<int>>;      // demand[k][i] = l_ki, > 0
using HandoverMatrix = std::vector<std::vector<double>>; // h_ij, diagonal ignored

/// Full association problem: users, stations, per-pair bandwidth demands and
/// the cost parameters. The per-station handover frequency hbar_i comes from
/// exactly one source: either the handover matrix (row averages) or the
/// stations' own avg_handover fields.
struct Instance {
    std::vector<User> users;
    std::vector<BaseStation> stations;
    DemandMatrix demand;
    std::optional<HandoverMatrix> handover;
    RsrqParams rsrq_params;
    CostMode cost_mode = CostMode::Magnitude;

    std::size_t num_users() const { return users.size(); }
    std::size_t num_stations() const { return stations.size(); }

    /// hbar_i: matrix row average when the matrix is present, else the
    /// station field.
    double station_hbar(std::size_t station) const;

    /// Throws std::invalid_argument on any broken invariant (dimension
    /// mismatches, non-positive demands, bad RSRQ interval, conflicting
    /// handover sources, ...).
    void validate() const;

    friend bool operator==(const Instance&, const Instance&) = default;
};

/// Dense assignment: one station index per user, plus the cached per-station
/// load. Feasible assignments keep load[i] <= capacity of station i.
struct Assignment {
    std::vector<int> station_of;
    std::vector<int> load;

    static Assignment from_stations(const Instance& inst, std::vector<int> station_of);

    /// Moves one user to another station, keeping the load cache consistent.
    void apply_insert(const Instance& inst, std::size_t user, int to_station);
    /// Exchanges the stations of two users, keeping the load cache consistent.
    void apply_swap(const Instance& inst, std::size_t u, std::size_t v);

    std::vector<int> recompute_load(const Instance& inst) const;

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// RSRQ in dB at distance d from a station with the given radius:
///   -[ (d / radius) * (|theta_min| - |theta_max|) + |theta_max| ]
/// theta_max at d = 0, theta_min at d = radius, and a linear extrapolation
/// below theta_min beyond the radius. Throws std::invalid_argument when
/// radius <= 0 or d < 0.
double rsrq(double d, double radius, double theta_min = -12.0, double theta_max = -5.0);

/// Four-level quality bucket with exact thresholds at -5, -9 and -12 dB:
/// Excellent >= -5, Good in [-9, -5), Fair in [-12, -9), Poor < -12.
SignalLevel classify_rsrq(double theta);

/// Row average of the handover matrix excluding the diagonal:
///   sum_{j != i} h[i][j] / (n - 1).
/// Throws std::invalid_argument for matrices smaller than 2x2.
double avg_handover(const HandoverMatrix& h, std::size_t station);

/// Cost of associating one user with one station under the instance's cost
/// mode. Pure; O(|N|) when hbar must be derived from the handover matrix
/// (search code uses CostTable instead).
double pair_cost(const Instance& inst, std::size_t user, std::size_t station);

/// Objective value of an assignment; does not require feasibility.
double total_cost(const Instance& inst, const Assignment& a);

struct CapacityViolation {
    int station = 0;
    int load = 0;
    double capacity = 0.0;
};

/// Capacity check with loads recomputed from scratch (the cache is not
/// trusted here). Empty result means feasible.
std::vector<CapacityViolation> check_feasibility(const Instance& inst, const Assignment& a);

bool is_feasible(const Instance& inst, const Assignment& a);

/// Flat |U| x |N| cache of pair costs plus per-station hbar. This is the O(1)
/// evaluation structure behind delta evaluation in every solver.
class CostTable {
public:
    static CostTable build(const Instance& inst);

    double cost(std::size_t user, std::size_t station) const {
        return costs_[user * num_stations_ + station];
    }
    const double* row(std::size_t user) const { return costs_.data() + user * num_stations_; }
    double hbar(std::size_t station) const { return hbar_[station]; }
    std::size_t num_users() const { return num_users_; }
    std::size_t num_stations() const { return num_stations_; }

private:
    std::size_t num_users_ = 0;
    std::size_t num_stations_ = 0;
    std::vector<double> costs_;
    std::vector<double> hbar_;
};

}  // namespace uassoc::model
