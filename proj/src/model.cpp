#include "uassoc/model.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace uassoc::model {

double distance(const Vec2& a, const Vec2& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

double distance(const User& u, const BaseStation& s) {
    return distance(u.pos, s.pos);
}

const char* to_string(SignalLevel level) {
    switch (level) {
        case SignalLevel::Excellent: return "Excellent";
        case SignalLevel::Good: return "Good";
        case SignalLevel::Fair: return "Fair";
        case SignalLevel::Poor: return "Poor";
    }
    return "?";
}

const char* to_string(CostMode mode) {
    return mode == CostMode::Magnitude ? "magnitude" : "raw";
}

double rsrq(double d, double radius, double theta_min, double theta_max) {
    if (radius <= 0.0) {
        throw std::invalid_argument("rsrq: radius must be > 0");
    }
    if (d < 0.0) {
        throw std::invalid_argument("rsrq: distance must be >= 0");
    }
    assert(theta_min < theta_max && theta_max < 0.0);
    const double span = std::abs(theta_min) - std::abs(theta_max);
    return -((d / radius) * span + std::abs(theta_max));
}

SignalLevel classify_rsrq(double theta) {
    if (theta >= -5.0) return SignalLevel::Excellent;
    if (theta >= -9.0) return SignalLevel::Good;
    if (theta >= -12.0) return SignalLevel::Fair;
    return SignalLevel::Poor;
}

double avg_handover(const HandoverMatrix& h, std::size_t station) {
    const std::size_t n = h.size();
    if (n < 2) {
        throw std::invalid_argument("avg_handover: need at least 2 stations");
    }
    if (station >= n || h[station].size() != n) {
        throw std::invalid_argument("avg_handover: bad station index or ragged matrix");
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (j != station) {
            sum += h[station][j];
        }
    }
    return sum / static_cast<double>(n - 1);
}

double Instance::station_hbar(std::size_t station) const {
    if (handover.has_value()) {
        return avg_handover(*handover, station);
    }
    return stations.at(station).avg_handover;
}

void Instance::validate() const {
    const std::size_t k = users.size();
    const std::size_t n = stations.size();
    if (demand.size() != k) {
        throw std::invalid_argument("instance: demand must have one row per user");
    }
    for (const auto& row : demand) {
        if (row.size() != n) {
            throw std::invalid_argument("instance: demand row width must equal station count");
        }
        for (int l : row) {
            if (l <= 0) {
                throw std::invalid_argument("instance: every demand entry must be > 0");
            }
        }
    }
    if (!(rsrq_params.theta_min < rsrq_params.theta_max && rsrq_params.theta_max < 0.0)) {
        throw std::invalid_argument("instance: need theta_min < theta_max < 0");
    }
    std::unordered_set<int> station_ids;
    for (const auto& s : stations) {
        if (s.radius <= 0.0) throw std::invalid_argument("instance: station radius must be > 0");
        if (s.capacity < 0.0) throw std::invalid_argument("instance: station capacity must be >= 0");
        if (s.avg_handover < 0.0) throw std::invalid_argument("instance: avg_handover must be >= 0");
        if (!station_ids.insert(s.id).second) {
            throw std::invalid_argument("instance: duplicate station id");
        }
    }
    std::unordered_set<int> user_ids;
    for (const auto& u : users) {
        if (!user_ids.insert(u.id).second) {
            throw std::invalid_argument("instance: duplicate user id");
        }
    }
    if (handover.has_value()) {
        if (n < 2) {
            throw std::invalid_argument("instance: handover matrix needs at least 2 stations");
        }
        if (handover->size() != n) {
            throw std::invalid_argument("instance: handover matrix must be |N|x|N|");
        }
        for (const auto& row : *handover) {
            if (row.size() != n) {
                throw std::invalid_argument("instance: handover matrix must be |N|x|N|");
            }
            for (double v : row) {
                if (v < 0.0) {
                    throw std::invalid_argument("instance: handover entries must be >= 0");
                }
            }
        }
        for (const auto& s : stations) {
            if (s.avg_handover != 0.0) {
                throw std::invalid_argument(
                    "instance: handover matrix and station avg_handover are exclusive sources");
            }
        }
    }
}

Assignment Assignment::from_stations(const Instance& inst, std::vector<int> station_of) {
    if (station_of.size() != inst.num_users()) {
        throw std::invalid_argument("assignment: one station per user required");
    }
    Assignment a;
    a.station_of = std::move(station_of);
    a.load.assign(inst.num_stations(), 0);
    for (std::size_t k = 0; k < a.station_of.size(); ++k) {
        const int i = a.station_of[k];
        if (i < 0 || static_cast<std::size_t>(i) >= inst.num_stations()) {
            throw std::invalid_argument("assignment: station index out of range");
        }
        a.load[static_cast<std::size_t>(i)] += inst.demand[k][static_cast<std::size_t>(i)];
    }
    return a;
}

void Assignment::apply_insert(const Instance& inst, std::size_t user, int to_station) {
    const int from = station_of[user];
    load[static_cast<std::size_t>(from)] -= inst.demand[user][static_cast<std::size_t>(from)];
    load[static_cast<std::size_t>(to_station)] += inst.demand[user][static_cast<std::size_t>(to_station)];
    station_of[user] = to_station;
}

void Assignment::apply_swap(const Instance& inst, std::size_t u, std::size_t v) {
    const int su = station_of[u];
    const int sv = station_of[v];
    load[static_cast<std::size_t>(su)] += inst.demand[v][static_cast<std::size_t>(su)] -
                                          inst.demand[u][static_cast<std::size_t>(su)];
    load[static_cast<std::size_t>(sv)] += inst.demand[u][static_cast<std::size_t>(sv)] -
                                          inst.demand[v][static_cast<std::size_t>(sv)];
    station_of[u] = sv;
    station_of[v] = su;
}

std::vector<int> Assignment::recompute_load(const Instance& inst) const {
    std::vector<int> fresh(inst.num_stations(), 0);
    for (std::size_t k = 0; k < station_of.size(); ++k) {
        const auto i = static_cast<std::size_t>(station_of[k]);
        fresh[i] += inst.demand[k][i];
    }
    return fresh;
}

double pair_cost(const Instance& inst, std::size_t user, std::size_t station) {
    const double theta = rsrq(distance(inst.users[user], inst.stations[station]),
                              inst.stations[station].radius,
                              inst.rsrq_params.theta_min, inst.rsrq_params.theta_max);
    const double hbar = inst.station_hbar(station);
    return inst.cost_mode == CostMode::Magnitude ? hbar + std::abs(theta) : hbar + theta;
}

double total_cost(const Instance& inst, const Assignment& a) {
    assert(a.station_of.size() == inst.num_users());
    double sum = 0.0;
    for (std::size_t k = 0; k < a.station_of.size(); ++k) {
        sum += pair_cost(inst, k, static_cast<std::size_t>(a.station_of[k]));
    }
    return sum;
}

std::vector<CapacityViolation> check_feasibility(const Instance& inst, const Assignment& a) {
    const std::vector<int> load = a.recompute_load(inst);
    std::vector<CapacityViolation> violations;
    for (std::size_t i = 0; i < inst.num_stations(); ++i) {
        if (static_cast<double>(load[i]) > inst.stations[i].capacity) {
            violations.push_back({inst.stations[i].id, load[i], inst.stations[i].capacity});
        }
    }
    return violations;
}

bool is_feasible(const Instance& inst, const Assignment& a) {
    return check_feasibility(inst, a).empty();
}

CostTable CostTable::build(const Instance& inst) {
    CostTable t;
    t.num_users_ = inst.num_users();
    t.num_stations_ = inst.num_stations();
    t.hbar_.resize(t.num_stations_);
    for (std::size_t i = 0; i < t.num_stations_; ++i) {
        t.hbar_[i] = inst.station_hbar(i);
    }
    t.costs_.resize(t.num_users_ * t.num_stations_);
    for (std::size_t k = 0; k < t.num_users_; ++k) {
        for (std::size_t i = 0; i < t.num_stations_; ++i) {
            const double theta = rsrq(distance(inst.users[k], inst.stations[i]),
                                      inst.stations[i].radius,
                                      inst.rsrq_params.theta_min, inst.rsrq_params.theta_max);
            t.costs_[k * t.num_stations_ + i] =
                inst.cost_mode == CostMode::Magnitude ? t.hbar_[i] + std::abs(theta)
                                                      : t.hbar_[i] + theta;
        }
    }
    return t;
}

}  // namespace uassoc::model
