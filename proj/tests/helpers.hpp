#pragma once

#include <algorithm>
#include <vector>

#include "uassoc/model.hpp"
#include "uassoc/rng.hpp"

namespace uassoc::testing {

inline model::BaseStation station(int id, double x, double y, double radius, double capacity,
                                  double avg_handover = 0.0) {
    model::BaseStation s;
    s.id = id;
    s.pos = {x, y};
    s.radius = radius;
    s.capacity = capacity;
    s.avg_handover = avg_handover;
    return s;
}

inline model::User user(int id, double x, double y) {
    return model::User{id, {x, y}};
}

inline model::Instance make_instance(std::vector<model::User> users,
                                     std::vector<model::BaseStation> stations,
                                     model::DemandMatrix demand,
                                     model::CostMode mode = model::CostMode::Magnitude) {
    model::Instance inst;
    inst.users = std::move(users);
    inst.stations = std::move(stations);
    inst.demand = std::move(demand);
    inst.cost_mode = mode;
    inst.validate();
    return inst;
}

/// Two colocated stations whose costs at the user position differ only via
/// avg_handover, so pair costs are exact: 5 + h.
inline model::Instance colocated_pair(double h0, double h1, double cap0 = 1e9, double cap1 = 1e9) {
    return make_instance({user(0, 0.0, 0.0)},
                         {station(0, 0.0, 0.0, 500.0, cap0, h0),
                          station(1, 0.0, 0.0, 500.0, cap1, h1)},
                         {{10, 10}});
}

/// Random small instance for oracle cross-checks. Capacity tightness is
/// drawn too, so the mix contains loose, tight and some infeasible cases.
inline model::Instance random_instance(rng::Engine& eng, std::size_t max_users = 8,
                                       std::size_t max_stations = 4) {
    const std::size_t k = 1 + rng::uniform_index(eng, max_users);
    const std::size_t n = 1 + rng::uniform_index(eng, max_stations);

    std::vector<model::User> users;
    for (std::size_t u = 0; u < k; ++u) {
        users.push_back(user(static_cast<int>(u), rng::uniform_real(eng, 0.0, 2000.0),
                             rng::uniform_real(eng, 0.0, 2000.0)));
    }
    model::DemandMatrix demand(k, std::vector<int>(n));
    double max_demand_sum = 0.0;
    for (auto& row : demand) {
        for (auto& entry : row) {
            entry = rng::uniform_int(eng, 5, 25);
        }
        max_demand_sum += *std::max_element(row.begin(), row.end());
    }
    std::vector<model::BaseStation> stations;
    for (std::size_t i = 0; i < n; ++i) {
        const double tightness = rng::uniform_real(eng, 0.4, 1.6);
        stations.push_back(station(static_cast<int>(i), rng::uniform_real(eng, 0.0, 2000.0),
                                   rng::uniform_real(eng, 0.0, 2000.0), 500.0,
                                   tightness * max_demand_sum / static_cast<double>(n),
                                   rng::uniform_real(eng, 0.0, 1.0)));
    }
    const bool raw = rng::uniform_index(eng, 10) == 0;
    return make_instance(std::move(users), std::move(stations), std::move(demand),
                         raw ? model::CostMode::Raw : model::CostMode::Magnitude);
}

}  // namespace uassoc::testing
