#include "uassoc/instgen.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "uassoc/rng.hpp"

namespace uassoc::instgen {
namespace {

// Stream tags so that gen_demands / gen_handover_matrix / positions each see
// the same substream whether called standalone or from gen_instance.
constexpr std::uint64_t kDemandStream = 1;
constexpr std::uint64_t kHandoverStream = 2;
constexpr std::uint64_t kPositionStream = 3;
constexpr std::uint64_t kRerollStream = 4;

rng::Engine stream_engine(std::uint64_t seed, std::uint64_t tag) {
    return rng::Engine(rng::derive_seed(seed, tag));
}

}  // namespace

const char* to_string(InstanceType type) {
    switch (type) {
        case InstanceType::A: return "A";
        case InstanceType::B: return "B";
        case InstanceType::Bprime: return "Bprime";
    }
    return "?";
}

InstanceType instance_type_from_string(const std::string& s) {
    if (s == "A" || s == "a") return InstanceType::A;
    if (s == "B" || s == "b") return InstanceType::B;
    if (s == "Bprime" || s == "bprime" || s == "B'") return InstanceType::Bprime;
    throw std::invalid_argument("unknown instance type: " + s);
}

void InstanceSpec::validate() const {
    if (num_stations < 2) {
        throw std::invalid_argument("instance spec: need at least 2 stations");
    }
    if (num_users < num_stations) {
        throw std::invalid_argument("instance spec: need num_users >= num_stations");
    }
    if (demand_range.first < 1 || demand_range.second < demand_range.first) {
        throw std::invalid_argument("instance spec: demand range must satisfy 1 <= min <= max");
    }
    if (handover_range.second < handover_range.first || handover_range.first < 0.0) {
        throw std::invalid_argument("instance spec: handover range must satisfy 0 <= min <= max");
    }
}

std::string InstanceSpec::label() const {
    return std::string(to_string(type)) + "-" + std::to_string(num_users) + "x" +
           std::to_string(num_stations);
}

model::DemandMatrix gen_demands(const InstanceSpec& spec) {
    spec.validate();
    rng::Engine eng = stream_engine(spec.seed, kDemandStream);
    model::DemandMatrix demand(spec.num_users, std::vector<int>(spec.num_stations));
    for (auto& row : demand) {
        for (auto& entry : row) {
            entry = rng::uniform_int(eng, spec.demand_range.first, spec.demand_range.second);
        }
    }
    return demand;
}

double l_max(const model::DemandMatrix& demand) {
    if (demand.empty()) {
        throw std::invalid_argument("l_max: empty demand matrix");
    }
    double sum = 0.0;
    for (const auto& row : demand) {
        sum += static_cast<double>(*std::max_element(row.begin(), row.end()));
    }
    return sum;
}

std::vector<double> capacities(const InstanceSpec& spec, const model::DemandMatrix& demand) {
    spec.validate();
    if (demand.size() != spec.num_users) {
        throw std::invalid_argument("capacities: demand matrix does not match spec");
    }
    const double ratio = static_cast<double>(spec.num_users) / static_cast<double>(spec.num_stations);
    double capacity = 0.6 * ratio * 15.0 + 0.4 * l_max(demand);
    if (spec.type != InstanceType::A) {
        capacity *= 0.7;
    }
    return std::vector<double>(spec.num_stations, capacity);
}

model::HandoverMatrix gen_handover_matrix(const InstanceSpec& spec) {
    spec.validate();
    rng::Engine eng = stream_engine(spec.seed, kHandoverStream);
    model::HandoverMatrix h(spec.num_stations, std::vector<double>(spec.num_stations, 0.0));
    for (std::size_t i = 0; i < spec.num_stations; ++i) {
        for (std::size_t j = 0; j < spec.num_stations; ++j) {
            if (i != j) {
                h[i][j] = rng::uniform_real(eng, spec.handover_range.first,
                                            spec.handover_range.second);
            }
        }
    }
    return h;
}

bool feasibility_plausible(const model::Instance& inst) {
    double capacity_sum = 0.0;
    for (const auto& s : inst.stations) {
        capacity_sum += s.capacity;
    }
    double min_demand_sum = 0.0;
    for (const auto& row : inst.demand) {
        min_demand_sum += static_cast<double>(*std::min_element(row.begin(), row.end()));
    }
    return capacity_sum >= min_demand_sum;
}

namespace {

model::Instance assemble(const InstanceSpec& spec) {
    model::Instance inst;
    inst.demand = gen_demands(spec);
    const std::vector<double> caps = capacities(spec, inst.demand);
    inst.handover = gen_handover_matrix(spec);

    rng::Engine pos_eng = stream_engine(spec.seed, kPositionStream);
    inst.users.resize(spec.num_users);
    for (std::size_t k = 0; k < spec.num_users; ++k) {
        inst.users[k].id = static_cast<int>(k);
        inst.users[k].pos.x = rng::uniform_real(pos_eng, 0.0, kRegionSide);
        inst.users[k].pos.y = rng::uniform_real(pos_eng, 0.0, kRegionSide);
    }
    inst.stations.resize(spec.num_stations);
    for (std::size_t i = 0; i < spec.num_stations; ++i) {
        inst.stations[i].id = static_cast<int>(i);
        inst.stations[i].pos.x = rng::uniform_real(pos_eng, 0.0, kRegionSide);
        inst.stations[i].pos.y = rng::uniform_real(pos_eng, 0.0, kRegionSide);
        inst.stations[i].radius = kDefaultRadius;
        inst.stations[i].capacity = caps[i];
        inst.stations[i].avg_handover = 0.0;
    }
    return inst;
}

}  // namespace

model::Instance gen_instance(const InstanceSpec& spec) {
    spec.validate();
    constexpr int kMaxRolls = 10;
    for (int attempt = 0; attempt < kMaxRolls; ++attempt) {
        InstanceSpec rolled = spec;
        if (attempt > 0) {
            rolled.seed = rng::derive_seed(spec.seed, kRerollStream + static_cast<std::uint64_t>(attempt));
        }
        model::Instance inst = assemble(rolled);
        if (feasibility_plausible(inst)) {
            inst.validate();
            return inst;
        }
    }
    throw std::runtime_error("gen_instance: no feasibility-plausible instance after 10 rolls for " +
                             spec.label());
}

std::vector<InstanceSpec> standard_suite_specs(std::uint64_t base_seed) {
    static constexpr std::size_t kStations[3] = {5, 10, 20};
    std::vector<InstanceSpec> specs;
    specs.reserve(18);
    std::uint64_t ordinal = 0;
    const auto push = [&](InstanceType type, std::size_t users, std::size_t stations) {
        InstanceSpec spec;
        spec.type = type;
        spec.num_users = users;
        spec.num_stations = stations;
        spec.seed = base_seed + ordinal++;
        specs.push_back(spec);
    };
    for (InstanceType type : {InstanceType::A, InstanceType::B}) {
        for (std::size_t users : {100, 200}) {
            for (std::size_t stations : kStations) {
                push(type, users, stations);
            }
        }
    }
    for (std::size_t users : {1200, 1500}) {
        for (std::size_t stations : kStations) {
            push(InstanceType::Bprime, users, stations);
        }
    }
    return specs;
}

std::vector<model::Instance> standard_suite(std::uint64_t base_seed) {
    std::vector<model::Instance> instances;
    instances.reserve(18);
    for (const auto& spec : standard_suite_specs(base_seed)) {
        instances.push_back(gen_instance(spec));
    }
    return instances;
}

}  // namespace uassoc::instgen
