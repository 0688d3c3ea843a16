#include "uassoc/mobility.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <cstdlib>
#include <limits>
#include <unordered_set>

#include "uassoc/exact.hpp"
#include "uassoc/ils.hpp"
#include "uassoc/rng.hpp"

namespace uassoc::mobility {
namespace {

model::Instance step_instance(const Scenario& sc, const model::Vec2& ue_pos) {
    model::Instance inst;
    inst.stations = sc.stations;
    inst.rsrq_params = sc.rsrq_params;
    inst.cost_mode = sc.cost_mode;
    inst.users.reserve(1 + sc.background.size());
    inst.users.push_back({0, ue_pos});
    inst.demand.push_back(std::vector<int>(sc.stations.size(), sc.ue_demand));
    int next_id = 1;
    for (const auto& bg : sc.background) {
        inst.users.push_back({next_id++, bg.pos});
        inst.demand.push_back(std::vector<int>(sc.stations.size(), bg.demand));
    }
    return inst;
}

// Station the optimizing strategies propose for the tracked vehicle, plus the
// vehicle's pair costs at this position for the handover comparison.
struct StepChoice {
    int proposed = 0;
    std::vector<double> ue_cost;
};

StepChoice optimize_step(const Scenario& sc, const model::Vec2& pos, std::uint64_t step_seed) {
    const model::Instance inst = step_instance(sc, pos);
    StepChoice choice;
    choice.ue_cost.resize(sc.stations.size());
    for (std::size_t i = 0; i < sc.stations.size(); ++i) {
        choice.ue_cost[i] = model::pair_cost(inst, 0, i);
    }
    if (sc.strategy == Strategy::Exact) {
        const exact::SolveResult solved = exact::solve_bnb(inst);
        if (solved.status == exact::SolveStatus::Infeasible) {
            throw std::runtime_error("simulate: step association is infeasible");
        }
        choice.proposed = solved.assignment.station_of[0];
    } else {
        ils::IlsParams params;
        params.seed = step_seed;
        params.iteration_budget = sc.ils_iteration_budget;
        choice.proposed = ils::ils_solve(inst, params).best.station_of[0];
    }
    return choice;
}

// Count of route points from each step onward inside a station's radius,
// shared by the baseline scorer and the simulation loop.
std::vector<std::size_t> coverage_suffix(const Scenario& sc, std::size_t station) {
    const auto& st = sc.stations[station];
    std::vector<std::size_t> suffix(sc.route.size() + 1, 0);
    for (std::size_t s = sc.route.size(); s-- > 0;) {
        const bool inside = model::distance(sc.route[s].pos, st.pos) <= st.radius;
        suffix[s] = suffix[s + 1] + (inside ? 1 : 0);
    }
    return suffix;
}

double baseline_score(const Scenario& sc, std::size_t step, std::size_t station,
                      const std::optional<model::Vec2>& prev_pos, std::size_t covered_remaining) {
    const auto& st = sc.stations[station];
    const double d = model::distance(sc.route[step].pos, st.pos);
    const double theta = model::rsrq(d, st.radius, sc.rsrq_params.theta_min, sc.rsrq_params.theta_max);
    double direction = 0.0;
    if (prev_pos.has_value() && d < model::distance(*prev_pos, st.pos)) {
        direction = 1.0;
    }
    const double remaining = static_cast<double>(sc.route.size() - step);
    const double distratio = static_cast<double>(covered_remaining) / remaining;
    return theta + direction + distratio;
}

}  // namespace

const char* to_string(Strategy strategy) {
    switch (strategy) {
        case Strategy::IlsVnd: return "ils";
        case Strategy::Exact: return "exact";
        case Strategy::PredictBaseline: return "predict";
    }
    return "?";
}

Strategy strategy_from_string(const std::string& s) {
    if (s == "ils") return Strategy::IlsVnd;
    if (s == "exact") return Strategy::Exact;
    if (s == "predict") return Strategy::PredictBaseline;
    throw std::invalid_argument("unknown strategy: " + s);
}

void Scenario::validate() const {
    if (stations.empty()) {
        throw std::invalid_argument("scenario: need at least 1 station");
    }
    std::unordered_set<int> ids;
    for (const auto& st : stations) {
        if (st.radius <= 0.0) {
            throw std::invalid_argument("scenario: station radius must be > 0");
        }
        if (st.capacity < 0.0 || st.avg_handover < 0.0) {
            throw std::invalid_argument("scenario: station capacity and avg_handover must be >= 0");
        }
        if (!ids.insert(st.id).second) {
            throw std::invalid_argument("scenario: duplicate station id");
        }
    }
    if (route.empty()) {
        throw std::invalid_argument("scenario: route must be non-empty");
    }
    for (std::size_t s = 1; s < route.size(); ++s) {
        if (!(route[s].t > route[s - 1].t)) {
            throw std::invalid_argument("scenario: route times must be strictly increasing");
        }
    }
    if (ue_demand <= 0) {
        throw std::invalid_argument("scenario: ue_demand must be > 0");
    }
}

double predict_score(const Scenario& sc, std::size_t step, std::size_t station,
                     const std::optional<model::Vec2>& prev_pos) {
    const auto& st = sc.stations.at(station);
    std::size_t covered = 0;
    for (std::size_t s = step; s < sc.route.size(); ++s) {
        if (model::distance(sc.route[s].pos, st.pos) <= st.radius) {
            ++covered;
        }
    }
    return baseline_score(sc, step, station, prev_pos, covered);
}

SimResult simulate(const Scenario& sc, std::uint64_t seed) {
    sc.validate();
    const std::size_t steps = sc.route.size();
    const std::size_t n = sc.stations.size();

    std::vector<std::vector<std::size_t>> suffix;
    if (sc.strategy == Strategy::PredictBaseline) {
        suffix.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            suffix.push_back(coverage_suffix(sc, i));
        }
    }

    SimResult result;
    result.serving.reserve(steps);
    result.rsrq_series.reserve(steps);

    int serving = -1;
    std::optional<model::Vec2> prev_pos;
    for (std::size_t step = 0; step < steps; ++step) {
        const model::Vec2 pos = sc.route[step].pos;
        int next = serving;

        if (sc.strategy == Strategy::PredictBaseline) {
            std::size_t best = 0;
            double best_score = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < n; ++i) {
                const double score = baseline_score(sc, step, i, prev_pos, suffix[i][step]);
                if (score > best_score) {
                    best_score = score;
                    best = i;
                }
            }
            if (serving < 0) {
                next = static_cast<int>(best);
            } else if (best_score > baseline_score(sc, step, static_cast<std::size_t>(serving),
                                                   prev_pos,
                                                   suffix[static_cast<std::size_t>(serving)][step])) {
                next = static_cast<int>(best);
            }
        } else {
            const StepChoice choice =
                optimize_step(sc, pos, rng::derive_seed(seed, static_cast<std::uint64_t>(step)));
            if (serving < 0) {
                next = choice.proposed;
            } else if (choice.ue_cost[static_cast<std::size_t>(choice.proposed)] <
                       choice.ue_cost[static_cast<std::size_t>(serving)]) {
                next = choice.proposed;
            }
        }

        if (serving >= 0 && next != serving) {
            result.handovers.push_back({step, serving, next});
        }
        serving = next;
        result.serving.push_back(serving);
        const auto& st = sc.stations[static_cast<std::size_t>(serving)];
        result.rsrq_series.push_back(model::rsrq(model::distance(pos, st.pos), st.radius,
                                                 sc.rsrq_params.theta_min, sc.rsrq_params.theta_max));
        prev_pos = pos;
    }

    result.shares = connection_shares(result, n);
    return result;
}

std::vector<double> connection_shares(const SimResult& result, std::size_t num_stations) {
    std::vector<double> shares(num_stations, 0.0);
    for (const int s : result.serving) {
        shares.at(static_cast<std::size_t>(s)) += 1.0;
    }
    const auto total = static_cast<double>(result.serving.size());
    for (double& share : shares) {
        share /= total;
    }
    return shares;
}

std::vector<PlacementComparison> random_placement_experiment(std::size_t n_instances,
                                                             const Scenario& templ,
                                                             std::uint64_t seed) {
    if (n_instances < 1) {
        throw std::invalid_argument("random_placement_experiment: need n >= 1");
    }
    templ.validate();
    rng::Engine placement_eng(rng::derive_seed(seed, 0x706c6163));  // placement stream

    std::vector<PlacementComparison> rows;
    rows.reserve(n_instances);
    for (std::size_t idx = 0; idx < n_instances; ++idx) {
        Scenario sc = templ;
        for (auto& st : sc.stations) {
            st.pos.x = rng::uniform_real(placement_eng, 0.0, templ.region_w);
            st.pos.y = rng::uniform_real(placement_eng, 0.0, templ.region_h);
        }
        const std::uint64_t run_seed = rng::derive_seed(seed, idx + 1);

        sc.strategy = Strategy::IlsVnd;
        const SimResult ils_run = simulate(sc, run_seed);
        sc.strategy = Strategy::PredictBaseline;
        const SimResult predict_run = simulate(sc, run_seed);

        const auto mean = [](const std::vector<double>& xs) {
            double sum = 0.0;
            for (const double x : xs) sum += x;
            return sum / static_cast<double>(xs.size());
        };
        rows.push_back({idx, mean(ils_run.rsrq_series), mean(predict_run.rsrq_series)});
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Floating-car-data ingestion: a deliberately small scanner for the fixed
// timestep/vehicle layout rather than a general XML parser.

namespace {

struct Tag {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attrs;
    bool closing = false;
    bool self_closing = false;

    const std::string* attr(const std::string& key) const {
        for (const auto& [k, v] : attrs) {
            if (k == key) return &v;
        }
        return nullptr;
    }
};

struct FcdScanner {
    const std::string& text;
    std::size_t pos = 0;

    explicit FcdScanner(const std::string& t) : text(t) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw FcdError(FcdErrorKind::MalformedXml, "fcd: " + msg);
    }

    void skip_until(const std::string& marker) {
        const std::size_t at = text.find(marker, pos);
        if (at == std::string::npos) {
            fail("unterminated '" + marker + "' construct");
        }
        pos = at + marker.size();
    }

    // Advances to the next element tag; returns false at end of input.
    bool next_tag(Tag& tag) {
        for (;;) {
            const std::size_t open = text.find('<', pos);
            if (open == std::string::npos) {
                return false;
            }
            pos = open + 1;
            if (text.compare(pos, 1, "?") == 0) {
                skip_until("?>");
                continue;
            }
            if (text.compare(pos, 3, "!--") == 0) {
                skip_until("-->");
                continue;
            }
            if (text.compare(pos, 1, "!") == 0) {
                skip_until(">");
                continue;
            }
            break;
        }
        tag = Tag{};
        if (pos < text.size() && text[pos] == '/') {
            tag.closing = true;
            ++pos;
        }
        const std::size_t name_start = pos;
        while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                     text[pos] == '-' || text[pos] == '_' || text[pos] == ':')) {
            ++pos;
        }
        tag.name = text.substr(name_start, pos - name_start);
        if (tag.name.empty()) {
            fail("empty tag name");
        }
        for (;;) {
            while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
                ++pos;
            }
            if (pos >= text.size()) {
                fail("unterminated tag <" + tag.name + ">");
            }
            if (text[pos] == '>') {
                ++pos;
                return true;
            }
            if (text[pos] == '/') {
                if (pos + 1 >= text.size() || text[pos + 1] != '>') {
                    fail("stray '/' in tag <" + tag.name + ">");
                }
                tag.self_closing = true;
                pos += 2;
                return true;
            }
            const std::size_t key_start = pos;
            while (pos < text.size() && text[pos] != '=' && text[pos] != '>' &&
                   !std::isspace(static_cast<unsigned char>(text[pos]))) {
                ++pos;
            }
            if (pos >= text.size() || text[pos] != '=') {
                fail("attribute without value in tag <" + tag.name + ">");
            }
            const std::string key = text.substr(key_start, key_start == pos ? 0 : pos - key_start);
            ++pos;
            if (pos >= text.size() || (text[pos] != '"' && text[pos] != '\'')) {
                fail("unquoted attribute value in tag <" + tag.name + ">");
            }
            const char quote = text[pos++];
            const std::size_t value_start = pos;
            const std::size_t value_end = text.find(quote, pos);
            if (value_end == std::string::npos) {
                fail("unterminated attribute value in tag <" + tag.name + ">");
            }
            tag.attrs.emplace_back(key, text.substr(value_start, value_end - value_start));
            pos = value_end + 1;
        }
    }
};

double parse_number(const std::string& value, FcdScanner& scanner, const char* what) {
    const char* begin = value.c_str();
    char* end = nullptr;
    const double parsed = std::strtod(begin, &end);
    if (end == begin || end != begin + value.size()) {
        scanner.fail(std::string("bad ") + what + " value '" + value + "'");
    }
    return parsed;
}

}  // namespace

RouteTrace ingest_fcd(const std::string& xml_text, const std::string& vehicle_id) {
    FcdScanner scanner(xml_text);
    RouteTrace trace;
    bool in_timestep = false;
    bool saw_timestep = false;
    double current_time = 0.0;

    Tag tag;
    while (scanner.next_tag(tag)) {
        if (tag.name == "timestep") {
            if (tag.closing) {
                in_timestep = false;
                continue;
            }
            const std::string* time = tag.attr("time");
            if (time == nullptr) {
                scanner.fail("timestep without time attribute");
            }
            current_time = parse_number(*time, scanner, "time");
            saw_timestep = true;
            in_timestep = !tag.self_closing;
            continue;
        }
        if (tag.name == "vehicle" && !tag.closing) {
            if (!in_timestep) {
                scanner.fail("vehicle element outside a timestep");
            }
            const std::string* id = tag.attr("id");
            if (id == nullptr || *id != vehicle_id) {
                continue;
            }
            const std::string* x = tag.attr("x");
            const std::string* y = tag.attr("y");
            if (x == nullptr || y == nullptr) {
                scanner.fail("vehicle '" + vehicle_id + "' missing x/y attributes");
            }
            if (!trace.empty() && !(current_time > trace.back().t)) {
                throw FcdError(FcdErrorKind::NonMonotonicTime,
                               "fcd: timestamps for vehicle '" + vehicle_id +
                                   "' are not strictly increasing");
            }
            trace.push_back({current_time,
                             {parse_number(*x, scanner, "x"), parse_number(*y, scanner, "y")}});
        }
    }
    if (trace.empty()) {
        if (!saw_timestep) {
            throw FcdError(FcdErrorKind::MalformedXml, "fcd: no timestep elements found");
        }
        throw FcdError(FcdErrorKind::VehicleNotFound,
                       "fcd: vehicle '" + vehicle_id + "' not present in the trace");
    }
    return trace;
}

}  // namespace uassoc::mobility
