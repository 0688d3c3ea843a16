#include <algorithm>
#include <atomic>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "uassoc/exact.hpp"
#include "uassoc/ils.hpp"
#include "uassoc/instgen.hpp"
#include "uassoc/io.hpp"
#include "uassoc/mobility.hpp"
#include "uassoc/model.hpp"
#include "uassoc/stats.hpp"

namespace {

using namespace uassoc;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitInfeasibleOrTimeout = 2;
constexpr int kExitIo = 3;

// Deterministic worker pool: results are keyed by job index, so scheduling
// order never shows up in the output.
template <typename Fn>
void parallel_for(std::size_t jobs, Fn&& fn) {
    const std::size_t workers = std::min<std::size_t>(
        jobs, std::max(1u, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < jobs; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= jobs) {
                    return;
                }
                fn(i);
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        io::write_text_file(out_path, text);
    }
}

// Wall time in fractional milliseconds; the solvers' own elapsed fields are
// whole milliseconds, too coarse for sub-millisecond exact solves.
template <typename Fn>
double timed_ms(Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::string records_json(const std::vector<io::ResultRecord>& rows, const io::Provenance& prov) {
    nlohmann::json doc;
    doc["seed"] = prov.seed;
    doc["config_hash"] = io::hash_hex(prov.config);
    doc["rows"] = nlohmann::json::array();
    for (const auto& r : rows) {
        doc["rows"].push_back({{"label", r.label},
                               {"solver", r.solver},
                               {"cost", r.cost},
                               {"status", r.status},
                               {"elapsed_ms", r.elapsed_ms},
                               {"seed", r.seed}});
    }
    return doc.dump(2) + "\n";
}

// --- generate ----------------------------------------------------------------

struct GenerateConfig {
    std::string type = "A";
    std::size_t users = 100;
    std::size_t stations = 5;
    std::uint64_t seed = 1;
    std::pair<int, int> demand_range{5, 25};
    std::pair<double, double> handover_range{0.0, 1.0};
    bool suite = false;
    std::string out;
    std::string out_dir = ".";
};

int run_generate(const GenerateConfig& cfg) {
    if (cfg.suite) {
        std::filesystem::create_directories(cfg.out_dir);
        for (const auto& spec : instgen::standard_suite_specs(cfg.seed)) {
            const auto inst = instgen::gen_instance(spec);
            const auto path = std::filesystem::path(cfg.out_dir) / (spec.label() + ".json");
            io::save_instance(path.string(), inst, spec, spec.seed);
            std::cout << path.string() << "\n";
        }
        return kExitOk;
    }
    instgen::InstanceSpec spec;
    spec.type = instgen::instance_type_from_string(cfg.type);
    spec.num_users = cfg.users;
    spec.num_stations = cfg.stations;
    spec.seed = cfg.seed;
    spec.demand_range = cfg.demand_range;
    spec.handover_range = cfg.handover_range;
    const auto inst = instgen::gen_instance(spec);
    const std::string text = io::instance_to_json(inst, spec, spec.seed);
    emit(text, cfg.out);
    return kExitOk;
}

// --- solve ---------------------------------------------------------------------

struct SolveConfig {
    std::string instance_path;
    std::string solver = "ils";
    std::uint64_t seed = 1;
    std::size_t runs = 1;
    std::uint64_t time_budget_ms = 2000;
    std::optional<std::uint64_t> iter_budget;
    std::uint64_t time_limit_ms = 60000;
    std::optional<std::string> cost_mode;
    std::string format = "csv";
    std::string out;
};

int run_solve(const SolveConfig& cfg) {
    model::Instance inst = io::load_instance(cfg.instance_path);
    if (cfg.cost_mode.has_value()) {
        inst.cost_mode = *cfg.cost_mode == "raw" ? model::CostMode::Raw : model::CostMode::Magnitude;
    }
    const std::string label = std::filesystem::path(cfg.instance_path).stem().string();

    std::vector<io::ResultRecord> rows;
    bool degraded = false;
    if (cfg.solver == "bruteforce" || cfg.solver == "bnb") {
        exact::SolveResult result;
        const double elapsed = timed_ms([&]() {
            if (cfg.solver == "bruteforce") {
                result = exact::solve_bruteforce(inst);
            } else {
                exact::BnbOptions opts;
                opts.time_limit = std::chrono::milliseconds(cfg.time_limit_ms);
                result = exact::solve_bnb(inst, opts);
            }
        });
        degraded = result.status != exact::SolveStatus::Optimal;
        rows.push_back({label, cfg.solver, result.cost, exact::to_string(result.status), elapsed,
                        cfg.seed});
    } else if (cfg.solver == "ils") {
        rows.resize(cfg.runs);
        std::atomic<bool> failed{false};
        parallel_for(cfg.runs, [&](std::size_t run) {
            ils::IlsParams params;
            params.seed = cfg.seed + run;
            params.time_budget = std::chrono::milliseconds(cfg.time_budget_ms);
            params.iteration_budget = cfg.iter_budget;
            try {
                ils::IlsResult result;
                const double elapsed = timed_ms([&]() { result = ils::ils_solve(inst, params); });
                rows[run] = {label, "ils", result.best_cost, "Feasible", elapsed, params.seed};
            } catch (const ils::ConstructionFailure&) {
                rows[run] = {label, "ils", 0.0, "ConstructionFailed", 0.0, params.seed};
                failed = true;
            }
        });
        degraded = failed.load();
    } else {
        throw std::invalid_argument("unknown solver: " + cfg.solver);
    }

    const io::Provenance prov{cfg.seed, "solve " + label + " " + cfg.solver};
    emit(cfg.format == "json" ? records_json(rows, prov) : io::result_records_csv(rows, prov),
         cfg.out);
    return degraded ? kExitInfeasibleOrTimeout : kExitOk;
}

// --- simulate / experiment ------------------------------------------------------

struct ScenarioConfig {
    std::string stations_path;
    std::string route_path;
    std::string fcd_path;
    std::string vehicle_id;
    int demand = 10;
    std::string strategy = "ils";
    std::string cost_mode = "magnitude";
    std::uint64_t ils_iter_budget = 200;
    double region_w = 1947.65;
    double region_h = 1878.95;
};

mobility::Scenario build_scenario(const ScenarioConfig& cfg) {
    mobility::Scenario sc;
    sc.stations = io::load_stations_csv(cfg.stations_path);
    if (!cfg.fcd_path.empty()) {
        sc.route = mobility::ingest_fcd(io::read_text_file(cfg.fcd_path), cfg.vehicle_id);
    } else {
        sc.route = io::load_route_csv(cfg.route_path);
    }
    sc.ue_demand = cfg.demand;
    sc.strategy = mobility::strategy_from_string(cfg.strategy);
    sc.cost_mode = cfg.cost_mode == "raw" ? model::CostMode::Raw : model::CostMode::Magnitude;
    sc.ils_iteration_budget = cfg.ils_iter_budget;
    sc.region_w = cfg.region_w;
    sc.region_h = cfg.region_h;
    sc.validate();
    return sc;
}

struct SimulateConfig {
    ScenarioConfig scenario;
    std::uint64_t seed = 1;
    std::string out_prefix = "sim";
};

int run_simulate(const SimulateConfig& cfg) {
    const auto sc = build_scenario(cfg.scenario);
    const auto result = mobility::simulate(sc, cfg.seed);
    const io::Provenance prov{cfg.seed, "simulate " + cfg.scenario.stations_path + " " +
                                            cfg.scenario.strategy};
    io::write_text_file(cfg.out_prefix + "_rsrq.csv", io::rsrq_series_csv(result, prov));
    io::write_text_file(cfg.out_prefix + "_handovers.csv", io::handovers_csv(result, prov));
    io::write_text_file(cfg.out_prefix + "_shares.csv", io::shares_csv(result, prov));
    std::cout << "steps=" << result.serving.size() << " handovers=" << result.handovers.size()
              << "\n";
    return kExitOk;
}

struct ExperimentConfig {
    ScenarioConfig scenario;
    std::size_t n = 100;
    std::uint64_t seed = 1;
    std::string out;
};

int run_experiment(const ExperimentConfig& cfg) {
    if (cfg.n < 2) {
        throw std::invalid_argument("experiment: need --n >= 2");
    }
    const auto sc = build_scenario(cfg.scenario);
    const auto rows = mobility::random_placement_experiment(cfg.n, sc, cfg.seed);
    const io::Provenance prov{cfg.seed, "experiment n=" + std::to_string(cfg.n)};
    emit(io::experiment_report_csv(rows, prov), cfg.out);
    return kExitOk;
}

// --- bench -----------------------------------------------------------------------

struct BenchConfig {
    std::uint64_t seed = 1;
    std::size_t runs = 30;
    std::uint64_t time_budget_ms = 2000;
    std::optional<std::uint64_t> iter_budget;
    std::uint64_t time_limit_ms = 60000;
    std::string out;
};

int run_bench(const BenchConfig& cfg) {
    const auto specs = instgen::standard_suite_specs(cfg.seed);
    std::string out = "# seed=" + std::to_string(cfg.seed) + " config=" +
                      io::hash_hex("bench runs=" + std::to_string(cfg.runs)) + "\n";
    out += "label,solver,best_cost,mean_time_ms,status,runs\n";

    double bnb_time_sum = 0.0;
    double ils_time_sum = 0.0;
    bool degraded = false;
    for (const auto& spec : specs) {
        const auto inst = instgen::gen_instance(spec);

        exact::SolveResult exact_result;
        const double exact_ms = timed_ms([&]() {
            exact::BnbOptions opts;
            opts.time_limit = std::chrono::milliseconds(cfg.time_limit_ms);
            exact_result = exact::solve_bnb(inst, opts);
        });
        degraded = degraded || exact_result.status != exact::SolveStatus::Optimal;
        bnb_time_sum += exact_ms;
        out += spec.label() + ",bnb," + io::format_double(exact_result.cost) + "," +
               io::format_double(exact_ms) + "," + exact::to_string(exact_result.status) + ",1\n";

        std::vector<double> costs(cfg.runs);
        std::vector<double> times(cfg.runs);
        parallel_for(cfg.runs, [&](std::size_t run) {
            ils::IlsParams params;
            params.seed = cfg.seed + run;
            params.time_budget = std::chrono::milliseconds(cfg.time_budget_ms);
            params.iteration_budget = cfg.iter_budget;
            ils::IlsResult result;
            times[run] = timed_ms([&]() { result = ils::ils_solve(inst, params); });
            costs[run] = result.best_cost;
        });
        const double best = *std::min_element(costs.begin(), costs.end());
        double mean_time = 0.0;
        for (const double t : times) mean_time += t;
        mean_time /= static_cast<double>(cfg.runs);
        ils_time_sum += mean_time;
        out += spec.label() + ",ils," + io::format_double(best) + "," +
               io::format_double(mean_time) + ",Feasible," + std::to_string(cfg.runs) + "\n";
        std::cerr << spec.label() << " done\n";
    }
    const double reduction = 100.0 * (1.0 - ils_time_sum / bnb_time_sum);
    out += "# time_reduction_pct=" + io::format_double(reduction) + "\n";
    emit(out, cfg.out);
    return degraded ? kExitInfeasibleOrTimeout : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"User-association optimization toolkit: GAP instances, exact and "
                 "ILS-VND solvers, and a vehicular route-replay simulator"};
    app.require_subcommand(1);

    GenerateConfig gen_cfg;
    auto* gen = app.add_subcommand("generate", "Generate benchmark instances");
    gen->add_option("--type", gen_cfg.type, "Instance family: A, B or Bprime");
    gen->add_option("--users", gen_cfg.users, "Number of users");
    gen->add_option("--stations", gen_cfg.stations, "Number of stations");
    gen->add_option("--seed", gen_cfg.seed, "Generator seed (suite mode: base seed)");
    gen->add_option("--demand-min", gen_cfg.demand_range.first, "Smallest demand");
    gen->add_option("--demand-max", gen_cfg.demand_range.second, "Largest demand");
    gen->add_option("--handover-min", gen_cfg.handover_range.first, "Smallest handover rate");
    gen->add_option("--handover-max", gen_cfg.handover_range.second, "Largest handover rate");
    gen->add_flag("--suite", gen_cfg.suite, "Emit all 18 benchmark instances");
    gen->add_option("--out", gen_cfg.out, "Output file (default: stdout)");
    gen->add_option("--out-dir", gen_cfg.out_dir, "Suite output directory");

    SolveConfig solve_cfg;
    auto* solve = app.add_subcommand("solve", "Solve an instance file");
    solve->add_option("--instance", solve_cfg.instance_path, "Instance JSON path")->required();
    solve->add_option("--solver", solve_cfg.solver, "bruteforce, bnb or ils")
        ->check(CLI::IsMember({"bruteforce", "bnb", "ils"}));
    solve->add_option("--seed", solve_cfg.seed, "Base seed (run r uses seed + r)");
    solve->add_option("--runs", solve_cfg.runs, "Seeded ils repetitions");
    solve->add_option("--time-budget-ms", solve_cfg.time_budget_ms, "ils wall-clock budget");
    solve->add_option("--iter-budget", solve_cfg.iter_budget, "ils iteration budget (overrides time)");
    solve->add_option("--time-limit-ms", solve_cfg.time_limit_ms, "bnb time limit");
    solve->add_option("--cost-mode", solve_cfg.cost_mode, "Override the instance cost mode")
        ->check(CLI::IsMember({"magnitude", "raw"}));
    solve->add_option("--format", solve_cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    solve->add_option("--out", solve_cfg.out, "Output file (default: stdout)");

    SimulateConfig sim_cfg;
    auto* sim = app.add_subcommand("simulate", "Replay a route against a station layout");
    sim->add_option("--stations", sim_cfg.scenario.stations_path, "Station CSV")->required();
    sim->add_option("--route", sim_cfg.scenario.route_path, "Route CSV (t,x,y)");
    sim->add_option("--fcd", sim_cfg.scenario.fcd_path, "Floating-car-data XML instead of --route");
    sim->add_option("--vehicle", sim_cfg.scenario.vehicle_id, "Vehicle id inside the FCD file");
    sim->add_option("--demand", sim_cfg.scenario.demand, "Tracked vehicle bandwidth demand");
    sim->add_option("--strategy", sim_cfg.scenario.strategy, "ils, exact or predict")
        ->check(CLI::IsMember({"ils", "exact", "predict"}));
    sim->add_option("--cost-mode", sim_cfg.scenario.cost_mode, "magnitude or raw")
        ->check(CLI::IsMember({"magnitude", "raw"}));
    sim->add_option("--ils-iter-budget", sim_cfg.scenario.ils_iter_budget, "Per-step ils budget");
    sim->add_option("--seed", sim_cfg.seed, "Simulation seed");
    sim->add_option("--out", sim_cfg.out_prefix, "Output prefix for the three CSV files");

    ExperimentConfig exp_cfg;
    auto* exp = app.add_subcommand("experiment",
                                   "Random-placement comparison of ils vs. the prediction baseline");
    exp->add_option("--stations", exp_cfg.scenario.stations_path, "Template station CSV")->required();
    exp->add_option("--route", exp_cfg.scenario.route_path, "Route CSV")->required();
    exp->add_option("--demand", exp_cfg.scenario.demand, "Tracked vehicle bandwidth demand");
    exp->add_option("--region-w", exp_cfg.scenario.region_w, "Region width in meters");
    exp->add_option("--region-h", exp_cfg.scenario.region_h, "Region height in meters");
    exp->add_option("--ils-iter-budget", exp_cfg.scenario.ils_iter_budget, "Per-step ils budget");
    exp->add_option("--n", exp_cfg.n, "Number of random placements");
    exp->add_option("--seed", exp_cfg.seed, "Experiment seed");
    exp->add_option("--out", exp_cfg.out, "Report path (default: stdout)");

    BenchConfig bench_cfg;
    auto* bench = app.add_subcommand("bench", "Benchmark bnb vs. ils over the 18-instance suite");
    bench->add_option("--seed", bench_cfg.seed, "Suite base seed");
    bench->add_option("--runs", bench_cfg.runs, "ils repetitions per instance");
    bench->add_option("--time-budget-ms", bench_cfg.time_budget_ms, "ils wall-clock budget");
    bench->add_option("--iter-budget", bench_cfg.iter_budget, "ils iteration budget (overrides time)");
    bench->add_option("--time-limit-ms", bench_cfg.time_limit_ms, "bnb time limit");
    bench->add_option("--out", bench_cfg.out, "Report path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (gen->parsed()) return run_generate(gen_cfg);
        if (solve->parsed()) return run_solve(solve_cfg);
        if (sim->parsed()) return run_simulate(sim_cfg);
        if (exp->parsed()) return run_experiment(exp_cfg);
        if (bench->parsed()) return run_bench(bench_cfg);
    } catch (const io::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const mobility::FcdError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ils::ConstructionFailure& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasibleOrTimeout;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}
