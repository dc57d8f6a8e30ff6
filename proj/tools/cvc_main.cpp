/*
Copyright 2026 the cvcollect authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

// Command-line front end: ingestion, codecs, threshold sweeps, the freeway
// simulator, and the travel-time experiments, all emitting tidy CSV plus a
// run manifest that pins every output file by fingerprint.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cvcollect/baselines.hpp"
#include "cvcollect/ingest.hpp"
#include "cvcollect/metrics.hpp"
#include "cvcollect/mpla.hpp"
#include "cvcollect/serialize.hpp"
#include "cvcollect/sim.hpp"
#include "cvcollect/traveltime.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cvc;

namespace {

constexpr const char* kToolVersion = "cvc 1.0.0";

constexpr int kExitOk = 0;
constexpr int kExitRuntimeFlag = 1;  // e.g. non-converged l1 blocks
constexpr int kExitUsage = 2;

struct RunContext {
    std::string command;
    std::vector<std::string> argv;
    std::string out_dir;
    json config;  // resolved, post-precedence
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;  // paths relative to out_dir
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

    std::string path(const std::string& name) {
        outputs.push_back(name);
        return (fs::path(out_dir) / name).string();
    }

    // every output directory gets exactly one manifest pinning its contents
    void write_manifest() {
        json m;
        m["tool_version"] = kToolVersion;
        m["command"] = command;
        m["argv"] = argv;
        m["config"] = config;
        m["seeds"] = seeds;
        m["inputs"] = inputs;
        json files = json::array();
        std::vector<std::string> sorted = outputs;
        std::sort(sorted.begin(), sorted.end());
        for (const std::string& name : sorted) {
            json f;
            f["path"] = name;
            f["fingerprint"] = file_fingerprint((fs::path(out_dir) / name).string());
            files.push_back(f);
        }
        m["outputs"] = files;
        m["duration_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        std::ofstream out(fs::path(out_dir) / "manifest.json");
        out << m.dump(2) << "\n";
    }
};

// config-file values fill in flags the user did not pass on the command line
void apply_config_file(CLI::App* cmd, const std::string& config_path) {
    if (config_path.empty()) return;
    std::ifstream in(config_path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + config_path);
    json cfg = json::parse(in);
    for (auto& [key, value] : cfg.items()) {
        CLI::Option* opt = cmd->get_option_no_throw("--" + key);
        if (opt == nullptr || opt->count() > 0) continue;
        std::string text = value.is_string() ? value.get<std::string>() : value.dump();
        opt->add_result(text);
        opt->run_callback();
    }
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

std::vector<Trip> load_trip_dir(const std::string& dir, std::vector<std::string>& inputs) {
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("trip_", 0) == 0 && entry.path().extension() == ".csv")
            files.push_back(entry.path().string());
    }
    std::sort(files.begin(), files.end());
    std::vector<Trip> trips;
    for (const std::string& file : files) {
        inputs.push_back(file);
        ParseResult parsed = parse_bsm_csv(file);
        SegmentationResult seg = segment_trips(parsed.records);
        for (Trip& trip : seg.trips) trips.push_back(std::move(trip));
    }
    if (trips.empty()) throw std::runtime_error("no trip_*.csv files found in " + dir);
    return trips;
}

// ---------------------------------------------------------------- ingest

int cmd_ingest(RunContext& ctx, const std::string& input, const std::string& synthetic,
               std::size_t n, std::size_t trips, std::uint64_t seed, double gap) {
    std::vector<Trip> out_trips;
    json stats;
    if (!synthetic.empty()) {
        const SynthKind kind = synth_kind_from_string(synthetic);
        for (std::size_t k = 0; k < trips; ++k) {
            Trip trip = synth_trip(kind, n, seed + k);
            trip.vehicle_id = "synthetic_" + std::to_string(k);
            out_trips.push_back(std::move(trip));
        }
    } else {
        if (input.empty()) throw CLI::ValidationError("ingest", "need --input or --synthetic");
        if (!fs::exists(input))
            throw std::runtime_error("input file does not exist: " + input);
        ctx.inputs.push_back(input);
        ParseResult parsed = parse_bsm_csv(input);
        SegmentationResult seg = segment_trips(parsed.records, gap);
        stats["skipped_rows"] = parsed.skipped_rows;
        stats["dropped_short_trips"] = seg.dropped_short_trips;
        out_trips = std::move(seg.trips);
    }

    for (std::size_t k = 0; k < out_trips.size(); ++k) {
        char name[32];
        std::snprintf(name, sizeof(name), "trip_%05zu", k);
        write_trip_csv(ctx.path(std::string(name) + ".csv"), out_trips[k]);
        write_trip_manifest(ctx.path(std::string(name) + ".json"), out_trips[k], name);
    }
    stats["trips"] = out_trips.size();
    ctx.config["result"] = stats;
    std::cout << "wrote " << out_trips.size() << " trips to " << ctx.out_dir << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- compress

int cmd_compress(RunContext& ctx, const std::string& trips_dir, const std::string& strategy,
                 std::vector<double> eps, int k, int stride, double ratio,
                 std::uint64_t seed) {
    std::vector<Trip> trips = load_trip_dir(trips_dir, ctx.inputs);

    std::ofstream report(ctx.path("error_report.csv"));
    report << "trip,n,d,collection_ratio,speed_median,speed_linf,traj_median,traj_linf,"
              "speed_rel_l2,nonconverged_blocks\n";

    int runtime_flags = 0;
    for (std::size_t i = 0; i < trips.size(); ++i) {
        const Trip& trip = trips[i];
        Transmission tx;
        Trip approx;
        TransmissionHeader header;
        header.n = trip.size();
        header.d = trip.dim();
        header.strategy = strategy;
        int nonconverged = 0;

        if (strategy == "mpla") {
            ThresholdConfig cfg{eps, k};
            tx = mpla_encode(trip, cfg);
            approx = mpla_decode(tx, trip.size(), cfg);
            header.epsilons = eps;
            header.max_segment_length = k;
        } else if (strategy == "uniform") {
            tx = uniform_encode(trip, stride);
            approx = uniform_decode(tx, trip.size());
        } else if (strategy == "cs") {
            CsEncoded enc = cs_select(trip, ratio, seed + i);
            CsDecodeResult dec = cs_decode(enc, {});
            tx = std::move(enc.tx);
            approx = std::move(dec.trip);
            nonconverged = dec.nonconverged_blocks;
            runtime_flags += nonconverged;
            header.mask_seed = seed + i;
        } else {
            throw CLI::ValidationError("--strategy", "unknown strategy " + strategy);
        }
        header.collection_ratio = tx.collection_ratio(trip.size());

        char name[32];
        std::snprintf(name, sizeof(name), "tx_%05zu", i);
        write_transmission(ctx.path(std::string(name) + ".csv"),
                           ctx.path(std::string(name) + ".json"), tx, header);

        SeriesSummary sp = summarize(speed_error(trip, approx));
        SeriesSummary tr = summarize(trajectory_error(trip, approx));
        RelativeL2 rl2 = relative_l2(trip.column(0), approx.column(0));
        report << csv_field(trip.vehicle_id) << ',' << trip.size() << ',' << trip.dim() << ','
               << format_double(header.collection_ratio) << ',' << format_double(sp.median)
               << ',' << format_double(sp.linf) << ',' << format_double(tr.median) << ','
               << format_double(tr.linf) << ','
               << (rl2.defined ? format_double(rl2.value) : "nan") << ',' << nonconverged
               << "\n";
    }
    report.close();
    if (runtime_flags > 0) {
        std::cerr << "warning: " << runtime_flags << " l1 blocks did not converge\n";
        return kExitRuntimeFlag;
    }
    return kExitOk;
}

// ---------------------------------------------------------------- sweep

int cmd_sweep(RunContext& ctx, const std::string& trips_dir, int k, int jobs) {
    std::vector<Trip> trips = load_trip_dir(trips_dir, ctx.inputs);
    ScenarioTable table = sweep_scenarios(trips, k, jobs);

    std::ofstream tab(ctx.path("scenarios.csv"));
    tab << "scenario,eps_speed,eps_coord,mean_collection_ratio\n";
    for (const ScenarioRow& row : table.rows)
        tab << row.scenario << ',' << format_double(row.eps_speed) << ','
            << format_double(row.eps_coord) << ',' << format_double(row.mean_ratio) << "\n";

    std::ofstream hist(ctx.path("ratio_histogram.csv"));
    hist << "scenario,bin_low,bin_high,trips\n";
    for (const ScenarioRow& row : table.rows)
        for (std::size_t b = 0; b < row.ratio_histogram.size(); ++b)
            hist << row.scenario << ',' << format_double(b * 0.01) << ','
                 << format_double((b + 1) * 0.01) << ',' << row.ratio_histogram[b] << "\n";

    std::ofstream hourly(ctx.path("ratio_by_hour.csv"));
    hourly << "scenario,hour,mean_ratio,trips\n";
    for (const ScenarioRow& row : table.rows)
        for (int h = 0; h < 24; ++h)
            if (row.trips_by_hour[h] > 0)
                hourly << row.scenario << ',' << h << ',' << format_double(row.ratio_by_hour[h])
                       << ',' << row.trips_by_hour[h] << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- simulate

json freeway_json(const FreewayConfig& cfg) {
    json j;
    j["n_sections"] = cfg.n_sections;
    j["section_len"] = cfg.section_len;
    j["lanes"] = cfg.lanes;
    j["duration_s"] = cfg.duration_s;
    j["dt"] = cfg.dt;
    j["demand"] = cfg.demand;
    j["free_speed"] = cfg.free_speed;
    j["incident_enabled"] = cfg.incident_enabled;
    j["incident_speed"] = cfg.incident_speed;
    j["incident_start_s"] = cfg.incident_start_s;
    j["incident_end_s"] = cfg.incident_end_s;
    j["incident_section"] = cfg.incident_section;
    j["warmup_s"] = cfg.warmup_s;
    j["period_len_s"] = cfg.period_len_s;
    return j;
}

CollectionStrategy make_strategy(const std::string& name, int stride, double ratio,
                                 std::uint64_t seed, const std::vector<double>& eps, int k) {
    if (name == "conventional") return ConventionalStrategy{};
    if (name == "uniform") return UniformStrategy{stride};
    if (name == "cs") return CompressiveStrategy{ratio, seed};
    if (name == "mpla") return MplaStrategy{ThresholdConfig{eps, k}};
    throw CLI::ValidationError("--strategy", "unknown strategy " + name);
}

int cmd_simulate(RunContext& ctx, std::uint64_t seed, double penetration,
                 const std::string& strategy, int stride, double ratio,
                 const std::vector<double>& eps, int k, int capacity, bool no_incident,
                 int thin) {
    FreewayConfig cfg;
    cfg.incident_enabled = !no_incident;
    cfg.validate();
    ctx.config["freeway"] = freeway_json(cfg);

    SimResult sim = run_sim_physics(cfg, seed);
    CollectionStrategy strat = make_strategy(strategy, stride, ratio, seed, eps, k);
    Uploads uploads = collect_uploads(sim, penetration, strat, capacity, seed);

    std::ofstream traj(ctx.path("trajectories.csv"));
    traj << "t,vehicle,lane,position_m,speed_ms\n";
    for (const VehicleTrajectory& v : sim.vehicles)
        for (std::size_t i = 0; i < v.ticks(); i += static_cast<std::size_t>(thin))
            traj << format_double((v.entry_tick + static_cast<int>(i)) * cfg.dt) << ','
                 << v.id << ',' << static_cast<int>(v.lane[i]) << ','
                 << format_double(v.pos[i]) << ',' << format_double(v.speed[i]) << "\n";

    std::ofstream up(ctx.path("uploads.csv"));
    up << "rsu,vehicle,upload_t,t,speed_ms,latitude,longitude\n";
    for (const UploadBatch& batch : uploads.batches)
        for (const Sample& s : batch.samples)
            up << batch.rsu << ',' << batch.vehicle_id << ','
               << format_double(batch.upload_tick * cfg.dt) << ','
               << format_double(to_seconds(s.t)) << ',' << format_double(s.values[0]) << ','
               << format_double(s.values[1]) << ',' << format_double(s.values[2]) << "\n";

    // mean speed per (10 s, 50 m) cell: the time-space congestion picture
    std::ofstream ts(ctx.path("timespace.csv"));
    ts << "t_low_s,pos_low_m,mean_speed_ms\n";
    const double t_bin = 10.0, x_bin = 50.0;
    const int nt = static_cast<int>(cfg.duration_s / t_bin);
    const int nx = static_cast<int>(cfg.total_length() / x_bin) + 1;
    std::vector<double> sum(static_cast<std::size_t>(nt) * nx, 0.0);
    std::vector<int> cnt(static_cast<std::size_t>(nt) * nx, 0);
    for (const VehicleTrajectory& v : sim.vehicles) {
        for (std::size_t i = 0; i < v.ticks(); ++i) {
            const int bt = static_cast<int>((v.entry_tick + static_cast<int>(i)) * cfg.dt / t_bin);
            const int bx = static_cast<int>(v.pos[i] / x_bin);
            if (bt < 0 || bt >= nt || bx < 0 || bx >= nx) continue;
            sum[static_cast<std::size_t>(bt) * nx + bx] += v.speed[i];
            cnt[static_cast<std::size_t>(bt) * nx + bx] += 1;
        }
    }
    for (int bt = 0; bt < nt; ++bt)
        for (int bx = 0; bx < nx; ++bx)
            if (cnt[static_cast<std::size_t>(bt) * nx + bx] > 0)
                ts << format_double(bt * t_bin) << ',' << format_double(bx * x_bin) << ','
                   << format_double(sum[static_cast<std::size_t>(bt) * nx + bx] /
                                    cnt[static_cast<std::size_t>(bt) * nx + bx])
                   << "\n";

    ctx.config["result"] = {{"vehicles", sim.vehicles.size()},
                            {"upload_batches", uploads.batches.size()},
                            {"realized_ratio", uploads.realized_ratio()}};
    return kExitOk;
}

// ---------------------------------------------------------------- experiment

int cmd_experiment(RunContext& ctx, const std::string& mode, double penetration, int capacity,
                   std::vector<int> capacities, std::vector<double> penetrations,
                   std::vector<std::uint64_t> seeds, int jobs, bool flush_at_horizon) {
    ExperimentConfig cfg;
    cfg.seeds = seeds;
    cfg.jobs = jobs;
    cfg.flush_at_horizon = flush_at_horizon;
    ctx.seeds = seeds;
    ctx.config["freeway"] = freeway_json(cfg.freeway);
    ctx.config["mpla_epsilons"] = cfg.mpla_thresholds.epsilons;
    ctx.config["mpla_max_segment_length"] = cfg.mpla_thresholds.max_segment_length;

    std::vector<ExperimentCell> cells;
    if (mode == "capacity") {
        cells = capacity_experiment(cfg, penetration, capacities);
    } else if (mode == "penetration") {
        cells = penetration_experiment(cfg, capacity, penetrations);
    } else {
        throw CLI::ValidationError("--mode", "expected capacity or penetration");
    }

    std::ofstream out(ctx.path("cells.csv"));
    out << "strategy," << (mode == "capacity" ? "capacity" : "penetration")
        << ",e_r,excluded_cells,realized_ratio\n";
    for (const ExperimentCell& cell : cells)
        out << cell.strategy << ',' << format_double(cell.param) << ','
            << format_double(cell.e_r) << ',' << cell.excluded_cells << ','
            << format_double(cell.realized_ratio) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- report

int cmd_report(const std::string& dir) {
    const fs::path manifest_path = fs::path(dir) / "manifest.json";
    if (!fs::exists(manifest_path))
        throw std::runtime_error("no manifest.json in " + dir);
    std::ifstream in(manifest_path);
    json m = json::parse(in);
    std::cout << "command: " << m.value("command", "?") << "\n";
    std::cout << "tool:    " << m.value("tool_version", "?") << "\n";
    int mismatches = 0;
    for (const json& f : m["outputs"]) {
        const std::string name = f["path"];
        const std::uint64_t want = f["fingerprint"];
        std::uint64_t got = 0;
        bool ok = false;
        try {
            got = file_fingerprint((fs::path(dir) / name).string());
            ok = got == want;
        } catch (const std::exception&) {
        }
        std::cout << (ok ? "  ok      " : "  CHANGED ") << name << "\n";
        if (!ok) ++mismatches;
    }
    if (mismatches > 0) {
        std::cerr << mismatches << " outputs differ from the manifest\n";
        return kExitRuntimeFlag;
    }
    std::cout << "all outputs match the manifest\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"connected-vehicle data collection toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand name

    std::string out_dir, config_path;
    std::uint64_t seed = 1;
    int jobs = 1;
    app.add_option("--out", out_dir, "output directory (created if missing)");
    app.add_option("--config", config_path, "JSON config file; CLI flags take precedence");
    app.add_option("--seed", seed, "base random seed");
    app.add_option("--jobs", jobs, "worker thread bound")->check(CLI::PositiveNumber);

    // ingest
    CLI::App* ingest = app.add_subcommand("ingest", "parse a BSM CSV or synthesize trips");
    std::string in_input, in_synth;
    std::size_t in_n = 1000, in_trips = 10;
    double in_gap = 0.1;
    ingest->add_option("--input", in_input, "BSM-style CSV file");
    ingest->add_option("--synthetic", in_synth, "constant|linear|random_walk|step");
    ingest->add_option("--n", in_n, "samples per synthetic trip");
    ingest->add_option("--trips", in_trips, "number of synthetic trips");
    ingest->add_option("--gap", in_gap, "trip-splitting gap threshold in seconds");

    // compress
    CLI::App* compress = app.add_subcommand("compress", "encode trips and report errors");
    std::string cp_trips, cp_strategy = "mpla";
    std::vector<double> cp_eps = {0.5, 1e-4, 1e-4};
    int cp_k = 200, cp_stride = 10;
    double cp_ratio = 0.1;
    compress->add_option("--trips", cp_trips, "directory of trip_*.csv")->required();
    compress->add_option("--strategy", cp_strategy, "mpla|uniform|cs");
    compress->add_option("--eps", cp_eps, "per-dimension thresholds")->delimiter(',');
    compress->add_option("--k", cp_k, "max segment length");
    compress->add_option("--stride", cp_stride, "uniform stride");
    compress->add_option("--ratio", cp_ratio, "compressive collection ratio");

    // sweep
    CLI::App* sweep = app.add_subcommand("sweep", "16-scenario threshold sweep");
    std::string sw_trips;
    int sw_k = 200;
    sweep->add_option("--trips", sw_trips, "directory of trip_*.csv")->required();
    sweep->add_option("--k", sw_k, "max segment length");

    // simulate
    CLI::App* simulate = app.add_subcommand("simulate", "freeway run with uploads");
    double sm_pen = 0.5, sm_ratio = 0.1;
    std::string sm_strategy = "conventional";
    std::vector<double> sm_eps = {2.0, 2e-4, 2e-4};
    int sm_k = 200, sm_stride = 10, sm_capacity = 50, sm_thin = 10;
    bool sm_no_incident = false;
    simulate->add_option("--penetration", sm_pen, "connected-vehicle share");
    simulate->add_option("--strategy", sm_strategy, "conventional|uniform|cs|mpla");
    simulate->add_option("--stride", sm_stride, "uniform stride");
    simulate->add_option("--ratio", sm_ratio, "compressive ratio");
    simulate->add_option("--eps", sm_eps, "per-dimension thresholds")->delimiter(',');
    simulate->add_option("--k", sm_k, "max segment length");
    simulate->add_option("--capacity", sm_capacity, "OBU capacity");
    simulate->add_option("--thin", sm_thin, "trajectory output decimation")
        ->check(CLI::PositiveNumber);
    simulate->add_flag("--no-incident", sm_no_incident, "disable the lane closure");

    // experiment
    CLI::App* experiment = app.add_subcommand("experiment", "travel-time error tables");
    std::string ex_mode = "capacity";
    double ex_pen = 0.5;
    int ex_capacity = 50;
    std::vector<int> ex_capacities = {30, 50, 100, 300};
    std::vector<double> ex_penetrations = {0.25, 0.5, 0.75, 1.0};
    std::size_t ex_nseeds = 5;
    bool ex_flush = false;
    experiment->add_option("--mode", ex_mode, "capacity|penetration");
    experiment->add_option("--penetration", ex_pen, "fixed penetration (capacity mode)");
    experiment->add_option("--capacity", ex_capacity, "fixed capacity (penetration mode)");
    experiment->add_option("--capacities", ex_capacities, "capacity grid")->delimiter(',');
    experiment->add_option("--penetrations", ex_penetrations, "penetration grid")
        ->delimiter(',');
    experiment->add_option("--n-seeds", ex_nseeds, "seeds seed..seed+n-1 are averaged");
    experiment->add_flag("--flush-at-horizon", ex_flush,
                         "upload leftover buffers when a trajectory ends");

    // report
    CLI::App* report = app.add_subcommand("report", "verify a run directory's manifest");
    std::string rp_dir;
    report->add_option("--dir", rp_dir, "run directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        apply_config_file(&app, config_path);
        apply_config_file(sub, config_path);

        if (sub == report) return cmd_report(rp_dir);

        if (out_dir.empty()) throw CLI::ValidationError("--out", "an output directory is required");
        fs::create_directories(out_dir);

        RunContext ctx;
        ctx.command = sub->get_name();
        for (int i = 0; i < argc; ++i) ctx.argv.push_back(argv[i]);
        ctx.out_dir = out_dir;
        ctx.seeds = {seed};
        ctx.config["seed"] = seed;
        ctx.config["jobs"] = jobs;

        int rc = kExitOk;
        if (sub == ingest) {
            ctx.config["gap"] = in_gap;
            if (!in_synth.empty()) {
                ctx.config["synthetic"] = in_synth;
                ctx.config["n"] = in_n;
                ctx.config["trips"] = in_trips;
            }
            rc = cmd_ingest(ctx, in_input, in_synth, in_n, in_trips, seed, in_gap);
        } else if (sub == compress) {
            ctx.config["strategy"] = cp_strategy;
            ctx.config["eps"] = cp_eps;
            ctx.config["k"] = cp_k;
            ctx.config["stride"] = cp_stride;
            ctx.config["ratio"] = cp_ratio;
            rc = cmd_compress(ctx, cp_trips, cp_strategy, cp_eps, cp_k, cp_stride, cp_ratio,
                              seed);
        } else if (sub == sweep) {
            ctx.config["k"] = sw_k;
            rc = cmd_sweep(ctx, sw_trips, sw_k, jobs);
        } else if (sub == simulate) {
            ctx.config["penetration"] = sm_pen;
            ctx.config["strategy"] = sm_strategy;
            ctx.config["capacity"] = sm_capacity;
            rc = cmd_simulate(ctx, seed, sm_pen, sm_strategy, sm_stride, sm_ratio, sm_eps,
                              sm_k, sm_capacity, sm_no_incident, sm_thin);
        } else if (sub == experiment) {
            std::vector<std::uint64_t> seeds;
            for (std::size_t s = 0; s < ex_nseeds; ++s) seeds.push_back(seed + s);
            ctx.config["mode"] = ex_mode;
            ctx.config["penetration"] = ex_pen;
            ctx.config["capacity"] = ex_capacity;
            ctx.config["capacities"] = ex_capacities;
            ctx.config["penetrations"] = ex_penetrations;
            ctx.config["flush_at_horizon"] = ex_flush;
            rc = cmd_experiment(ctx, ex_mode, ex_pen, ex_capacity, ex_capacities,
                                ex_penetrations, seeds, jobs, ex_flush);
        }
        ctx.write_manifest();
        return rc;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
