/*
 * Copyright 2026 The busnoc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


// busnoc command line: run, sweep and scenario subcommands.

#include <fstream>
#include <map>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "busnoc/cli.hpp"
#include "busnoc/engine.hpp"
#include "busnoc/scenario.hpp"

using namespace busnoc;

namespace {

const std::vector<std::string> kConfigKeys = {
    "mesh_x",  "mesh_y",       "routing",       "recovery",      "threshold_log2", "traffic",
    "pir",     "len_min",      "len_max",       "buffer_depth",  "injection_limit", "warmup_cycles",
    "sim_cycles", "seed",      "saturation_queue_limit", "max_wall_seconds"};
const std::vector<std::string> kSweepKeys = {"pirs", "routings", "traffics", "seeds", "jobs"};

struct Common {
    std::string config;
    std::string out;
    std::string log;
    std::vector<std::string> sets;
    std::map<std::string, std::string> raw;
};

void add_common(CLI::App* cmd, Common& c, bool sweep_keys) {
    cmd->add_option("--config", c.config, "key = value configuration file");
    cmd->add_option("--out", c.out, "CSV output path (default: stdout)");
    cmd->add_option("--log", c.log, "per-cycle event log path");
    cmd->add_option("--set", c.sets, "extra key=value override, repeatable");
    for (const auto& k : kConfigKeys) cmd->add_option("--" + k, c.raw[k], "override " + k);
    if (sweep_keys)
        for (const auto& k : kSweepKeys) cmd->add_option("--" + k, c.raw[k], k == "jobs" ? std::string("worker threads") : "comma separated " + k);
}

std::vector<std::pair<std::string, std::string>> overrides(const CLI::App* cmd, const Common& c) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [k, v] : c.raw)
        if (cmd->count("--" + k)) out.emplace_back(k, v);
    for (const auto& s : c.sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError("--set: expected key=value, got '" + s + "'");
        out.emplace_back(s.substr(0, eq), s.substr(eq + 1));
    }
    return out;
}

template <typename T>
T load(const CLI::App* cmd, const Common& c) {
    T target{};
    if (!c.config.empty())
        for (const auto& [k, v] : parse_key_values(read_file(c.config))) apply_setting(target, k, v);
    for (const auto& [k, v] : overrides(cmd, c)) apply_setting(target, k, v);
    return target;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (path.empty()) return;
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
        if (!*file_) throw ConfigError("cannot write '" + path + "'");
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }
    bool to_file() const { return file_ != nullptr; }

private:
    std::unique_ptr<std::ofstream> file_;
};

void summary(std::ostream& os, const Report& r) {
    os << "generated " << r.packets_generated << ", delivered " << r.packets_delivered << ", avg latency "
       << (r.avg_latency ? std::to_string(*r.avg_latency) : std::string("n/a")) << " cycles, throughput "
       << r.throughput << " flits/cycle/node, detections " << r.deadlocks_detected << ", bus recoveries "
       << r.bus_recoveries << ", cancellations " << r.cancellations << (r.saturated ? ", SATURATED" : "") << '\n';
}

int cmd_run(const CLI::App* cmd, const Common& c) {
    SimConfig cfg = load<SimConfig>(cmd, c);
    validate(cfg);
    Engine engine(cfg);
    std::unique_ptr<std::ofstream> log;
    if (!c.log.empty()) {
        log = std::make_unique<std::ofstream>(c.log, std::ios::binary);
        if (!*log) throw ConfigError("cannot write '" + c.log + "'");
        engine.set_observer([&](const Event& e) { *log << format_event(e) << '\n'; });
    }
    ResultRow row;
    row.routing = cfg.routing;
    row.traffic = cfg.traffic;
    row.pir = cfg.pir;
    row.seed = cfg.seed;
    try {
        row.report = engine.run();
    } catch (const RunTimeout& e) {
        row.error = e.what();
    }
    Output out(c.out);
    write_csv(out.stream(), cfg, {row});
    if (out.to_file()) {
        if (row.error.empty()) summary(std::cout, row.report);
        else std::cerr << "run failed: " << row.error << '\n';
    }
    return row.error.empty() ? 0 : 1;
}

int cmd_sweep(const CLI::App* cmd, const Common& c) {
    if (!c.log.empty()) throw ConfigError("--log: event logs are written by run and scenario, not sweep");
    SweepSpec spec = load<SweepSpec>(cmd, c);
    finalize_sweep(spec);
    const auto rows = run_sweep(spec);
    Output out(c.out);
    write_csv(out.stream(), spec.base, rows);
    int failed = 0;
    for (const auto& r : rows) failed += !r.error.empty();
    if (out.to_file()) std::cout << rows.size() << " rows, " << failed << " failed\n";
    return 0;
}

int cmd_scenario(const CLI::App* cmd, const Common& c, const std::string& name, Cycle cycles) {
    const SimConfig base = load<SimConfig>(cmd, c);
    const auto res = run_scenario(name, base, cycles);
    if (!c.log.empty()) {
        std::ofstream log(c.log, std::ios::binary);
        if (!log) throw ConfigError("cannot write '" + c.log + "'");
        for (const auto& e : res.events) log << format_event(e) << '\n';
    }
    const SimConfig cfg = scenario_config(name, base);
    std::cout << "scenario " << name << " (" << to_string(cfg.recovery) << " recovery, " << cycles << " cycles)\n"
              << "  flit movements:   " << res.flit_movements << '\n'
              << "  bus requests:     " << res.bus_requests << '\n'
              << "  first request:    " << (res.first_bus_request ? std::to_string(*res.first_bus_request) : "none") << '\n'
              << "  messages on bus:  " << res.bus_packets.size() << '\n'
              << "  delivered:        " << res.report.packets_delivered << " of " << res.placed.size() << '\n'
              << "  all delivered at: "
              << (res.all_delivered_cycle ? std::to_string(*res.all_delivered_cycle) : "never") << '\n';
    if (!c.out.empty()) {
        Output out(c.out);
        ResultRow row{cfg.routing, cfg.traffic, cfg.pir, cfg.seed, res.report, {}};
        write_csv(out.stream(), cfg, {row});
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cycle-accurate wormhole mesh NoC simulator with bus-based deadlock recovery"};
    app.require_subcommand(1);

    Common run_opts, sweep_opts, scen_opts;
    auto* run_cmd = app.add_subcommand("run", "run one configuration and write a one-row CSV");
    add_common(run_cmd, run_opts, false);
    auto* sweep_cmd = app.add_subcommand("sweep", "run the routing x traffic x pir x seed grid");
    add_common(sweep_cmd, sweep_opts, true);
    auto* scen_cmd = app.add_subcommand("scenario", "run a named constructed scenario (cycle4, single)");
    add_common(scen_cmd, scen_opts, false);
    std::string scen_name;
    Cycle scen_cycles = 5000;
    scen_cmd->add_option("name", scen_name, "scenario name")->required();
    scen_cmd->add_option("--cycles", scen_cycles, "cycles to simulate")->check(CLI::NonNegativeNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) return cmd_run(run_cmd, run_opts);
        if (*sweep_cmd) return cmd_sweep(sweep_cmd, sweep_opts);
        if (*scen_cmd) return cmd_scenario(scen_cmd, scen_opts, scen_name, scen_cycles);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
