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

#include "busnoc/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <thread>
#include <tuple>

#include "busnoc/engine.hpp"

namespace busnoc {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(v);
    while (std::getline(is, cur, ',')) {
        auto t = trim(cur);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

template <typename T>
T parse_number(const std::string& key, const std::string& v) {
    T out{};
    const auto* b = v.data();
    const auto* e = v.data() + v.size();
    auto [p, ec] = std::from_chars(b, e, out);
    if (ec != std::errc() || p != e) throw ConfigError(key + ": invalid value '" + v + "'");
    return out;
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::istringstream is{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
        const auto t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        auto key = trim(std::string_view(t).substr(0, eq));
        auto val = trim(std::string_view(t).substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        out.emplace_back(std::move(key), std::move(val));
    }
    return out;
}

void apply_setting(SimConfig& cfg, const std::string& key, const std::string& v) {
    if (key == "mesh_x") cfg.mesh_x = parse_number<int>(key, v);
    else if (key == "mesh_y") cfg.mesh_y = parse_number<int>(key, v);
    else if (key == "routing") cfg.routing = parse_routing(v);
    else if (key == "recovery") cfg.recovery = parse_recovery(v);
    else if (key == "threshold_log2") cfg.threshold_log2 = parse_number<int>(key, v);
    else if (key == "traffic") cfg.traffic = parse_traffic(v);
    else if (key == "pir") cfg.pir = parse_number<double>(key, v);
    else if (key == "len_min") cfg.len_min = parse_number<int>(key, v);
    else if (key == "len_max") cfg.len_max = parse_number<int>(key, v);
    else if (key == "buffer_depth") cfg.buffer_depth = parse_number<int>(key, v);
    else if (key == "injection_limit") {
        if (v == "none" || v.empty()) cfg.injection_limit.reset();
        else cfg.injection_limit = parse_number<int>(key, v);
    } else if (key == "warmup_cycles") cfg.warmup_cycles = parse_number<Cycle>(key, v);
    else if (key == "sim_cycles") cfg.sim_cycles = parse_number<Cycle>(key, v);
    else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, v);
    else if (key == "saturation_queue_limit") cfg.saturation_queue_limit = parse_number<std::int64_t>(key, v);
    else if (key == "max_wall_seconds") cfg.max_wall_seconds = parse_number<double>(key, v);
    else throw ConfigError(key + ": unknown key");
}

void apply_setting(SweepSpec& spec, const std::string& key, const std::string& v) {
    if (key == "pirs") {
        spec.pirs.clear();
        for (const auto& s : split_list(v)) spec.pirs.push_back(parse_number<double>(key, s));
    } else if (key == "routings") {
        spec.routings.clear();
        for (const auto& s : split_list(v)) spec.routings.push_back(parse_routing(s));
    } else if (key == "traffics") {
        spec.traffics.clear();
        for (const auto& s : split_list(v)) spec.traffics.push_back(parse_traffic(s));
    } else if (key == "seeds") {
        spec.seeds.clear();
        for (const auto& s : split_list(v)) spec.seeds.push_back(parse_number<std::uint64_t>(key, s));
    } else if (key == "jobs") {
        spec.jobs = parse_number<int>(key, v);
        if (spec.jobs < 1) throw ConfigError("jobs: must be >= 1");
    } else {
        apply_setting(spec.base, key, v);
    }
}

SimConfig parse_config(std::string_view text) {
    SimConfig cfg;
    for (const auto& [k, v] : parse_key_values(text)) apply_setting(cfg, k, v);
    validate(cfg);
    return cfg;
}

SweepSpec parse_sweep(std::string_view text) {
    SweepSpec spec;
    for (const auto& [k, v] : parse_key_values(text)) apply_setting(spec, k, v);
    finalize_sweep(spec);
    return spec;
}

void finalize_sweep(SweepSpec& spec) {
    if (spec.pirs.empty()) spec.pirs.push_back(spec.base.pir);
    if (spec.routings.empty()) spec.routings.push_back(spec.base.routing);
    if (spec.traffics.empty()) spec.traffics.push_back(spec.base.traffic);
    if (spec.seeds.empty()) spec.seeds.push_back(spec.base.seed);
    for (double p : spec.pirs)
        if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("pirs: every value must lie in [0, 1]");
    SimConfig probe = spec.base;
    probe.traffic = Traffic::Uniform;  // pattern constraints are checked per cell
    validate(probe);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> describe(const SimConfig& c) {
    return {
        "mesh_x=" + std::to_string(c.mesh_x),
        "mesh_y=" + std::to_string(c.mesh_y),
        "routing=" + std::string(to_string(c.routing)),
        "recovery=" + std::string(to_string(c.recovery)),
        "threshold_log2=" + std::to_string(c.threshold_log2),
        "traffic=" + std::string(to_string(c.traffic)),
        "pir=" + fmt("%.6g", c.pir),
        "len_min=" + std::to_string(c.len_min),
        "len_max=" + std::to_string(c.len_max),
        "buffer_depth=" + std::to_string(c.buffer_depth),
        "injection_limit=" + (c.injection_limit ? std::to_string(*c.injection_limit) : std::string("none")),
        "warmup_cycles=" + std::to_string(c.warmup_cycles),
        "sim_cycles=" + std::to_string(c.sim_cycles),
        "seed=" + std::to_string(c.seed),
        "saturation_queue_limit=" + std::to_string(c.saturation_queue_limit),
        "max_wall_seconds=" + fmt("%.6g", c.max_wall_seconds),
    };
}

SimConfig cell_config(const SimConfig& base, Routing routing, Traffic traffic, double pir, std::uint64_t seed) {
    SimConfig c = base;
    c.routing = routing;
    c.traffic = traffic;
    c.pir = pir;
    c.seed = seed;
    if (routing != Routing::TFAR) c.recovery = Recovery::None;
    return c;
}

ResultRow run_row(const SimConfig& cfg) {
    ResultRow row;
    row.routing = cfg.routing;
    row.traffic = cfg.traffic;
    row.pir = cfg.pir;
    row.seed = cfg.seed;
    try {
        row.report = run(cfg);
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

std::vector<ResultRow> run_sweep(const SweepSpec& input) {
    SweepSpec spec = input;
    finalize_sweep(spec);
    std::vector<SimConfig> cells;
    for (auto r : spec.routings)
        for (auto t : spec.traffics)
            for (double p : spec.pirs)
                for (auto s : spec.seeds) cells.push_back(cell_config(spec.base, r, t, p, s));

    std::vector<ResultRow> rows(cells.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) rows[i] = run_row(cells[i]);
    };
    const int jobs = std::max(1, std::min<int>(spec.jobs, static_cast<int>(cells.size())));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    const auto key = [](const ResultRow& r) {
        return std::make_tuple(std::string(to_string(r.routing)), std::string(to_string(r.traffic)), r.pir, r.seed);
    };
    std::stable_sort(rows.begin(), rows.end(), [&](const ResultRow& a, const ResultRow& b) { return key(a) < key(b); });
    return rows;
}

std::string csv_header() {
    return "routing,traffic,pir,seed,avg_latency_cycles,max_latency_cycles,"
           "throughput_flits_per_cycle_per_node,packets_generated,packets_delivered,"
           "deadlocks_detected,bus_recoveries,cancellations,saturated,error";
}

std::string csv_row(const ResultRow& row) {
    const auto& r = row.report;
    std::string err = row.error;
    std::replace_if(err.begin(), err.end(), [](char c) { return c == ',' || c == '\n' || c == '\r' || c == '"'; }, ';');
    std::ostringstream os;
    os << to_string(row.routing) << ',' << to_string(row.traffic) << ',' << fmt("%.6g", row.pir) << ',' << row.seed
       << ',';
    if (row.error.empty()) {
        os << (r.avg_latency ? fmt("%.4f", *r.avg_latency) : "") << ','
           << (r.max_latency ? std::to_string(*r.max_latency) : "") << ',' << fmt("%.6f", r.throughput) << ','
           << r.packets_generated << ',' << r.packets_delivered << ',' << r.deadlocks_detected << ','
           << r.bus_recoveries << ',' << r.cancellations << ',' << (r.saturated ? "true" : "false") << ',';
    } else {
        os << ",,,,,,,,,";
    }
    os << err;
    return os.str();
}

void write_csv(std::ostream& os, const SimConfig& base, const std::vector<ResultRow>& rows, bool timestamp) {
    os << "# schema: " << kCsvSchema << '\n';
    if (timestamp) {
        const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[32];
        std::tm tm{};
        gmtime_r(&now, &tm);
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
        os << "# generated: " << buf << '\n';
    }
    os << "# units: pir=packets/node/cycle latency=cycles throughput=flits/cycle/node\n";
    os << "# config:";
    for (const auto& kv : describe(base)) os << ' ' << kv;
    os << '\n' << csv_header() << '\n';
    for (const auto& r : rows) os << csv_row(r) << '\n';
}

}  // namespace busnoc
