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


#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "busnoc/cli.hpp"
#include "busnoc/engine.hpp"
#include "busnoc/routing.hpp"
#include "busnoc/scenario.hpp"

namespace py = pybind11;
using namespace busnoc;

namespace {

std::string setting_text(const py::handle& v) {
    if (v.is_none()) return "none";
    if (py::isinstance<py::bool_>(v)) throw ConfigError("boolean values are not accepted");
    if (py::isinstance<py::list>(v) || py::isinstance<py::tuple>(v)) {
        std::string out;
        for (const auto& item : v) out += (out.empty() ? "" : ",") + setting_text(item);
        return out;
    }
    return py::str(v).cast<std::string>();
}

template <typename T>
void apply_kwargs(T& target, const py::kwargs& kw) {
    for (const auto& [k, v] : kw) apply_setting(target, py::cast<std::string>(k), setting_text(v));
}

SimConfig config_from(const py::kwargs& kw) {
    SimConfig c;
    apply_kwargs(c, kw);
    validate(c);
    return c;
}

py::dict report_dict(const Report& r) {
    py::dict d;
    d["avg_latency_cycles"] = r.avg_latency ? py::cast(*r.avg_latency) : py::none();
    d["max_latency_cycles"] = r.max_latency ? py::cast(*r.max_latency) : py::none();
    d["throughput_flits_per_cycle_per_node"] = r.throughput;
    d["latency_samples"] = r.latency_samples;
    d["packets_generated"] = r.packets_generated;
    d["packets_delivered"] = r.packets_delivered;
    d["packets_in_flight"] = r.packets_in_flight;
    d["packets_queued"] = r.packets_queued;
    d["deadlocks_detected"] = r.deadlocks_detected;
    d["bus_recoveries"] = r.bus_recoveries;
    d["cancellations"] = r.cancellations;
    d["max_source_queue"] = r.max_source_queue;
    d["saturated"] = r.saturated;
    d["cycles_run"] = r.cycles_run;
    return d;
}

py::dict config_dict(const SimConfig& c) {
    py::dict d;
    for (const auto& kv : describe(c)) {
        const auto eq = kv.find('=');
        d[py::str(kv.substr(0, eq))] = kv.substr(eq + 1);
    }
    return d;
}

Direction parse_direction(const std::string& s) {
    static const std::pair<const char*, Direction> names[] = {
        {"N", Direction::North}, {"E", Direction::East},  {"S", Direction::South},
        {"W", Direction::West},  {"L", Direction::Local}, {"local", Direction::Local},
        {"north", Direction::North}, {"east", Direction::East}, {"south", Direction::South}, {"west", Direction::West}};
    for (const auto& [n, d] : names)
        if (s == n) return d;
    throw ConfigError("arrival: unknown direction '" + s + "'");
}

}  // namespace

PYBIND11_MODULE(_busnoc, m) {
    m.doc() = "Wormhole mesh NoC simulator with bus-based deadlock recovery";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);
    py::register_exception<RunTimeout>(m, "RunTimeout", PyExc_TimeoutError);

    m.attr("CSV_SCHEMA") = std::string(kCsvSchema);
    m.attr("CSV_HEADER") = csv_header();

    m.def("config", [](const py::kwargs& kw) { return config_dict(config_from(kw)); },
          "Validated configuration with defaults filled in, as strings.");
    m.def("parse_config", [](const std::string& text) { return config_dict(parse_config(text)); },
          "Parses key = value configuration text.");

    m.def("run", [](const py::kwargs& kw) {
        const SimConfig c = config_from(kw);
        Report r;
        {
            py::gil_scoped_release nogil;
            r = run(c);
        }
        return report_dict(r);
    }, "Runs one configuration given as SimConfig keyword arguments.");

    m.def("event_log", [](const py::kwargs& kw) {
        const SimConfig c = config_from(kw);
        std::vector<std::string> lines;
        Engine e(c);
        e.set_observer([&](const Event& ev) { lines.push_back(format_event(ev)); });
        e.run();
        return lines;
    }, "Runs one configuration and returns its event log lines.");

    m.def("route", [](const std::string& algorithm, std::pair<int, int> cur, std::pair<int, int> dst,
                      const std::string& arrival) {
        const Coord c{cur.first, cur.second}, d{dst.first, dst.second};
        if (c == d) throw ConfigError("route: cur == dst");
        std::vector<std::string> out;
        for (auto dir : route(parse_routing(algorithm), {c, d, parse_direction(arrival)}))
            out.emplace_back(to_string(dir));
        return out;
    }, py::arg("algorithm"), py::arg("cur"), py::arg("dst"), py::arg("arrival") = "L",
       "Admissible output directions; `arrival` is the input port (N/E/S/W/L).");

    m.def("scenario", [](const std::string& name, Cycle cycles, const py::kwargs& kw) {
        SimConfig base;
        apply_kwargs(base, kw);
        const auto res = run_scenario(name, base, cycles);
        py::dict d;
        d["report"] = report_dict(res.report);
        d["flit_movements"] = res.flit_movements;
        d["bus_requests"] = res.bus_requests;
        d["first_bus_request"] = res.first_bus_request ? py::cast(*res.first_bus_request) : py::none();
        d["bus_packets"] = res.bus_packets;
        d["placed"] = res.placed;
        d["all_delivered_cycle"] = res.all_delivered_cycle ? py::cast(*res.all_delivered_cycle) : py::none();
        return d;
    }, py::arg("name"), py::arg("cycles") = 5000, "Runs a named constructed scenario (cycle4, single).");

    m.def("sweep_csv", [](bool timestamp, const py::kwargs& kw) {
        SweepSpec spec;
        apply_kwargs(spec, kw);
        finalize_sweep(spec);
        std::vector<ResultRow> rows;
        {
            py::gil_scoped_release nogil;
            rows = run_sweep(spec);
        }
        std::ostringstream os;
        write_csv(os, spec.base, rows, timestamp);
        return os.str();
    }, py::arg("timestamp") = true,
       "Runs a sweep (pirs, routings, traffics, seeds, jobs plus SimConfig keys) and returns the CSV text.");
}
