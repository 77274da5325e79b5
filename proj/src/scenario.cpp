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

#include "busnoc/scenario.hpp"

#include <algorithm>
#include <set>

namespace busnoc {

std::vector<std::string> scenario_names() { return {"cycle4", "single"}; }

SimConfig scenario_config(const std::string& name, SimConfig base) {
    base.pir = 0.0;
    base.warmup_cycles = 0;
    if (name == "cycle4") {
        base.routing = Routing::TFAR;
        base.mesh_x = std::max(base.mesh_x, 2);
        base.mesh_y = std::max(base.mesh_y, 2);
        base.traffic = Traffic::Uniform;
    } else if (name == "single") {
        base.mesh_x = std::max(base.mesh_x, 2);
        base.traffic = Traffic::Uniform;
    } else {
        throw ConfigError("scenario: unknown name '" + name + "'");
    }
    return base;
}

std::vector<PacketId> seed_scenario(const std::string& name, Engine& engine) {
    const auto& cfg = engine.config();
    if (name == "single") return {engine.enqueue_packet({0, 0}, {1, 0}, cfg.len_min)};
    if (name != "cycle4") throw ConfigError("scenario: unknown name '" + name + "'");

    using D = Direction;
    const int depth = cfg.buffer_depth;
    const int length = depth + 1;
    struct Spec {
        Coord src, dst, wait_at;
        D wait_port, hold;
    };
    // ring (0,0)->(1,0)->(1,1)->(0,1)->(0,0)
    const Spec specs[] = {
        {{0, 0}, {1, 1}, {1, 0}, D::West, D::East},
        {{1, 0}, {0, 1}, {1, 1}, D::South, D::North},
        {{1, 1}, {0, 0}, {0, 1}, D::East, D::West},
        {{0, 1}, {1, 0}, {0, 0}, D::North, D::South},
    };
    std::vector<PacketId> ids;
    for (const auto& s : specs) {
        const PlacedSegment segs[] = {
            {s.wait_at, s.wait_port, depth, std::nullopt},
            {s.src, D::Local, length - depth, s.hold},
        };
        ids.push_back(engine.place_packet(s.src, s.dst, length, segs));
    }
    return ids;
}

ScenarioResult run_scenario(const std::string& name, const SimConfig& base, Cycle cycles) {
    SimConfig cfg = scenario_config(name, base);
    cfg.sim_cycles = cycles;
    validate(cfg);
    Engine engine(cfg);
    engine.set_audit(true);

    ScenarioResult res;
    res.name = name;
    std::set<PacketId> on_bus;
    engine.set_observer([&](const Event& e) {
        res.events.push_back(e);
        switch (e.kind) {
            case EventKind::Move:
            case EventKind::Eject:
            case EventKind::BusWrite:
            case EventKind::BusBroadcast:
            case EventKind::BusEject: ++res.flit_movements; break;
            case EventKind::BusRequest:
                ++res.bus_requests;
                if (!res.first_bus_request) res.first_bus_request = e.cycle;
                break;
            default: break;
        }
        if (e.kind == EventKind::BusWrite && on_bus.insert(e.packet).second) res.bus_packets.push_back(e.packet);
    });

    res.placed = seed_scenario(name, engine);
    while (engine.cycle() < cycles) {
        engine.step();
        if (!res.all_delivered_cycle && engine.metrics().delivered() == static_cast<std::int64_t>(res.placed.size()) &&
            engine.packets_in_flight() == 0)
            res.all_delivered_cycle = engine.cycle() - 1;
    }
    res.report = engine.report();
    return res;
}

}  // namespace busnoc
