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

#include "busnoc/core.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace busnoc {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::string normalize(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '_' || c == '-') continue;
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

[[noreturn]] void fail(const std::string& key, const std::string& what) {
    throw ConfigError(key + ": " + what);
}

}  // namespace

Flit make_flit(PacketId id, Coord src, Coord dst, int seq, int length, Cycle created) {
    Flit f;
    f.kind = seq == 0 ? FlitKind::Header : (seq == length - 1 ? FlitKind::Tail : FlitKind::Body);
    f.packet_id = id;
    f.src = src;
    f.dst = dst;
    f.seq = seq;
    f.length = length;
    f.created_cycle = created;
    return f;
}

void validate(const SimConfig& cfg) {
    if (cfg.mesh_x < 1) fail("mesh_x", "must be >= 1");
    if (cfg.mesh_y < 1) fail("mesh_y", "must be >= 1");
    if (cfg.node_count() < 2) fail("mesh_x", "mesh must contain at least 2 nodes");
    if (cfg.threshold_log2 < 1) fail("threshold_log2", "must be >= 1");
    if (cfg.threshold_log2 > 30) fail("threshold_log2", "must be <= 30");
    if (!(cfg.pir >= 0.0 && cfg.pir <= 1.0)) fail("pir", "must lie in [0, 1]");
    if (cfg.len_min < 2) fail("len_min", "must be >= 2");
    if (cfg.len_max < cfg.len_min) fail("len_max", "must be >= len_min");
    if (cfg.buffer_depth < 1) fail("buffer_depth", "must be >= 1");
    if (cfg.injection_limit && *cfg.injection_limit < 0) fail("injection_limit", "must be >= 0");
    if (cfg.warmup_cycles < 0) fail("warmup_cycles", "must be >= 0");
    if (cfg.sim_cycles < 0) fail("sim_cycles", "must be >= 0");
    if (cfg.warmup_cycles > cfg.sim_cycles) fail("warmup_cycles", "must be <= sim_cycles");
    if (cfg.saturation_queue_limit < 1) fail("saturation_queue_limit", "must be >= 1");
    if (cfg.max_wall_seconds < 0) fail("max_wall_seconds", "must be >= 0");
    switch (cfg.traffic) {
        case Traffic::Transpose1:
            if (cfg.mesh_x != cfg.mesh_y) fail("traffic", "transpose1 requires mesh_x == mesh_y");
            break;
        case Traffic::BitReversal:
        case Traffic::Butterfly:
            if (!is_power_of_two(cfg.node_count()))
                fail("traffic", std::string(to_string(cfg.traffic)) +
                                    " requires mesh_x*mesh_y to be a power of two");
            break;
        case Traffic::Uniform: break;
    }
}

bool in_bounds(Coord c, const SimConfig& cfg) {
    return c.x >= 0 && c.x < cfg.mesh_x && c.y >= 0 && c.y < cfg.mesh_y;
}

int node_index(Coord c, const SimConfig& cfg) {
    if (!in_bounds(c, cfg))
        throw std::out_of_range("coordinate " + to_string(c) + " outside " +
                                std::to_string(cfg.mesh_x) + "x" + std::to_string(cfg.mesh_y) +
                                " mesh");
    return c.y * cfg.mesh_x + c.x;
}

Coord index_to_coord(int i, const SimConfig& cfg) {
    if (i < 0 || i >= cfg.node_count())
        throw std::out_of_range("node index " + std::to_string(i) + " outside [0, " +
                                std::to_string(cfg.node_count()) + ")");
    return {i % cfg.mesh_x, i / cfg.mesh_x};
}

std::string_view to_string(Direction d) {
    switch (d) {
        case Direction::North: return "N";
        case Direction::East: return "E";
        case Direction::South: return "S";
        case Direction::West: return "W";
        case Direction::Local: return "L";
        case Direction::Bus: return "B";
    }
    return "?";
}

std::string_view to_string(Routing r) {
    switch (r) {
        case Routing::XY: return "xy";
        case Routing::WestFirst: return "westfirst";
        case Routing::OddEven: return "oddeven";
        case Routing::TFAR: return "tfar";
    }
    return "?";
}

std::string_view to_string(Recovery r) { return r == Recovery::Bus ? "bus" : "none"; }

std::string_view to_string(Traffic t) {
    switch (t) {
        case Traffic::Uniform: return "uniform";
        case Traffic::Transpose1: return "transpose1";
        case Traffic::BitReversal: return "bitreversal";
        case Traffic::Butterfly: return "butterfly";
    }
    return "?";
}

std::string_view to_string(FlitKind k) {
    switch (k) {
        case FlitKind::Header: return "H";
        case FlitKind::Body: return "B";
        case FlitKind::Tail: return "T";
    }
    return "?";
}

Routing parse_routing(std::string_view s) {
    const auto n = normalize(s);
    if (n == "xy") return Routing::XY;
    if (n == "westfirst" || n == "wf") return Routing::WestFirst;
    if (n == "oddeven" || n == "oe") return Routing::OddEven;
    if (n == "tfar") return Routing::TFAR;
    fail("routing", "unknown algorithm '" + std::string(s) + "' (xy, westfirst, oddeven, tfar)");
}

Recovery parse_recovery(std::string_view s) {
    const auto n = normalize(s);
    if (n == "none") return Recovery::None;
    if (n == "bus") return Recovery::Bus;
    fail("recovery", "unknown mode '" + std::string(s) + "' (none, bus)");
}

Traffic parse_traffic(std::string_view s) {
    const auto n = normalize(s);
    if (n == "uniform") return Traffic::Uniform;
    if (n == "transpose1" || n == "transpose") return Traffic::Transpose1;
    if (n == "bitreversal") return Traffic::BitReversal;
    if (n == "butterfly") return Traffic::Butterfly;
    fail("traffic",
         "unknown pattern '" + std::string(s) + "' (uniform, transpose1, bit_reversal, butterfly)");
}

std::string to_string(Coord c) {
    return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

}  // namespace busnoc
