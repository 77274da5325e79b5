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

/**
 * @file core.hpp
 * @brief Shared domain types for the mesh simulator: coordinates, port
 * directions, flits and the run configuration record.
 *
 * Coordinates are (x, y) with x the column and y the row. North is +y and
 * East is +x. Nodes are flattened row-major with x as the low digit, so on a
 * 4x4 mesh node (2,1) has index 6.
 */

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace busnoc {

using Cycle = std::int64_t;
using PacketId = std::uint64_t;

/// Raised for any configuration value that violates a documented constraint.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when the simulator detects a broken internal invariant.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct Coord {
    int x = 0;
    int y = 0;

    friend constexpr bool operator==(Coord, Coord) = default;
};

/// Tie-break order for output selection follows the enumerator order
/// North < East < South < West.
enum class Direction : std::uint8_t { North = 0, East = 1, South = 2, West = 3, Local = 4, Bus = 5 };

inline constexpr int kMeshPorts = 4;     // N, E, S, W
inline constexpr int kRouterPorts = 5;   // plus Local
inline constexpr std::array<Direction, kMeshPorts> kMeshDirections = {
    Direction::North, Direction::East, Direction::South, Direction::West};

constexpr int port_index(Direction d) { return static_cast<int>(d); }

constexpr Direction opposite(Direction d) {
    switch (d) {
        case Direction::North: return Direction::South;
        case Direction::South: return Direction::North;
        case Direction::East: return Direction::West;
        case Direction::West: return Direction::East;
        default: return d;
    }
}

/// Neighbour of `c` one hop in mesh direction `d` (no bounds check).
constexpr Coord step(Coord c, Direction d) {
    switch (d) {
        case Direction::North: return {c.x, c.y + 1};
        case Direction::South: return {c.x, c.y - 1};
        case Direction::East: return {c.x + 1, c.y};
        case Direction::West: return {c.x - 1, c.y};
        default: return c;
    }
}

constexpr int manhattan(Coord a, Coord b) {
    return (a.x > b.x ? a.x - b.x : b.x - a.x) + (a.y > b.y ? a.y - b.y : b.y - a.y);
}

enum class FlitKind : std::uint8_t { Header, Body, Tail };

struct Flit {
    FlitKind kind = FlitKind::Header;
    PacketId packet_id = 0;
    Coord src;
    Coord dst;
    int seq = 0;
    int length = 0;
    Cycle created_cycle = 0;
};

/// Builds flit `seq` of a packet; Header at 0, Tail at length-1.
Flit make_flit(PacketId id, Coord src, Coord dst, int seq, int length, Cycle created);

enum class Routing : std::uint8_t { XY, WestFirst, OddEven, TFAR };
enum class Recovery : std::uint8_t { None, Bus };
enum class Traffic : std::uint8_t { Uniform, Transpose1, BitReversal, Butterfly };

struct SimConfig {
    int mesh_x = 4;
    int mesh_y = 4;
    Routing routing = Routing::TFAR;
    Recovery recovery = Recovery::Bus;
    int threshold_log2 = 5;
    Traffic traffic = Traffic::Uniform;
    double pir = 0.01;
    int len_min = 4;
    int len_max = 10;
    int buffer_depth = 4;
    std::optional<int> injection_limit;
    Cycle warmup_cycles = 1000;
    Cycle sim_cycles = 10000;
    std::uint64_t seed = 1;
    // Source-queue length (packets, any node) above which a run is flagged saturated.
    std::int64_t saturation_queue_limit = 10000;
    // Wall-clock cap per run; 0 disables.
    double max_wall_seconds = 120.0;

    int node_count() const { return mesh_x * mesh_y; }
    Cycle threshold() const { return Cycle{1} << threshold_log2; }
};

/// Throws ConfigError naming the offending key and constraint.
void validate(const SimConfig& cfg);

int node_index(Coord c, const SimConfig& cfg);
Coord index_to_coord(int i, const SimConfig& cfg);
bool in_bounds(Coord c, const SimConfig& cfg);

std::string_view to_string(Direction d);
std::string_view to_string(Routing r);
std::string_view to_string(Recovery r);
std::string_view to_string(Traffic t);
std::string_view to_string(FlitKind k);

Routing parse_routing(std::string_view s);
Recovery parse_recovery(std::string_view s);
Traffic parse_traffic(std::string_view s);

std::string to_string(Coord c);

}  // namespace busnoc
