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
 * @file routing.hpp
 * @brief Minimal routing functions for the 2D mesh and the output selection
 * policy used by the adaptive algorithms.
 *
 * All four algorithms are minimal: every candidate strictly reduces the
 * Manhattan distance to the destination.
 *
 *  - XY:         X dimension first, then Y. Deterministic.
 *  - West-First: if the destination lies west, only West is admissible;
 *                otherwise any productive direction among East/North/South.
 *  - Odd-Even:   Chiu's turn model. With travel directions (not port names):
 *                  rule 1: no East->North / East->South turn in an even column;
 *                  rule 2: no North->West / South->West turn in an odd column.
 *                The column is the x coordinate.
 *  - TFAR:       every productive direction, no turn restriction. Needs
 *                deadlock detection and recovery.
 *
 * `RouteRequest::arrival_dir` is the input port a header entered on (Local
 * for a freshly injected header). A header that entered on the West port is
 * travelling East.
 */

#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>

#include "busnoc/core.hpp"

namespace busnoc {

struct RouteRequest {
    Coord cur;
    Coord dst;
    Direction arrival_dir = Direction::Local;
};

/// Ordered, duplicate-free set of mesh directions (never Local or Bus).
/// Members are kept in North, East, South, West order.
class CandidateSet {
public:
    CandidateSet() = default;
    CandidateSet(std::initializer_list<Direction> dirs) {
        for (auto d : dirs) add(d);
    }

    void add(Direction d);
    bool contains(Direction d) const { return (mask_ >> port_index(d)) & 1u; }
    bool empty() const { return size_ == 0; }
    std::size_t size() const { return size_; }
    Direction operator[](std::size_t i) const { return dirs_[i]; }
    const Direction* begin() const { return dirs_.data(); }
    const Direction* end() const { return dirs_.data() + size_; }

    friend bool operator==(const CandidateSet& a, const CandidateSet& b) {
        return a.mask_ == b.mask_;
    }

private:
    std::array<Direction, kMeshPorts> dirs_{};
    std::size_t size_ = 0;
    unsigned mask_ = 0;
};

CandidateSet route_xy(const RouteRequest& r);
CandidateSet route_west_first(const RouteRequest& r);
CandidateSet route_odd_even(const RouteRequest& r);
CandidateSet route_tfar(const RouteRequest& r);

/// Dispatches to the configured algorithm. Requires r.cur != r.dst.
CandidateSet route(Routing algo, const RouteRequest& r);

/// Direction of travel implied by entering on `input_port`; nullopt for Local.
std::optional<Direction> travel_direction(Direction input_port);

/// Turn legality of travelling `in` then `out` at column `x`. `in` is nullopt
/// for injection, which is never restricted.
bool west_first_turn_allowed(std::optional<Direction> in, Direction out);
bool odd_even_turn_allowed(int x, std::optional<Direction> in, Direction out);

/// Free downstream slots per mesh direction, indexed by port_index.
using Congestion = std::array<int, kMeshPorts>;

/// Candidate whose downstream buffer has the most free slots; ties resolved
/// North < East < South < West. Requires a non-empty set.
Direction select_output(const CandidateSet& cands, const Congestion& free_slots);

}  // namespace busnoc
