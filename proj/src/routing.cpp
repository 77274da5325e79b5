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

#include "busnoc/routing.hpp"

#include <algorithm>
#include <cassert>

namespace busnoc {

void CandidateSet::add(Direction d) {
    assert(port_index(d) < kMeshPorts);
    if (contains(d)) return;
    mask_ |= 1u << port_index(d);
    // keep canonical N, E, S, W order
    size_ = 0;
    for (auto m : kMeshDirections)
        if (contains(m)) dirs_[size_++] = m;
}

namespace {

Direction x_dir(const RouteRequest& r) { return r.dst.x > r.cur.x ? Direction::East : Direction::West; }
Direction y_dir(const RouteRequest& r) { return r.dst.y > r.cur.y ? Direction::North : Direction::South; }

void check_pre(const RouteRequest& r) {
    if (r.cur == r.dst) throw std::invalid_argument("route requested with cur == dst");
}

}  // namespace

CandidateSet route_xy(const RouteRequest& r) {
    check_pre(r);
    if (r.cur.x != r.dst.x) return {x_dir(r)};
    return {y_dir(r)};
}

CandidateSet route_west_first(const RouteRequest& r) {
    check_pre(r);
    if (r.dst.x < r.cur.x) return {Direction::West};
    CandidateSet out;
    if (r.dst.x > r.cur.x) out.add(Direction::East);
    if (r.dst.y != r.cur.y) out.add(y_dir(r));
    return out;
}

CandidateSet route_odd_even(const RouteRequest& r) {
    check_pre(r);
    const int dx = r.dst.x - r.cur.x;
    CandidateSet out;
    if (dx == 0) {
        out.add(y_dir(r));
        return out;
    }
    const bool cur_odd = (r.cur.x % 2) != 0;
    if (dx > 0) {
        if (r.dst.y == r.cur.y) {
            out.add(Direction::East);
            return out;
        }
        // Turning N/S here is an East->N/S turn only when the header is already travelling East.
        if (cur_odd || travel_direction(r.arrival_dir) != Direction::East) out.add(y_dir(r));
        // Avoid arriving East-bound in an even destination column that still needs a Y move.
        if ((r.dst.x % 2) != 0 || dx != 1) out.add(Direction::East);
        return out;
    }
    out.add(Direction::West);
    if (r.dst.y != r.cur.y && !cur_odd) out.add(y_dir(r));
    return out;
}

CandidateSet route_tfar(const RouteRequest& r) {
    check_pre(r);
    CandidateSet out;
    if (r.dst.x != r.cur.x) out.add(x_dir(r));
    if (r.dst.y != r.cur.y) out.add(y_dir(r));
    return out;
}

CandidateSet route(Routing algo, const RouteRequest& r) {
    switch (algo) {
        case Routing::XY: return route_xy(r);
        case Routing::WestFirst: return route_west_first(r);
        case Routing::OddEven: return route_odd_even(r);
        case Routing::TFAR: return route_tfar(r);
    }
    return {};
}

std::optional<Direction> travel_direction(Direction input_port) {
    switch (input_port) {
        case Direction::North:
        case Direction::South:
        case Direction::East:
        case Direction::West: return opposite(input_port);
        default: return std::nullopt;
    }
}

bool west_first_turn_allowed(std::optional<Direction> in, Direction out) {
    if (!in) return true;
    return !(out == Direction::West && *in != Direction::West);
}

bool odd_even_turn_allowed(int x, std::optional<Direction> in, Direction out) {
    if (!in) return true;
    const bool even = (x % 2) == 0;
    if (even && *in == Direction::East && (out == Direction::North || out == Direction::South))
        return false;
    if (!even && (*in == Direction::North || *in == Direction::South) && out == Direction::West)
        return false;
    return true;
}

Direction select_output(const CandidateSet& cands, const Congestion& free_slots) {
    if (cands.empty()) throw std::invalid_argument("select_output on empty candidate set");
    Direction best = cands[0];
    for (auto d : cands)
        if (free_slots[port_index(d)] > free_slots[port_index(best)]) best = d;
    return best;
}

}  // namespace busnoc
