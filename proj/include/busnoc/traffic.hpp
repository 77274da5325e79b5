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
 * @file traffic.hpp
 * @brief Synthetic packet generation.
 *
 * Each node draws one Bernoulli(pir) trial per cycle. A success picks a
 * destination from the configured pattern and a length uniform over
 * [len_min, len_max]. Patterns that map a node onto itself (fixed points)
 * generate nothing that cycle.
 *
 * Patterns over the row-major node index i (n = log2(node count) bits):
 *  - transpose1:   (x, y) -> (mesh_y-1-y, mesh_x-1-x)
 *  - bit reversal: i -> bits of i reversed
 *  - butterfly:    i -> i with its most and least significant bits swapped
 *
 * Every node owns an RNG stream seeded from (seed, node index), so a node's
 * injection trace does not depend on any other node.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "busnoc/core.hpp"

namespace busnoc {

struct PacketDescriptor {
    PacketId id = 0;
    Coord src;
    Coord dst;
    int length = 0;
    Cycle created_cycle = 0;
};

class NodeRng {
public:
    NodeRng(std::uint64_t seed, int node);

    /// Uniform on [0, 1) from the top 53 bits.
    double uniform();
    bool bernoulli(double p) { return uniform() < p; }
    /// Uniform integer on [lo, hi].
    int uniform_int(int lo, int hi);

private:
    std::mt19937_64 engine_;
};

Coord dest_uniform(Coord src, const SimConfig& cfg, NodeRng& rng);
Coord dest_transpose1(Coord src, const SimConfig& cfg);
Coord dest_bit_reversal(Coord src, const SimConfig& cfg);
Coord dest_butterfly(Coord src, const SimConfig& cfg);

/// Pattern destination; nullopt for a fixed point.
std::optional<Coord> pattern_destination(Coord src, const SimConfig& cfg, NodeRng& rng);

class TrafficGenerator {
public:
    explicit TrafficGenerator(const SimConfig& cfg);

    /// Packet descriptor for `node` this cycle, if one is generated. The id
    /// is left at 0 for the caller to assign.
    std::optional<PacketDescriptor> maybe_inject(int node, Cycle cycle);

private:
    SimConfig cfg_;
    std::vector<NodeRng> rngs_;
};

}  // namespace busnoc
