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

#include "busnoc/traffic.hpp"

#include <bit>

namespace busnoc {

namespace {

int index_bits(const SimConfig& cfg) {
    const auto n = static_cast<unsigned>(cfg.node_count());
    if (!std::has_single_bit(n))
        throw ConfigError("traffic: pattern requires mesh_x*mesh_y to be a power of two");
    return std::countr_zero(n);
}

}  // namespace

NodeRng::NodeRng(std::uint64_t seed, int node) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(node), 0x6e6f63u};
    engine_.seed(seq);
}

double NodeRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

int NodeRng::uniform_int(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    // rejection keeps the draw exactly uniform
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t v;
    do v = engine_();
    while (v >= limit);
    return lo + static_cast<int>(v % span);
}

Coord dest_uniform(Coord src, const SimConfig& cfg, NodeRng& rng) {
    const int n = cfg.node_count();
    if (n < 2) throw ConfigError("traffic: uniform pattern needs at least 2 nodes");
    const int s = node_index(src, cfg);
    int d = rng.uniform_int(0, n - 2);
    if (d >= s) ++d;
    return index_to_coord(d, cfg);
}

Coord dest_transpose1(Coord src, const SimConfig& cfg) {
    if (cfg.mesh_x != cfg.mesh_y) throw ConfigError("traffic: transpose1 requires mesh_x == mesh_y");
    return {cfg.mesh_y - 1 - src.y, cfg.mesh_x - 1 - src.x};
}

Coord dest_bit_reversal(Coord src, const SimConfig& cfg) {
    const int bits = index_bits(cfg);
    const unsigned i = static_cast<unsigned>(node_index(src, cfg));
    unsigned r = 0;
    for (int b = 0; b < bits; ++b)
        if ((i >> b) & 1u) r |= 1u << (bits - 1 - b);
    return index_to_coord(static_cast<int>(r), cfg);
}

Coord dest_butterfly(Coord src, const SimConfig& cfg) {
    const int bits = index_bits(cfg);
    unsigned i = static_cast<unsigned>(node_index(src, cfg));
    if (bits >= 2) {
        const unsigned lsb = i & 1u;
        const unsigned msb = (i >> (bits - 1)) & 1u;
        i &= ~(1u | (1u << (bits - 1)));
        i |= msb | (lsb << (bits - 1));
    }
    return index_to_coord(static_cast<int>(i), cfg);
}

std::optional<Coord> pattern_destination(Coord src, const SimConfig& cfg, NodeRng& rng) {
    Coord d;
    switch (cfg.traffic) {
        case Traffic::Uniform: d = dest_uniform(src, cfg, rng); break;
        case Traffic::Transpose1: d = dest_transpose1(src, cfg); break;
        case Traffic::BitReversal: d = dest_bit_reversal(src, cfg); break;
        case Traffic::Butterfly: d = dest_butterfly(src, cfg); break;
    }
    if (d == src) return std::nullopt;
    return d;
}

TrafficGenerator::TrafficGenerator(const SimConfig& cfg) : cfg_(cfg) {
    rngs_.reserve(static_cast<std::size_t>(cfg.node_count()));
    for (int n = 0; n < cfg.node_count(); ++n) rngs_.emplace_back(cfg.seed, n);
}

std::optional<PacketDescriptor> TrafficGenerator::maybe_inject(int node, Cycle cycle) {
    auto& rng = rngs_[static_cast<std::size_t>(node)];
    if (!rng.bernoulli(cfg_.pir)) return std::nullopt;
    const Coord src = index_to_coord(node, cfg_);
    const auto dst = pattern_destination(src, cfg_, rng);
    if (!dst) return std::nullopt;
    PacketDescriptor p;
    p.src = src;
    p.dst = *dst;
    p.length = rng.uniform_int(cfg_.len_min, cfg_.len_max);
    p.created_cycle = cycle;
    return p;
}

}  // namespace busnoc
