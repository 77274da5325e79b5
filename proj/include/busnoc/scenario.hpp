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
 * @file scenario.hpp
 * @brief Constructed network states for exercising detection and recovery.
 *
 * "cycle4" pre-places four packets on the lower-left 2x2 block so that
 * each holds one channel of the ring (0,0)->(1,0)->(1,1)->(0,1)->(0,0)
 * and its header waits for the next one:
 *
 *     packet  src    dst    header waits at   holds (tail reserves)
 *     A       (0,0)  (1,1)  (1,0) W input     (0,0) East
 *     B       (1,0)  (0,1)  (1,1) S input     (1,0) North
 *     C       (1,1)  (0,0)  (0,1) E input     (1,1) West
 *     D       (0,1)  (1,0)  (0,0) N input     (0,1) South
 *
 * Each packet is buffer_depth + 1 flits: a full FIFO downstream plus its
 * Tail in the source's Local input holding the reservation. The block is
 * legal under TFAR and forms at cycle 0.
 *
 * "single" places nothing and injects one packet from (0,0) to (1,0) at
 * cycle 0 on an otherwise idle network.
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "busnoc/core.hpp"
#include "busnoc/engine.hpp"

namespace busnoc {

struct ScenarioResult {
    std::string name;
    Report report;
    std::int64_t flit_movements = 0;           // link + ejection + bus flit moves
    std::int64_t bus_requests = 0;
    std::optional<Cycle> first_bus_request;
    std::vector<PacketId> bus_packets;         // distinct messages written to the bus
    std::vector<PacketId> placed;              // packets pre-seeded by the scenario
    std::optional<Cycle> all_delivered_cycle;  // cycle the last placed packet's Tail arrived
    std::vector<Event> events;
};

std::vector<std::string> scenario_names();

/// Configuration the named scenario runs with, derived from `base`
/// (mesh forced to at least 2x2 for cycle4, pir 0, TFAR routing).
SimConfig scenario_config(const std::string& name, SimConfig base);

/// Builds the engine for a named scenario; returns the pre-placed packet ids.
std::vector<PacketId> seed_scenario(const std::string& name, Engine& engine);

/// Runs `cycles` cycles of the named scenario and summarises the event log.
ScenarioResult run_scenario(const std::string& name, const SimConfig& base, Cycle cycles);

}  // namespace busnoc
