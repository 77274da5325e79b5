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
 * @file bus_recovery.hpp
 * @brief Global recovery bus: FIFO arbiter, one-flit datapath buffers, and
 * the processing-element receive state machine.
 *
 * Protocol summary:
 *  - A router whose blocked header is presumed deadlocked raises BR. The
 *    arbiter queues requests in arrival order, at most one per router.
 *  - With the bus free, the head of the queue is popped and granted (BG).
 *    Only one grant is outstanding at any time.
 *  - The granted router moves the message, one flit per cycle, into the
 *    bus input buffer. Every output buffer sees the flit one cycle later;
 *    only the destination's OB can stall the bus.
 *  - Placing the Tail on the bus, or giving up a request, sends a cancel.
 *    Cancelling the holder frees the bus and the next head is granted.
 *  - The PE gives the bus priority on simultaneous headers, but never
 *    interrupts a message already arriving from its router.
 */

#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "busnoc/core.hpp"

namespace busnoc {

struct BusRequest {
    int router = -1;
    int channel = -1;

    friend bool operator==(const BusRequest&, const BusRequest&) = default;
};

class BusArbiter {
public:
    explicit BusArbiter(std::size_t capacity = 64) : capacity_(capacity) {}

    /// Appends a request; a router already queued or holding the grant is ignored.
    void request_bus(int router, int channel);
    /// Removes the router's request or releases its grant. Returns a grant
    /// issued as a consequence, if any.
    std::optional<BusRequest> cancel_request(int router);
    /// Grants the head of the queue when the bus is free.
    std::optional<BusRequest> arbiter_step();

    const std::deque<BusRequest>& queue() const { return queue_; }
    const std::optional<BusRequest>& grant() const { return grant_; }
    bool has_request(int router) const;

private:
    std::size_t capacity_;
    std::deque<BusRequest> queue_;
    std::optional<BusRequest> grant_;
};

/// One-flit input buffer and per-node one-flit output buffers.
struct BusDatapath {
    std::optional<Flit> ib;
    std::vector<std::optional<Flit>> ob;

    explicit BusDatapath(int nodes = 0) : ob(static_cast<std::size_t>(nodes)) {}

    /// The flit in `ob[node]` if it is addressed to `node`.
    const Flit* flit_for(int node, Coord pos) const;
};

enum class PeSource : std::uint8_t { Idle, FromRouter, FromBus };

struct PeDecision {
    bool take_bus = false;
    bool take_router = false;
};

class PeReceiver {
public:
    PeSource active_source() const { return active_; }
    bool pending_bus_header() const { return pending_bus_header_; }

    /// Which of the offered flits (either may be null) is consumed this cycle.
    PeDecision decide(const Flit* bus_flit, const Flit* router_flit) const;

    /// Advances the state machine for a consumed flit. Out-of-order flits on
    /// the active stream are a simulator bug.
    void consume(PeSource from, const Flit& f);
    void set_pending_bus_header(bool v) { pending_bus_header_ = v; }

private:
    PeSource active_ = PeSource::Idle;
    bool pending_bus_header_ = false;
    PacketId packet_ = 0;
    int next_seq_ = 0;
};

}  // namespace busnoc
