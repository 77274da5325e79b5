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
 * @file engine.hpp
 * @brief Deterministic cycle loop tying routers, links, the recovery bus,
 * PEs, traffic and metrics together.
 *
 * One call to step() runs these phases in order:
 *
 *   1. bus control: the arbiter absorbs last cycle's cancels and requests,
 *      grants if free; routers receive last cycle's grant
 *   2. per router: requests, deadlock presumption, BR / cancel issuance
 *   3. per router: arbitration and reservation
 *   4. collect every flit movement (links, ejection, bus) from the current
 *      state, which is only read here
 *   5. commit all movements at once
 *   6. reset counters of outputs that moved a flit, tick the rest
 *   7. traffic generation and source-queue draining into Local inputs
 *   8. audit (when enabled)
 *
 * Control signals (BR, BG, cancel) are latched and act one cycle after
 * they are issued. Because phase 4 never writes, the outcome does not
 * depend on the order routers are visited.
 */

#pragma once

#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "busnoc/bus_recovery.hpp"
#include "busnoc/core.hpp"
#include "busnoc/metrics.hpp"
#include "busnoc/router.hpp"
#include "busnoc/traffic.hpp"

namespace busnoc {

enum class EventKind : std::uint8_t {
    Generate,     // packet enters the source queue
    Inject,       // flit enters the Local input FIFO
    Route,        // header granted an output
    Move,         // flit crosses a mesh link
    Eject,        // flit consumed by the PE from its router
    Detect,       // header presumed deadlocked
    BusRequest,   // BR issued
    BusGrant,     // BG issued by the arbiter
    BusAccept,    // router takes its grant
    BusCancel,    // router withdraws a request or declines a grant
    BusRelease,   // holder gives the bus back after its Tail
    BusWrite,     // flit into the bus input buffer
    BusBroadcast, // flit from input buffer to the output buffers
    BusEject,     // flit consumed by the PE from the bus
};

std::string_view to_string(EventKind k);

struct Event {
    Cycle cycle = 0;
    EventKind kind = EventKind::Generate;
    int node = -1;                     // router / PE index; -1 for bus-wide events
    Direction port = Direction::Local; // input port involved
    Direction out = Direction::Local;  // output taken (Route, Move)
    PacketId packet = 0;
    int seq = 0;
    int length = 0;  // packet length for flit events, not part of the log line
};

/// "cycle entity kind packet seq", e.g. "12 r5.W move 17 3".
std::string format_event(const Event& e);

/// Piece of a pre-placed packet: `flits` consecutive flits in the input FIFO
/// `port` of `node`, optionally holding a reservation of output `reserve`.
struct PlacedSegment {
    Coord node;
    Direction port = Direction::Local;
    int flits = 0;
    std::optional<Direction> reserve;
};

class RunTimeout : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Engine {
public:
    explicit Engine(const SimConfig& cfg);

    void step();
    /// Steps until cycle == sim_cycles, then returns the report.
    Report run();
    Report report() const;

    void set_observer(std::function<void(const Event&)> fn) { observer_ = std::move(fn); }
    void set_audit(bool on) { audit_ = on; }
    /// Throws InvariantViolation on any broken state invariant.
    void audit() const;

    /// Places a packet directly into router buffers. Segments are listed
    /// header first and must account for every flit.
    PacketId place_packet(Coord src, Coord dst, int length, std::span<const PlacedSegment> segments);
    /// Adds a packet to the source queue of `src` as if generated this cycle.
    PacketId enqueue_packet(Coord src, Coord dst, int length);

    const SimConfig& config() const { return cfg_; }
    Cycle cycle() const { return cycle_; }
    const RouterState& router(int node) const { return routers_[static_cast<std::size_t>(node)]; }
    const BusArbiter& arbiter() const { return arbiter_; }
    const BusDatapath& bus() const { return bus_; }
    const PeReceiver& pe(int node) const { return pes_[static_cast<std::size_t>(node)]; }
    const MetricsAccumulator& metrics() const { return metrics_; }
    std::size_t source_queue_size(int node) const { return sources_[static_cast<std::size_t>(node)].queue.size(); }
    std::int64_t flits_in_network() const;
    std::int64_t packets_in_flight() const;
    std::int64_t packets_queued() const;

private:
    struct Source {
        std::deque<PacketDescriptor> queue;
        std::optional<PacketDescriptor> active;
        int next_seq = 0;
    };

    void phase_bus_control();
    void phase_requests();
    void phase_arbitrate();
    void phase_traverse();
    void phase_counters();
    void phase_inject();

    void issue_cancel(RouterState& r);
    void emit(EventKind kind, int node, Direction port, Direction out, PacketId pkt, int seq, int length = 0);
    int neighbor(int node, Direction d) const;
    Congestion congestion(int node) const;
    std::string where(int node) const;

    SimConfig cfg_;
    Cycle cycle_ = 0;
    std::vector<RouterState> routers_;
    std::vector<int> neighbors_;  // node * 4 + dir -> node or -1
    BusArbiter arbiter_;
    BusDatapath bus_;
    std::vector<PeReceiver> pes_;
    std::vector<Source> sources_;
    TrafficGenerator traffic_;
    MetricsAccumulator metrics_;

    std::vector<RequestSet> requests_;
    std::vector<std::array<bool, kRouterPorts>> moved_;

    // latched control wires, consumed next cycle
    std::vector<BusRequest> wire_br_;
    std::vector<int> wire_cancel_;
    std::optional<BusRequest> wire_bg_;

    std::optional<PacketId> bus_packet_;  // message currently occupying the bus
    PacketId next_packet_id_ = 1;
    std::int64_t flits_injected_ = 0;
    std::int64_t flits_consumed_ = 0;
    std::int64_t max_queue_ = 0;
    bool saturated_ = false;
    bool audit_ = false;
    std::function<void(const Event&)> observer_;
};

/// Validates the configuration, runs it to completion and returns the report.
Report run(const SimConfig& cfg);

}  // namespace busnoc
