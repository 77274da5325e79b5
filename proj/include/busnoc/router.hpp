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
 * @file router.hpp
 * @brief Input-buffered wormhole router without virtual channels.
 *
 * Five input channels (N, E, S, W, Local), each a FIFO of buffer_depth
 * flits, and five output ports. A header at the head of a FIFO computes its
 * candidate outputs, bids for one free candidate, and on winning reserves
 * that output until its tail departs. Body and tail flits follow the
 * reservation. A channel granted the recovery bus reserves the Bus output,
 * which has no OutputPort entry and is not counted as a physical channel.
 *
 * Routing, arbitration and one flit of traversal all complete in the same
 * cycle; the link itself takes one cycle.
 */

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "busnoc/core.hpp"
#include "busnoc/deadlock_detect.hpp"
#include "busnoc/routing.hpp"

namespace busnoc {

/// Fixed-capacity FIFO of flits.
class FlitFifo {
public:
    explicit FlitFifo(int capacity = 4);

    void push(const Flit& f);
    Flit pop();
    const Flit& front() const { return slots_[head_]; }
    const Flit& at(int i) const { return slots_[(head_ + i) % capacity()]; }

    int size() const { return size_; }
    int capacity() const { return static_cast<int>(slots_.size()); }
    int free_slots() const { return capacity() - size_; }
    bool empty() const { return size_ == 0; }
    bool full() const { return size_ == capacity(); }

private:
    std::vector<Flit> slots_;
    int head_ = 0;
    int size_ = 0;
};

struct InputChannel {
    Direction dir = Direction::Local;
    FlitFifo fifo;
    std::optional<Direction> reserved_output;
    /// Header at the head is currently presumed deadlocked.
    bool presumed = false;
};

struct OutputPort {
    Direction dir = Direction::Local;
    bool busy = false;
    int holder = -1;  // input channel index when busy
    InactivityCounter counter;
};

enum class BusRequestState : std::uint8_t { Idle, Queued, Granted };

struct RouterState {
    int id = 0;
    Coord pos;
    std::array<InputChannel, kRouterPorts> in;
    std::array<OutputPort, kRouterPorts> out;
    std::array<int, kRouterPorts> rr_pointer{};
    BusRequestState bus_state = BusRequestState::Idle;
    int bus_channel = -1;

    RouterState(int node_id, Coord position, int buffer_depth, int threshold_log2);

    InputChannel& input(Direction d) { return in[static_cast<std::size_t>(port_index(d))]; }
    const InputChannel& input(Direction d) const { return in[static_cast<std::size_t>(port_index(d))]; }
    OutputPort& output(Direction d) { return out[static_cast<std::size_t>(port_index(d))]; }
    const OutputPort& output(Direction d) const { return out[static_cast<std::size_t>(port_index(d))]; }

    std::array<OutputView, kRouterPorts> output_views() const;
};

/// Appends to the channel FIFO. Overflow is a simulator bug.
void accept_flit(InputChannel& ch, const Flit& f);

/// Outputs requested by one unrouted header. Local appears alone, for ejection.
struct HeaderRequest {
    int channel = -1;
    std::array<Direction, kMeshPorts> dirs{};
    int count = 0;
    std::span<const Direction> outputs() const { return {dirs.data(), static_cast<std::size_t>(count)}; }
    bool requests(Direction d) const;
};

struct RequestSet {
    std::array<HeaderRequest, kRouterPorts> entries{};
    int count = 0;
    std::span<const HeaderRequest> items() const { return {entries.data(), static_cast<std::size_t>(count)}; }
    const HeaderRequest* find(int channel) const;
};

/// One entry per input channel whose head flit is an unrouted Header.
RequestSet compute_requests(const RouterState& r, Routing algo);

struct Grant {
    int channel;
    Direction output;
};

/// Each requester bids for its best free candidate (select_output over
/// `free_slots`); each free output goes to one bidder by round-robin. Winners
/// get their reservation set and the port marked busy.
std::vector<Grant> arbitrate(RouterState& r, const RequestSet& requests, const Congestion& free_slots);

/// Whether each reserved output can take one flit this cycle, by port_index
/// (N, E, S, W, Local, Bus).
using DownstreamReady = std::array<bool, kRouterPorts + 1>;

struct Movement {
    int channel;
    Direction output;
};

/// One movement per reserved channel with a flit waiting whose downstream
/// can accept. At most one per output since reservations are exclusive.
std::vector<Movement> forward_flits(const RouterState& r, const DownstreamReady& ready);

/// Pops the head flit of `channel` for departure; a departing Tail clears
/// the reservation and frees the output port.
Flit depart(RouterState& r, int channel);

/// Busy non-Local output ports.
int busy_outputs(const RouterState& r);
bool injection_allowed(const RouterState& r, std::optional<int> limit);

}  // namespace busnoc
