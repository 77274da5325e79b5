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

#include "busnoc/router.hpp"

#include <string>

namespace busnoc {

FlitFifo::FlitFifo(int capacity) : slots_(static_cast<std::size_t>(capacity)) {
    if (capacity < 1) throw std::invalid_argument("fifo capacity must be >= 1");
}

void FlitFifo::push(const Flit& f) {
    if (full()) throw InvariantViolation("fifo overflow (capacity " + std::to_string(capacity()) + ")");
    slots_[static_cast<std::size_t>((head_ + size_) % capacity())] = f;
    ++size_;
}

Flit FlitFifo::pop() {
    if (empty()) throw InvariantViolation("pop from empty fifo");
    Flit f = slots_[static_cast<std::size_t>(head_)];
    head_ = (head_ + 1) % capacity();
    --size_;
    return f;
}

RouterState::RouterState(int node_id, Coord position, int buffer_depth, int threshold_log2)
    : id(node_id), pos(position) {
    for (int i = 0; i < kRouterPorts; ++i) {
        in[i].dir = static_cast<Direction>(i);
        in[i].fifo = FlitFifo(buffer_depth);
        out[i].dir = static_cast<Direction>(i);
        out[i].counter = InactivityCounter(threshold_log2);
    }
}

std::array<OutputView, kRouterPorts> RouterState::output_views() const {
    std::array<OutputView, kRouterPorts> v;
    for (int i = 0; i < kRouterPorts; ++i) v[i] = {out[i].busy, out[i].counter};
    return v;
}

void accept_flit(InputChannel& ch, const Flit& f) {
    if (ch.fifo.full())
        throw InvariantViolation("input " + std::string(to_string(ch.dir)) + " overflow on packet " +
                                 std::to_string(f.packet_id));
    ch.fifo.push(f);
}

bool HeaderRequest::requests(Direction d) const {
    for (auto o : outputs())
        if (o == d) return true;
    return false;
}

const HeaderRequest* RequestSet::find(int channel) const {
    for (const auto& e : items())
        if (e.channel == channel) return &e;
    return nullptr;
}

RequestSet compute_requests(const RouterState& r, Routing algo) {
    RequestSet rs;
    for (int c = 0; c < kRouterPorts; ++c) {
        const auto& ch = r.in[c];
        if (ch.reserved_output || ch.fifo.empty()) continue;
        const Flit& head = ch.fifo.front();
        if (head.kind != FlitKind::Header) continue;
        HeaderRequest req;
        req.channel = c;
        if (head.dst == r.pos) {
            req.dirs[0] = Direction::Local;
            req.count = 1;
        } else {
            const auto cands = route(algo, {r.pos, head.dst, ch.dir});
            for (auto d : cands) req.dirs[static_cast<std::size_t>(req.count++)] = d;
        }
        rs.entries[static_cast<std::size_t>(rs.count++)] = req;
    }
    return rs;
}

std::vector<Grant> arbitrate(RouterState& r, const RequestSet& requests, const Congestion& free_slots) {
    // bids[output] = bitmask of bidding channels
    std::array<unsigned, kRouterPorts> bids{};
    for (const auto& req : requests.items()) {
        if (req.count == 1 && req.dirs[0] == Direction::Local) {
            if (!r.output(Direction::Local).busy) bids[port_index(Direction::Local)] |= 1u << req.channel;
            continue;
        }
        CandidateSet free;
        for (auto d : req.outputs())
            if (!r.output(d).busy) free.add(d);
        if (free.empty()) continue;
        bids[static_cast<std::size_t>(port_index(select_output(free, free_slots)))] |= 1u << req.channel;
    }

    std::vector<Grant> grants;
    for (int o = 0; o < kRouterPorts; ++o) {
        if (!bids[o]) continue;
        for (int k = 0; k < kRouterPorts; ++k) {
            const int c = (r.rr_pointer[o] + k) % kRouterPorts;
            if (!((bids[o] >> c) & 1u)) continue;
            auto& port = r.out[o];
            port.busy = true;
            port.holder = c;
            r.in[c].reserved_output = static_cast<Direction>(o);
            r.rr_pointer[o] = (c + 1) % kRouterPorts;
            grants.push_back({c, static_cast<Direction>(o)});
            break;
        }
    }
    return grants;
}

std::vector<Movement> forward_flits(const RouterState& r, const DownstreamReady& ready) {
    std::vector<Movement> moves;
    for (int c = 0; c < kRouterPorts; ++c) {
        const auto& ch = r.in[c];
        if (!ch.reserved_output || ch.fifo.empty()) continue;
        const auto o = *ch.reserved_output;
        if (ready[static_cast<std::size_t>(port_index(o))]) moves.push_back({c, o});
    }
    return moves;
}

Flit depart(RouterState& r, int channel) {
    auto& ch = r.in[channel];
    if (!ch.reserved_output) throw InvariantViolation("departure from unreserved channel");
    const Flit f = ch.fifo.pop();
    if (f.kind == FlitKind::Tail) {
        const auto o = *ch.reserved_output;
        ch.reserved_output.reset();
        if (o != Direction::Bus) {
            auto& port = r.output(o);
            port.busy = false;
            port.holder = -1;
        }
    }
    return f;
}

int busy_outputs(const RouterState& r) {
    int n = 0;
    for (auto d : kMeshDirections) n += r.output(d).busy ? 1 : 0;
    return n;
}

bool injection_allowed(const RouterState& r, std::optional<int> limit) {
    return !limit || busy_outputs(r) <= *limit;
}

}  // namespace busnoc
