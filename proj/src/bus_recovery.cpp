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

#include "busnoc/bus_recovery.hpp"

#include <algorithm>
#include <string>

namespace busnoc {

bool BusArbiter::has_request(int router) const {
    if (grant_ && grant_->router == router) return true;
    return std::any_of(queue_.begin(), queue_.end(), [&](const BusRequest& r) { return r.router == router; });
}

void BusArbiter::request_bus(int router, int channel) {
    if (has_request(router)) return;
    if (queue_.size() >= capacity_) throw InvariantViolation("bus arbiter queue overflow");
    queue_.push_back({router, channel});
}

std::optional<BusRequest> BusArbiter::cancel_request(int router) {
    if (grant_ && grant_->router == router) {
        grant_.reset();
        return arbiter_step();
    }
    auto it = std::find_if(queue_.begin(), queue_.end(), [&](const BusRequest& r) { return r.router == router; });
    if (it == queue_.end()) return std::nullopt;
    const bool was_head = it == queue_.begin();
    queue_.erase(it);
    if (was_head && !grant_) return arbiter_step();
    return std::nullopt;
}

std::optional<BusRequest> BusArbiter::arbiter_step() {
    if (grant_ || queue_.empty()) return std::nullopt;
    grant_ = queue_.front();
    queue_.pop_front();
    return grant_;
}

const Flit* BusDatapath::flit_for(int node, Coord pos) const {
    const auto& slot = ob[static_cast<std::size_t>(node)];
    return (slot && slot->dst == pos) ? &*slot : nullptr;
}

PeDecision PeReceiver::decide(const Flit* bus_flit, const Flit* router_flit) const {
    PeDecision d;
    switch (active_) {
        case PeSource::Idle:
            if (bus_flit && bus_flit->kind == FlitKind::Header)
                d.take_bus = true;
            else if (router_flit && router_flit->kind == FlitKind::Header)
                d.take_router = true;
            break;
        case PeSource::FromRouter: d.take_router = router_flit != nullptr; break;
        case PeSource::FromBus: d.take_bus = bus_flit != nullptr; break;
    }
    return d;
}

void PeReceiver::consume(PeSource from, const Flit& f) {
    if (from == PeSource::Idle) throw std::invalid_argument("consume from Idle source");
    if (active_ == PeSource::Idle) {
        if (f.kind != FlitKind::Header)
            throw InvariantViolation("PE received " + std::string(to_string(f.kind)) + " flit of packet " +
                                     std::to_string(f.packet_id) + " without a header");
        active_ = from;
        packet_ = f.packet_id;
        next_seq_ = 1;
        if (from == PeSource::FromBus) pending_bus_header_ = false;
        return;
    }
    if (from != active_ || f.packet_id != packet_ || f.seq != next_seq_)
        throw InvariantViolation("PE stream order violated by packet " + std::to_string(f.packet_id) +
                                 " seq " + std::to_string(f.seq));
    ++next_seq_;
    if (f.kind == FlitKind::Tail) active_ = PeSource::Idle;
}

}  // namespace busnoc
