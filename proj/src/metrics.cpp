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

#include "busnoc/metrics.hpp"

#include <algorithm>
#include <string>

namespace busnoc {

MetricsAccumulator::MetricsAccumulator(Cycle warmup_cycles, Cycle sim_cycles, int nodes)
    : warmup_(warmup_cycles), end_(sim_cycles), nodes_(nodes) {}

void MetricsAccumulator::record_flit(Cycle cycle) {
    if (cycle >= warmup_ && cycle < end_) ++window_flits_;
}

void MetricsAccumulator::record_delivery(const PacketDescriptor& pkt, Cycle tail_arrival, bool via_bus) {
    const Cycle bound = pkt.created_cycle + pkt.length - 1 + (via_bus ? 1 : manhattan(pkt.src, pkt.dst));
    if (tail_arrival < bound)
        throw InvariantViolation("packet " + std::to_string(pkt.id) + " delivered at cycle " +
                                 std::to_string(tail_arrival) + ", below physical bound " +
                                 std::to_string(bound));
    ++delivered_;
    if (pkt.created_cycle < warmup_) return;
    const Cycle lat = tail_arrival - pkt.created_cycle;
    latency_sum_ += lat;
    ++latency_count_;
    latency_max_ = latency_max_ ? std::max(*latency_max_, lat) : lat;
}

Report MetricsAccumulator::finalize() const {
    Report r;
    if (latency_count_ > 0) r.avg_latency = static_cast<double>(latency_sum_) / static_cast<double>(latency_count_);
    r.max_latency = latency_max_;
    r.latency_samples = latency_count_;
    r.window_flits = window_flits_;
    r.window_cycles = std::max<Cycle>(0, end_ - warmup_);
    if (r.window_cycles > 0 && nodes_ > 0)
        r.throughput = static_cast<double>(window_flits_) /
                       (static_cast<double>(r.window_cycles) * static_cast<double>(nodes_));
    r.packets_generated = generated_;
    r.packets_delivered = delivered_;
    r.deadlocks_detected = deadlocks_detected_;
    r.bus_recoveries = bus_recoveries_;
    r.cancellations = cancellations_;
    return r;
}

}  // namespace busnoc
