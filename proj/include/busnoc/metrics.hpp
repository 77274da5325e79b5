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
 * @file metrics.hpp
 * @brief Latency, throughput and protocol event counters for one run.
 *
 * Latency runs from packet generation (so source queueing counts) to the
 * cycle its Tail is consumed by the destination PE, and is only sampled for
 * packets created at or after warm-up. Throughput is flits consumed during
 * [warmup_cycles, sim_cycles) per cycle per node.
 */

#pragma once

#include <cstdint>
#include <optional>

#include "busnoc/core.hpp"
#include "busnoc/traffic.hpp"

namespace busnoc {

struct Report {
    std::optional<double> avg_latency;
    std::optional<Cycle> max_latency;
    double throughput = 0.0;  // flits / cycle / node
    std::int64_t latency_samples = 0;
    std::int64_t window_flits = 0;
    Cycle window_cycles = 0;
    std::int64_t packets_generated = 0;
    std::int64_t packets_delivered = 0;
    std::int64_t packets_in_flight = 0;
    std::int64_t packets_queued = 0;
    std::int64_t deadlocks_detected = 0;
    std::int64_t bus_recoveries = 0;
    std::int64_t cancellations = 0;
    std::int64_t max_source_queue = 0;
    bool saturated = false;
    Cycle cycles_run = 0;

    friend bool operator==(const Report&, const Report&) = default;
};

class MetricsAccumulator {
public:
    MetricsAccumulator(Cycle warmup_cycles, Cycle sim_cycles, int nodes);

    void record_generated() { ++generated_; }
    /// One flit consumed by a PE at `cycle`.
    void record_flit(Cycle cycle);
    /// Tail of `pkt` consumed at `tail_arrival`. Arrivals faster than the
    /// physical bound are a simulator bug. Bus delivery skips the hop term.
    void record_delivery(const PacketDescriptor& pkt, Cycle tail_arrival, bool via_bus = false);

    void record_detection() { ++deadlocks_detected_; }
    void record_bus_recovery() { ++bus_recoveries_; }
    void record_cancellation() { ++cancellations_; }

    std::int64_t generated() const { return generated_; }
    std::int64_t delivered() const { return delivered_; }
    std::int64_t deadlocks_detected() const { return deadlocks_detected_; }
    std::int64_t bus_recoveries() const { return bus_recoveries_; }
    std::int64_t cancellations() const { return cancellations_; }

    /// Fills the latency/throughput/counter fields of a report.
    Report finalize() const;

private:
    Cycle warmup_;
    Cycle end_;
    int nodes_;
    std::int64_t generated_ = 0;
    std::int64_t delivered_ = 0;
    std::int64_t window_flits_ = 0;
    std::int64_t latency_sum_ = 0;
    std::int64_t latency_count_ = 0;
    std::optional<Cycle> latency_max_;
    std::int64_t deadlocks_detected_ = 0;
    std::int64_t bus_recoveries_ = 0;
    std::int64_t cancellations_ = 0;
};

}  // namespace busnoc
