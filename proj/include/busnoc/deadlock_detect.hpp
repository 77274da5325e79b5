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
 * @file deadlock_detect.hpp
 * @brief Per-output inactivity counters and the deadlock presumption test.
 *
 * Each output physical channel owns a counter of the cycles since a flit
 * last crossed it. The threshold is a power of two, T = 2^k, so "counter has
 * reached T" is a single bit: bit k. Counters saturate at 2^(k+1)-1; a
 * wrapping counter would clear bit k and hide a live deadlock.
 */

#pragma once

#include <cstdint>
#include <span>

#include "busnoc/core.hpp"
#include "busnoc/routing.hpp"

namespace busnoc {

class InactivityCounter {
public:
    InactivityCounter() : InactivityCounter(5) {}
    explicit InactivityCounter(int threshold_log2, std::uint32_t value = 0);

    InactivityCounter tick() const;
    InactivityCounter reset() const { return InactivityCounter(threshold_log2_, 0); }
    /// Bit k of the counter.
    bool flag() const { return (value_ >> threshold_log2_) & 1u; }

    std::uint32_t value() const { return value_; }
    int threshold_log2() const { return threshold_log2_; }
    std::uint32_t saturation() const { return (2u << threshold_log2_) - 1u; }

private:
    int threshold_log2_;
    std::uint32_t value_;
};

/// What the detector needs to know about one output port.
struct OutputView {
    bool busy = false;
    InactivityCounter counter;
};

/// True iff every requested output is busy and has its flag set. Outputs are
/// indexed by port_index; `requested` may contain Local.
bool presume_deadlock(std::span<const Direction> requested, std::span<const OutputView> outputs);

}  // namespace busnoc
