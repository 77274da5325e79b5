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

#include "busnoc/deadlock_detect.hpp"

#include <algorithm>

namespace busnoc {

InactivityCounter::InactivityCounter(int threshold_log2, std::uint32_t value)
    : threshold_log2_(threshold_log2), value_(value) {
    if (threshold_log2 < 1 || threshold_log2 > 30)
        throw std::invalid_argument("threshold_log2 must lie in [1, 30]");
    value_ = std::min(value_, saturation());
}

InactivityCounter InactivityCounter::tick() const {
    return InactivityCounter(threshold_log2_, value_ == saturation() ? value_ : value_ + 1);
}

bool presume_deadlock(std::span<const Direction> requested, std::span<const OutputView> outputs) {
    if (requested.empty()) return false;
    return std::all_of(requested.begin(), requested.end(), [&](Direction d) {
        const auto& o = outputs[static_cast<std::size_t>(port_index(d))];
        return o.busy && o.counter.flag();
    });
}

}  // namespace busnoc
