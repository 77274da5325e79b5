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
 * @file cli.hpp
 * @brief Configuration files, injection-rate sweeps and the results CSV.
 *
 * Config files are flat `key = value` lines; `#` starts a comment. Keys are
 * the SimConfig field names plus the sweep lists `pirs`, `routings`,
 * `traffics` and `seeds` (comma separated). `injection_limit = none`
 * disables the injection gate.
 *
 * In a sweep, TFAR cells use the configured recovery mode; XY, West-First
 * and Odd-Even are deadlock-free and always run without recovery.
 */

#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "busnoc/core.hpp"
#include "busnoc/metrics.hpp"

namespace busnoc {

inline constexpr std::string_view kCsvSchema = "busnoc-results/1";

struct SweepSpec {
    SimConfig base;
    std::vector<double> pirs;
    std::vector<Routing> routings;
    std::vector<Traffic> traffics;
    std::vector<std::uint64_t> seeds;
    int jobs = 1;
};

/// Splits `key = value` lines. Throws ConfigError on malformed lines.
std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view text);

/// Applies one setting. Unknown keys and bad values raise ConfigError.
void apply_setting(SimConfig& cfg, const std::string& key, const std::string& value);
void apply_setting(SweepSpec& spec, const std::string& key, const std::string& value);

/// Parses and validates a run configuration from file text.
SimConfig parse_config(std::string_view text);
/// Parses a sweep; missing lists default to the base config's single value.
SweepSpec parse_sweep(std::string_view text);

/// Fills empty sweep lists from the base config and validates the base.
void finalize_sweep(SweepSpec& spec);

std::string read_file(const std::string& path);

/// `key=value` rendering of every field, in declaration order.
std::vector<std::string> describe(const SimConfig& cfg);

/// Configuration used for one sweep cell.
SimConfig cell_config(const SimConfig& base, Routing routing, Traffic traffic, double pir, std::uint64_t seed);

struct ResultRow {
    Routing routing = Routing::TFAR;
    Traffic traffic = Traffic::Uniform;
    double pir = 0.0;
    std::uint64_t seed = 0;
    Report report;
    std::string error;  // empty on success
};

/// Runs the whole cartesian product (empty lists default as in
/// finalize_sweep). Rows come back sorted by
/// (routing, traffic, pir, seed); a failing cell becomes an error row.
std::vector<ResultRow> run_sweep(const SweepSpec& spec);

/// Runs one configuration into a row, capturing failures.
ResultRow run_row(const SimConfig& cfg);

std::string csv_header();
std::string csv_row(const ResultRow& row);
/// Comment block, header and rows. `timestamp` adds the generation-time line.
void write_csv(std::ostream& os, const SimConfig& base, const std::vector<ResultRow>& rows, bool timestamp = true);

}  // namespace busnoc
