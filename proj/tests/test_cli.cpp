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


#include "doctest.h"

#include <set>
#include <sstream>
#include <string>

#include "busnoc/cli.hpp"

using namespace busnoc;

namespace {

std::string error_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);) out.push_back(l);
    return out;
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

SweepSpec quick_sweep() {
    SweepSpec s;
    s.base.sim_cycles = 400;
    s.base.warmup_cycles = 100;
    s.routings = {Routing::XY, Routing::WestFirst, Routing::OddEven, Routing::TFAR};
    s.traffics = {Traffic::Transpose1};
    for (int i = 0; i < 8; ++i) s.pirs.push_back(0.002 + i * (0.018 / 7));
    s.seeds = {1, 2, 3};
    return s;
}

}  // namespace

TEST_CASE("parse_config examples") {
    const auto c = parse_config("# transpose setup\nmesh_x = 4\nmesh_y = 4\nrouting = tfar\ntraffic = transpose1\n");
    CHECK(c.mesh_x == 4);
    CHECK(c.routing == Routing::TFAR);
    CHECK(c.traffic == Traffic::Transpose1);

    const auto e = error_of("mesh_x = 3\nmesh_y = 3\ntraffic = bit_reversal\n");
    CHECK(e.find("traffic") != std::string::npos);
    CHECK(e.find("power of two") != std::string::npos);

    const auto t = error_of("threshold_log2 = 0\n");
    CHECK(t.find("threshold_log2") != std::string::npos);
    CHECK(t.find(">= 1") != std::string::npos);
}

TEST_CASE("parse_config diagnostics name the key") {
    CHECK(error_of("colour = blue\n").find("colour: unknown key") != std::string::npos);
    CHECK(error_of("pir = fast\n").find("pir: invalid value") != std::string::npos);
    CHECK(error_of("routing = zigzag\n").find("routing") != std::string::npos);
    CHECK(error_of("just words\n").find("line 1") != std::string::npos);
    CHECK(error_of("sim_cycles = 10\nwarmup_cycles = 20\n").find("warmup_cycles") != std::string::npos);
}

TEST_CASE("every SimConfig field is a config key and round-trips") {
    SimConfig c;
    c.mesh_x = 8;
    c.mesh_y = 2;
    c.routing = Routing::OddEven;
    c.recovery = Recovery::None;
    c.threshold_log2 = 7;
    c.traffic = Traffic::Butterfly;
    c.pir = 0.0125;
    c.len_min = 3;
    c.len_max = 5;
    c.buffer_depth = 2;
    c.injection_limit = 3;
    c.warmup_cycles = 10;
    c.sim_cycles = 20;
    c.seed = 99;
    c.saturation_queue_limit = 7;
    c.max_wall_seconds = 5;
    std::string text;
    for (const auto& kv : describe(c)) text += kv + "\n";
    const auto back = parse_config(text);
    CHECK(describe(back) == describe(c));
    SimConfig d = back;
    apply_setting(d, "injection_limit", "none");
    CHECK_FALSE(d.injection_limit);
}

TEST_CASE("flags override file values") {
    auto c = parse_config("pir = 0.01\nseed = 3\n");
    apply_setting(c, "pir", "0.02");
    CHECK(c.pir == 0.02);
    CHECK(c.seed == 3);
}

TEST_CASE("sweep lists parse and default from the base") {
    auto s = parse_sweep("pirs = 0.01, 0.02\nroutings = xy,tfar\nseeds = 4\n");
    CHECK(s.pirs == std::vector<double>{0.01, 0.02});
    CHECK(s.routings.size() == 2);
    CHECK(s.traffics == std::vector<Traffic>{Traffic::Uniform});
    CHECK(s.seeds == std::vector<std::uint64_t>{4});
    CHECK_THROWS_AS(parse_sweep("pirs = 2\n"), ConfigError);
}

TEST_CASE("run_sweep: 4 algorithms x 1 pattern x 8 pir x 3 seeds gives 96 sorted unique rows") {
    const auto rows = run_sweep(quick_sweep());
    REQUIRE(rows.size() == 96);
    std::set<std::tuple<std::string, std::string, double, std::uint64_t>> keys;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        CHECK(r.error.empty());
        keys.insert({std::string(to_string(r.routing)), std::string(to_string(r.traffic)), r.pir, r.seed});
        if (i) {
            const auto& p = rows[i - 1];
            CHECK(std::make_tuple(std::string(to_string(p.routing)), p.pir, p.seed) <
                  std::make_tuple(std::string(to_string(r.routing)), r.pir, r.seed));
        }
    }
    CHECK(keys.size() == 96);
    CHECK(to_string(rows.front().routing) == "oddeven");
}

TEST_CASE("XY without recovery never reports detections") {
    SweepSpec s;
    s.base.sim_cycles = 4000;
    s.base.threshold_log2 = 1;
    s.base.recovery = Recovery::Bus;  // baselines still run without recovery
    s.routings = {Routing::XY};
    s.traffics = {Traffic::Uniform, Traffic::Transpose1, Traffic::BitReversal};
    s.pirs = {0.01, 0.05, 0.2};
    s.seeds = {1, 2, 3, 4};
    for (const auto& r : run_sweep(s)) {
        CHECK(r.error.empty());
        CHECK(r.report.deadlocks_detected == 0);
    }
    CHECK(cell_config(s.base, Routing::XY, Traffic::Uniform, 0.1, 1).recovery == Recovery::None);
    CHECK(cell_config(s.base, Routing::TFAR, Traffic::Uniform, 0.1, 1).recovery == Recovery::Bus);
}

TEST_CASE("pir 0 row has zero counts") {
    SweepSpec s;
    s.pirs = {0.0};
    s.base.sim_cycles = 500;
    s.base.warmup_cycles = 0;
    const auto rows = run_sweep(s);
    REQUIRE(rows.size() == 1);
    const auto cells = split(csv_row(rows[0]));
    REQUIRE(cells.size() == 14);
    CHECK(cells[4].empty());  // no latency samples
    CHECK(cells[6] == "0.000000");
    for (int i = 7; i <= 11; ++i) CHECK(cells[static_cast<std::size_t>(i)] == "0");
    CHECK(cells[12] == "false");
}

TEST_CASE("failing cells become error rows and the sweep continues") {
    SweepSpec s;
    s.base.mesh_x = s.base.mesh_y = 3;
    s.base.sim_cycles = 300;
    s.base.warmup_cycles = 0;
    s.traffics = {Traffic::BitReversal, Traffic::Uniform};
    finalize_sweep(s);
    const auto rows = run_sweep(s);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].traffic == Traffic::BitReversal);
    CHECK(rows[0].error.find("power of two") != std::string::npos);
    CHECK(rows[1].error.empty());
    const auto cells = split(csv_row(rows[0]));
    CHECK(cells.size() == 14);
    CHECK(cells[13].find(',') == std::string::npos);
}

TEST_CASE("CSV layout: comments, exact header, byte-identical reruns") {
    auto spec = quick_sweep();
    spec.pirs.resize(2);
    std::ostringstream a, b, c;
    write_csv(a, spec.base, run_sweep(spec), true);
    write_csv(b, spec.base, run_sweep(spec), true);
    spec.jobs = 3;
    write_csv(c, spec.base, run_sweep(spec), true);

    const auto strip = [](const std::string& s) {
        std::string out;
        for (const auto& l : lines(s))
            if (l.rfind("# generated:", 0) != 0) out += l + "\n";
        return out;
    };
    CHECK(strip(a.str()) == strip(b.str()));
    CHECK(strip(a.str()) == strip(c.str()));

    const auto ls = lines(a.str());
    std::size_t h = 0;
    while (h < ls.size() && ls[h].rfind("#", 0) == 0) ++h;
    REQUIRE(h < ls.size());
    CHECK(ls[0] == "# schema: busnoc-results/1");
    CHECK(ls[h] ==
          "routing,traffic,pir,seed,avg_latency_cycles,max_latency_cycles,"
          "throughput_flits_per_cycle_per_node,packets_generated,packets_delivered,"
          "deadlocks_detected,bus_recoveries,cancellations,saturated,error");
    CHECK(ls.size() - h - 1 == 4 * 2 * 3);
    for (std::size_t i = h + 1; i < ls.size(); ++i) CHECK(split(ls[i]).size() == 14);

    std::ostringstream d;
    write_csv(d, spec.base, {}, false);
    CHECK(d.str().find("# generated:") == std::string::npos);
}
