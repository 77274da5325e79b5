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

#include <string>

#include "busnoc/core.hpp"

using namespace busnoc;

namespace {

SimConfig mesh(int x, int y) {
    SimConfig c;
    c.mesh_x = x;
    c.mesh_y = y;
    return c;
}

std::string validation_message(const SimConfig& c) {
    try {
        validate(c);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("node_index examples") {
    const auto c = mesh(4, 4);
    CHECK(node_index({0, 0}, c) == 0);
    CHECK(node_index({3, 3}, c) == 15);
    CHECK(node_index({2, 1}, c) == 6);
    CHECK_THROWS_AS(node_index({4, 0}, c), std::out_of_range);
    CHECK_THROWS_AS(node_index({0, -1}, c), std::out_of_range);
}

TEST_CASE("index_to_coord examples") {
    const auto c = mesh(4, 4);
    CHECK(index_to_coord(0, c) == Coord{0, 0});
    CHECK(index_to_coord(15, c) == Coord{3, 3});
    CHECK(index_to_coord(6, c) == Coord{2, 1});
    CHECK_THROWS_AS(index_to_coord(16, c), std::out_of_range);
    CHECK_THROWS_AS(index_to_coord(-1, c), std::out_of_range);
}

TEST_CASE("indexing is a bijection on many mesh sizes") {
    for (int x = 1; x <= 9; ++x)
        for (int y = 1; y <= 9; ++y) {
            const auto c = mesh(x, y);
            for (int i = 0; i < x * y; ++i) {
                const Coord p = index_to_coord(i, c);
                REQUIRE(in_bounds(p, c));
                REQUIRE(node_index(p, c) == i);
                REQUIRE(p.x == i % x);
            }
        }
}

TEST_CASE("validate rejects each invariant violation by key") {
    SimConfig ok;
    CHECK_NOTHROW(validate(ok));

    auto bad = ok;
    bad.threshold_log2 = 0;
    CHECK(validation_message(bad).find("threshold_log2") != std::string::npos);

    bad = ok;
    bad.len_min = 1;
    CHECK(validation_message(bad).find("len_min") != std::string::npos);

    bad = ok;
    bad.len_max = 3;
    CHECK(validation_message(bad).find("len_max") != std::string::npos);

    bad = ok;
    bad.pir = 1.5;
    CHECK(validation_message(bad).find("pir") != std::string::npos);

    bad = ok;
    bad.buffer_depth = 0;
    CHECK(validation_message(bad).find("buffer_depth") != std::string::npos);

    bad = ok;
    bad.warmup_cycles = bad.sim_cycles + 1;
    CHECK(validation_message(bad).find("warmup_cycles") != std::string::npos);

    bad = mesh(3, 3);
    bad.traffic = Traffic::BitReversal;
    CHECK(validation_message(bad).find("power of two") != std::string::npos);
    bad.traffic = Traffic::Butterfly;
    CHECK(validation_message(bad).find("power of two") != std::string::npos);
    bad.traffic = Traffic::Transpose1;
    CHECK_NOTHROW(validate(bad));

    bad = mesh(4, 2);
    bad.traffic = Traffic::Transpose1;
    CHECK(validation_message(bad).find("mesh_x == mesh_y") != std::string::npos);

    bad = mesh(1, 1);
    CHECK_FALSE(validation_message(bad).empty());
}

TEST_CASE("flit kinds follow position in the packet") {
    for (int len = 2; len <= 10; ++len)
        for (int s = 0; s < len; ++s) {
            const Flit f = make_flit(7, {0, 0}, {1, 0}, s, len, 3);
            CHECK((f.kind == FlitKind::Header) == (s == 0));
            CHECK((f.kind == FlitKind::Tail) == (s == len - 1));
            CHECK(f.seq == s);
            CHECK(f.created_cycle == 3);
        }
}

TEST_CASE("enum names round-trip through the parsers") {
    for (auto r : {Routing::XY, Routing::WestFirst, Routing::OddEven, Routing::TFAR})
        CHECK(parse_routing(to_string(r)) == r);
    for (auto t : {Traffic::Uniform, Traffic::Transpose1, Traffic::BitReversal, Traffic::Butterfly})
        CHECK(parse_traffic(to_string(t)) == t);
    for (auto r : {Recovery::None, Recovery::Bus}) CHECK(parse_recovery(to_string(r)) == r);
    CHECK(parse_traffic("bit_reversal") == Traffic::BitReversal);
    CHECK(parse_routing("West-First") == Routing::WestFirst);
    CHECK_THROWS_AS(parse_routing("dor"), ConfigError);
}

TEST_CASE("direction helpers") {
    for (auto d : kMeshDirections) {
        CHECK(opposite(opposite(d)) == d);
        CHECK(step(step({5, 5}, d), opposite(d)) == Coord{5, 5});
        CHECK(manhattan({5, 5}, step({5, 5}, d)) == 1);
    }
    CHECK(step({0, 0}, Direction::North) == Coord{0, 1});
    CHECK(step({0, 0}, Direction::East) == Coord{1, 0});
}
