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

#include "busnoc/bus_recovery.hpp"
#include "busnoc/router.hpp"

using namespace busnoc;

namespace {

std::vector<int> routers(const BusArbiter& a) {
    std::vector<int> v;
    for (const auto& q : a.queue()) v.push_back(q.router);
    return v;
}

Flit flit(int seq, int len = 3, PacketId id = 9, Coord dst = {1, 1}) { return make_flit(id, {0, 0}, dst, seq, len, 0); }

}  // namespace

TEST_CASE("request_bus examples") {
    BusArbiter a;
    a.request_bus(5, 0);
    CHECK(routers(a) == std::vector<int>{5});
    a.request_bus(2, 1);
    CHECK(routers(a) == std::vector<int>{5, 2});
    a.request_bus(5, 3);
    CHECK(routers(a) == std::vector<int>{5, 2});
    CHECK(a.queue().front().channel == 0);
}

TEST_CASE("cancel_request examples") {
    SUBCASE("head removed, next head granted") {
        BusArbiter a;
        a.request_bus(5, 0);
        a.request_bus(2, 0);
        const auto g = a.cancel_request(5);
        REQUIRE(g);
        CHECK(g->router == 2);
        CHECK(a.grant()->router == 2);
        CHECK(a.queue().empty());
    }
    SUBCASE("tail removed") {
        BusArbiter a;
        a.request_bus(5, 0);
        a.request_bus(2, 0);
        CHECK_FALSE(a.cancel_request(2));
        CHECK(routers(a) == std::vector<int>{5});
    }
    SUBCASE("unknown router") {
        BusArbiter a;
        a.request_bus(5, 0);
        CHECK_FALSE(a.cancel_request(9));
        CHECK(routers(a) == std::vector<int>{5});
        CHECK_FALSE(a.grant());
    }
    SUBCASE("head removed while the bus is held grants nothing") {
        BusArbiter a;
        a.request_bus(1, 0);
        a.arbiter_step();
        a.request_bus(5, 0);
        a.request_bus(2, 0);
        CHECK_FALSE(a.cancel_request(5));
        CHECK(a.grant()->router == 1);
        CHECK(routers(a) == std::vector<int>{2});
    }
    SUBCASE("holder releasing passes the bus on") {
        BusArbiter a;
        a.request_bus(1, 0);
        a.arbiter_step();
        a.request_bus(2, 0);
        const auto g = a.cancel_request(1);
        REQUIRE(g);
        CHECK(g->router == 2);
    }
}

TEST_CASE("arbiter_step examples") {
    BusArbiter a;
    a.request_bus(5, 0);
    a.request_bus(2, 0);
    auto g = a.arbiter_step();
    REQUIRE(g);
    CHECK(g->router == 5);
    CHECK(routers(a) == std::vector<int>{2});
    CHECK_FALSE(a.arbiter_step());
    CHECK(a.grant()->router == 5);

    BusArbiter empty;
    CHECK_FALSE(empty.arbiter_step());
    CHECK_FALSE(empty.grant());
}

TEST_CASE("holder cannot requeue while holding the grant") {
    BusArbiter a;
    a.request_bus(3, 0);
    a.arbiter_step();
    a.request_bus(3, 0);
    CHECK(a.queue().empty());
    CHECK(a.has_request(3));
}

TEST_CASE("bus ejection waits for the bus input buffer") {
    RouterState r(0, {0, 0}, 4, 5);
    auto& ch = r.input(Direction::North);
    accept_flit(ch, flit(0));
    ch.reserved_output = Direction::Bus;
    r.bus_state = BusRequestState::Granted;
    DownstreamReady ready{};
    CHECK(forward_flits(r, ready).empty());
    ready[port_index(Direction::Bus)] = true;
    const auto mv = forward_flits(r, ready);
    REQUIRE(mv.size() == 1);
    CHECK(mv[0].output == Direction::Bus);
}

TEST_CASE("output buffer monitor only exposes flits for its node") {
    BusDatapath bus(4);
    bus.ob[3] = flit(0, 3, 9, {1, 1});
    CHECK(bus.flit_for(3, {1, 1}) != nullptr);
    bus.ob[2] = flit(0, 3, 9, {1, 1});
    CHECK(bus.flit_for(2, {0, 1}) == nullptr);
}

TEST_CASE("pe_consume examples") {
    const Flit bus_h = flit(0, 3, 1);
    const Flit rt_h = flit(0, 3, 2);

    SUBCASE("idle takes a bus header") {
        PeReceiver pe;
        const auto d = pe.decide(&bus_h, nullptr);
        CHECK(d.take_bus);
        CHECK_FALSE(d.take_router);
        pe.consume(PeSource::FromBus, bus_h);
        CHECK(pe.active_source() == PeSource::FromBus);
    }
    SUBCASE("bus header waits while a router message is open") {
        PeReceiver pe;
        pe.consume(PeSource::FromRouter, rt_h);
        const Flit rt_b = flit(1, 3, 2);
        auto d = pe.decide(&bus_h, &rt_b);
        CHECK_FALSE(d.take_bus);
        CHECK(d.take_router);
        pe.consume(PeSource::FromRouter, rt_b);
        const Flit rt_t = flit(2, 3, 2);
        pe.consume(PeSource::FromRouter, rt_t);
        CHECK(pe.active_source() == PeSource::Idle);
        d = pe.decide(&bus_h, nullptr);
        CHECK(d.take_bus);
    }
    SUBCASE("simultaneous headers prefer the bus") {
        PeReceiver pe;
        const auto d = pe.decide(&bus_h, &rt_h);
        CHECK(d.take_bus);
        CHECK_FALSE(d.take_router);
    }
    SUBCASE("router stream waits for a bus message to finish") {
        PeReceiver pe;
        pe.consume(PeSource::FromBus, bus_h);
        auto d = pe.decide(nullptr, &rt_h);
        CHECK_FALSE(d.take_router);
        pe.consume(PeSource::FromBus, flit(1, 3, 1));
        pe.consume(PeSource::FromBus, flit(2, 3, 1));
        CHECK(pe.active_source() == PeSource::Idle);
        d = pe.decide(nullptr, &rt_h);
        CHECK(d.take_router);
    }
    SUBCASE("out of order bus flit is fatal") {
        PeReceiver pe;
        pe.consume(PeSource::FromBus, bus_h);
        CHECK_THROWS_AS(pe.consume(PeSource::FromBus, flit(2, 3, 1)), InvariantViolation);
    }
    SUBCASE("a body without a header is fatal") {
        PeReceiver pe;
        CHECK_THROWS_AS(pe.consume(PeSource::FromBus, flit(1, 3, 1)), InvariantViolation);
    }
}
