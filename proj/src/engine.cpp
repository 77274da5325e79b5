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

#include "busnoc/engine.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <unordered_set>

#include "busnoc/deadlock_detect.hpp"
#include "busnoc/routing.hpp"

namespace busnoc {

std::string_view to_string(EventKind k) {
    switch (k) {
        case EventKind::Generate: return "generate";
        case EventKind::Inject: return "inject";
        case EventKind::Route: return "route";
        case EventKind::Move: return "move";
        case EventKind::Eject: return "eject";
        case EventKind::Detect: return "detect";
        case EventKind::BusRequest: return "br";
        case EventKind::BusGrant: return "bg";
        case EventKind::BusAccept: return "accept";
        case EventKind::BusCancel: return "cancel";
        case EventKind::BusRelease: return "release";
        case EventKind::BusWrite: return "bus_write";
        case EventKind::BusBroadcast: return "bus_broadcast";
        case EventKind::BusEject: return "bus_eject";
    }
    return "?";
}

std::string format_event(const Event& e) {
    std::ostringstream os;
    os << e.cycle << ' ';
    switch (e.kind) {
        case EventKind::BusGrant:
        case EventKind::BusBroadcast: os << "bus"; break;
        case EventKind::Eject:
        case EventKind::BusEject:
        case EventKind::Generate: os << "pe" << e.node; break;
        default: os << 'r' << e.node << '.' << to_string(e.port); break;
    }
    os << ' ' << to_string(e.kind);
    if (e.kind == EventKind::Route || e.kind == EventKind::Move) os << ':' << to_string(e.out);
    os << ' ' << e.packet << ' ' << e.seq;
    return os.str();
}

Engine::Engine(const SimConfig& cfg)
    : cfg_(cfg),
      arbiter_(static_cast<std::size_t>(cfg.node_count())),
      bus_(cfg.node_count()),
      pes_(static_cast<std::size_t>(cfg.node_count())),
      sources_(static_cast<std::size_t>(cfg.node_count())),
      traffic_(cfg),
      metrics_(cfg.warmup_cycles, cfg.sim_cycles, cfg.node_count()),
      requests_(static_cast<std::size_t>(cfg.node_count())),
      moved_(static_cast<std::size_t>(cfg.node_count())) {
    validate(cfg_);
    const int n = cfg_.node_count();
    routers_.reserve(static_cast<std::size_t>(n));
    neighbors_.assign(static_cast<std::size_t>(n * kMeshPorts), -1);
    for (int i = 0; i < n; ++i) {
        const Coord c = index_to_coord(i, cfg_);
        routers_.emplace_back(i, c, cfg_.buffer_depth, cfg_.threshold_log2);
        for (auto d : kMeshDirections) {
            const Coord nb = busnoc::step(c, d);
            if (in_bounds(nb, cfg_)) neighbors_[static_cast<std::size_t>(i * kMeshPorts + port_index(d))] = node_index(nb, cfg_);
        }
    }
}

int Engine::neighbor(int node, Direction d) const {
    return neighbors_[static_cast<std::size_t>(node * kMeshPorts + port_index(d))];
}

std::string Engine::where(int node) const {
    return "cycle " + std::to_string(cycle_) + ", router " + std::to_string(node) + " " +
           to_string(index_to_coord(node, cfg_));
}

void Engine::emit(EventKind kind, int node, Direction port, Direction out, PacketId pkt, int seq, int length) {
    if (observer_) observer_(Event{cycle_, kind, node, port, out, pkt, seq, length});
}

Congestion Engine::congestion(int node) const {
    Congestion c{};
    for (auto d : kMeshDirections) {
        const int nb = neighbor(node, d);
        c[static_cast<std::size_t>(port_index(d))] =
            nb < 0 ? 0 : routers_[static_cast<std::size_t>(nb)].input(opposite(d)).fifo.free_slots();
    }
    return c;
}

void Engine::issue_cancel(RouterState& r) {
    const int ch = r.bus_channel;
    wire_cancel_.push_back(r.id);
    r.bus_state = BusRequestState::Idle;
    r.bus_channel = -1;
    metrics_.record_cancellation();
    const auto& fifo = r.in[static_cast<std::size_t>(ch)].fifo;
    emit(EventKind::BusCancel, r.id, static_cast<Direction>(ch), Direction::Bus,
         fifo.empty() ? 0 : fifo.front().packet_id, 0);
}

// Phase 1.
void Engine::phase_bus_control() {
    const auto delivered = wire_bg_;
    wire_bg_.reset();
    const auto send_grant = [&](const BusRequest& g) {
        emit(EventKind::BusGrant, g.router, static_cast<Direction>(g.channel), Direction::Bus, 0, 0);
        wire_bg_ = g;
    };
    for (int router : wire_cancel_)
        if (auto g = arbiter_.cancel_request(router)) send_grant(*g);
    wire_cancel_.clear();
    for (const auto& br : wire_br_) arbiter_.request_bus(br.router, br.channel);
    wire_br_.clear();
    if (auto g = arbiter_.arbiter_step()) send_grant(*g);

    if (!delivered) return;
    auto& r = routers_[static_cast<std::size_t>(delivered->router)];
    if (r.bus_state != BusRequestState::Queued || r.bus_channel != delivered->channel) return;  // already withdrawn
    auto& ch = r.in[static_cast<std::size_t>(r.bus_channel)];
    const bool header_waiting = !ch.reserved_output && !ch.fifo.empty() && ch.fifo.front().kind == FlitKind::Header;
    bool still_presumed = false;
    if (header_waiting) {
        const auto reqs = compute_requests(r, cfg_.routing);
        const auto* req = reqs.find(r.bus_channel);
        const auto views = r.output_views();
        still_presumed = req && presume_deadlock(req->outputs(), views);
    }
    if (!still_presumed) {
        issue_cancel(r);
        return;
    }
    ch.reserved_output = Direction::Bus;
    ch.presumed = false;
    r.bus_state = BusRequestState::Granted;
    emit(EventKind::BusAccept, r.id, ch.dir, Direction::Bus, ch.fifo.front().packet_id, 0);
}

// Phase 2.
void Engine::phase_requests() {
    for (auto& r : routers_) {
        auto& reqs = requests_[static_cast<std::size_t>(r.id)];
        reqs = compute_requests(r, cfg_.routing);
        const auto views = r.output_views();
        for (int c = 0; c < kRouterPorts; ++c) {
            auto& ch = r.in[static_cast<std::size_t>(c)];
            const auto* req = reqs.find(c);
            const bool pres = req && presume_deadlock(req->outputs(), views);
            if (pres && !ch.presumed && cfg_.recovery == Recovery::Bus) {
                metrics_.record_detection();
                emit(EventKind::Detect, r.id, ch.dir, Direction::Local, ch.fifo.front().packet_id, 0);
            }
            ch.presumed = pres;
        }
        if (r.bus_state == BusRequestState::Queued && !r.in[static_cast<std::size_t>(r.bus_channel)].presumed) {
            issue_cancel(r);
            continue;
        }
        if (cfg_.recovery != Recovery::Bus || r.bus_state != BusRequestState::Idle) continue;
        for (int c = 0; c < kRouterPorts; ++c) {
            auto& ch = r.in[static_cast<std::size_t>(c)];
            if (!ch.presumed) continue;
            r.bus_state = BusRequestState::Queued;
            r.bus_channel = c;
            wire_br_.push_back({r.id, c});
            emit(EventKind::BusRequest, r.id, ch.dir, Direction::Bus, ch.fifo.front().packet_id, 0);
            break;
        }
    }
}

// Phase 3.
void Engine::phase_arbitrate() {
    for (auto& r : routers_) {
        const auto grants = arbitrate(r, requests_[static_cast<std::size_t>(r.id)], congestion(r.id));
        for (const auto& g : grants) {
            auto& ch = r.in[static_cast<std::size_t>(g.channel)];
            ch.presumed = false;
            emit(EventKind::Route, r.id, ch.dir, g.output, ch.fifo.front().packet_id, 0);
            if (r.bus_state == BusRequestState::Queued && r.bus_channel == g.channel) issue_cancel(r);
        }
    }
}

// Phases 4 and 5.
void Engine::phase_traverse() {
    const int n = cfg_.node_count();

    // --- collect (read only) ---
    std::vector<PeDecision> pe_take(static_cast<std::size_t>(n));
    std::vector<const Flit*> bus_offer(static_cast<std::size_t>(n), nullptr);
    for (int i = 0; i < n; ++i) {
        const auto& r = routers_[static_cast<std::size_t>(i)];
        bus_offer[static_cast<std::size_t>(i)] = bus_.flit_for(i, r.pos);
        const Flit* router_offer = nullptr;
        const auto& local = r.output(Direction::Local);
        if (local.busy) {
            const auto& fifo = r.in[static_cast<std::size_t>(local.holder)].fifo;
            if (!fifo.empty()) router_offer = &fifo.front();
        }
        pe_take[static_cast<std::size_t>(i)] = pes_[static_cast<std::size_t>(i)].decide(bus_offer[static_cast<std::size_t>(i)], router_offer);
    }

    bool ib_to_ob = false;
    int ib_dst = -1;
    if (bus_.ib) {
        ib_dst = node_index(bus_.ib->dst, cfg_);
        ib_to_ob = !bus_offer[static_cast<std::size_t>(ib_dst)] || pe_take[static_cast<std::size_t>(ib_dst)].take_bus;
    }
    const bool ib_free = !bus_.ib || ib_to_ob;

    std::vector<std::vector<Movement>> moves(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto& r = routers_[static_cast<std::size_t>(i)];
        DownstreamReady ready{};
        for (auto d : kMeshDirections) {
            const int nb = neighbor(i, d);
            ready[static_cast<std::size_t>(port_index(d))] =
                nb >= 0 && routers_[static_cast<std::size_t>(nb)].input(opposite(d)).fifo.free_slots() > 0;
        }
        ready[static_cast<std::size_t>(port_index(Direction::Local))] = pe_take[static_cast<std::size_t>(i)].take_router;
        ready[static_cast<std::size_t>(port_index(Direction::Bus))] = r.bus_state == BusRequestState::Granted && ib_free;
        moves[static_cast<std::size_t>(i)] = forward_flits(r, ready);
    }

    // --- commit ---
    for (auto& m : moved_) m.fill(false);

    // monitor copies at non-destination output buffers live for one cycle
    for (int i = 0; i < n; ++i) {
        auto& slot = bus_.ob[static_cast<std::size_t>(i)];
        if (slot && !(slot->dst == routers_[static_cast<std::size_t>(i)].pos)) slot.reset();
    }

    for (int i = 0; i < n; ++i) {
        if (!pe_take[static_cast<std::size_t>(i)].take_bus) continue;
        auto& slot = bus_.ob[static_cast<std::size_t>(i)];
        const Flit f = *slot;
        slot.reset();
        auto& pe = pes_[static_cast<std::size_t>(i)];
        pe.consume(PeSource::FromBus, f);
        ++flits_consumed_;
        metrics_.record_flit(cycle_);
        emit(EventKind::BusEject, i, Direction::Bus, Direction::Local, f.packet_id, f.seq, f.length);
        if (f.kind == FlitKind::Tail) {
            metrics_.record_delivery({f.packet_id, f.src, f.dst, f.length, f.created_cycle}, cycle_, true);
            metrics_.record_bus_recovery();
        }
    }

    if (ib_to_ob) {
        const Flit f = *bus_.ib;
        bus_.ib.reset();
        for (int i = 0; i < n; ++i) {
            auto& slot = bus_.ob[static_cast<std::size_t>(i)];
            if (i != ib_dst && slot) continue;  // never clobber a flit addressed to this node
            if (i == ib_dst && slot) throw InvariantViolation("bus output buffer overwrite at " + where(i));
            slot = f;
        }
        emit(EventKind::BusBroadcast, ib_dst, Direction::Bus, Direction::Local, f.packet_id, f.seq, f.length);
    }

    for (int i = 0; i < n; ++i) {
        auto& r = routers_[static_cast<std::size_t>(i)];
        for (const auto& mv : moves[static_cast<std::size_t>(i)]) {
            const Direction in_dir = r.in[static_cast<std::size_t>(mv.channel)].dir;
            const Flit f = depart(r, mv.channel);
            if (mv.output == Direction::Bus) {
                if (bus_.ib) throw InvariantViolation("bus input buffer overwrite at " + where(i));
                if (f.kind == FlitKind::Header) {
                    if (bus_packet_) throw InvariantViolation("second message on the bus at " + where(i));
                    bus_packet_ = f.packet_id;
                } else if (bus_packet_ != f.packet_id) {
                    throw InvariantViolation("interleaved bus message at " + where(i));
                }
                bus_.ib = f;
                emit(EventKind::BusWrite, i, in_dir, Direction::Bus, f.packet_id, f.seq, f.length);
                if (f.kind == FlitKind::Tail) {
                    bus_packet_.reset();
                    wire_cancel_.push_back(r.id);
                    r.bus_state = BusRequestState::Idle;
                    r.bus_channel = -1;
                    emit(EventKind::BusRelease, i, in_dir, Direction::Bus, f.packet_id, f.seq, f.length);
                }
                continue;
            }
            moved_[static_cast<std::size_t>(i)][static_cast<std::size_t>(port_index(mv.output))] = true;
            if (mv.output == Direction::Local) {
                pes_[static_cast<std::size_t>(i)].consume(PeSource::FromRouter, f);
                ++flits_consumed_;
                metrics_.record_flit(cycle_);
                emit(EventKind::Eject, i, in_dir, Direction::Local, f.packet_id, f.seq, f.length);
                if (f.kind == FlitKind::Tail)
                    metrics_.record_delivery({f.packet_id, f.src, f.dst, f.length, f.created_cycle}, cycle_, false);
                continue;
            }
            const int nb = neighbor(i, mv.output);
            accept_flit(routers_[static_cast<std::size_t>(nb)].input(opposite(mv.output)), f);
            emit(EventKind::Move, i, in_dir, mv.output, f.packet_id, f.seq, f.length);
        }
    }

    for (int i = 0; i < n; ++i)
        pes_[static_cast<std::size_t>(i)].set_pending_bus_header(bus_.flit_for(i, routers_[static_cast<std::size_t>(i)].pos) != nullptr);
}

// Phase 6.
void Engine::phase_counters() {
    for (auto& r : routers_) {
        const auto& m = moved_[static_cast<std::size_t>(r.id)];
        for (int o = 0; o < kRouterPorts; ++o) {
            auto& c = r.out[static_cast<std::size_t>(o)].counter;
            c = m[static_cast<std::size_t>(o)] ? c.reset() : c.tick();
        }
    }
}

// Phase 7.
void Engine::phase_inject() {
    for (auto& r : routers_) {
        auto& src = sources_[static_cast<std::size_t>(r.id)];
        if (auto p = traffic_.maybe_inject(r.id, cycle_)) {
            p->id = next_packet_id_++;
            src.queue.push_back(*p);
            metrics_.record_generated();
            emit(EventKind::Generate, r.id, Direction::Local, Direction::Local, p->id, 0, p->length);
            const auto qlen = static_cast<std::int64_t>(src.queue.size());
            max_queue_ = std::max(max_queue_, qlen);
            if (qlen > cfg_.saturation_queue_limit) saturated_ = true;
        }
        auto& local = r.input(Direction::Local);
        if (local.fifo.full()) continue;
        if (!src.active) {
            if (src.queue.empty() || !injection_allowed(r, cfg_.injection_limit)) continue;
            src.active = src.queue.front();
            src.queue.pop_front();
            src.next_seq = 0;
        }
        const auto& p = *src.active;
        const Flit f = make_flit(p.id, p.src, p.dst, src.next_seq, p.length, p.created_cycle);
        accept_flit(local, f);
        ++flits_injected_;
        emit(EventKind::Inject, r.id, Direction::Local, Direction::Local, f.packet_id, f.seq, f.length);
        if (++src.next_seq == p.length) src.active.reset();
    }
}

void Engine::step() {
    phase_bus_control();
    phase_requests();
    phase_arbitrate();
    phase_traverse();
    phase_counters();
    phase_inject();
    if (audit_) audit();
    ++cycle_;
}

Report Engine::run() {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    while (cycle_ < cfg_.sim_cycles) {
        step();
        if (cfg_.max_wall_seconds > 0 && (cycle_ & 4095) == 0) {
            const std::chrono::duration<double> el = clock::now() - start;
            if (el.count() > cfg_.max_wall_seconds)
                throw RunTimeout("run exceeded " + std::to_string(cfg_.max_wall_seconds) + " s at cycle " +
                                 std::to_string(cycle_));
        }
    }
    return report();
}

Report Engine::report() const {
    Report r = metrics_.finalize();
    r.packets_in_flight = packets_in_flight();
    r.packets_queued = packets_queued();
    r.max_source_queue = max_queue_;
    r.saturated = saturated_;
    r.cycles_run = cycle_;
    return r;
}

std::int64_t Engine::flits_in_network() const {
    std::int64_t n = 0;
    for (const auto& r : routers_)
        for (const auto& ch : r.in) n += ch.fifo.size();
    if (bus_.ib) ++n;
    for (int i = 0; i < cfg_.node_count(); ++i)
        if (bus_.flit_for(i, routers_[static_cast<std::size_t>(i)].pos)) ++n;
    return n;
}

std::int64_t Engine::packets_queued() const {
    std::int64_t n = 0;
    for (const auto& s : sources_) n += static_cast<std::int64_t>(s.queue.size());
    return n;
}

std::int64_t Engine::packets_in_flight() const {
    return metrics_.generated() - metrics_.delivered() - packets_queued();
}

void Engine::audit() const {
    const auto fail = [&](const std::string& what) { throw InvariantViolation(what + " (cycle " + std::to_string(cycle_) + ")"); };

    // reservation exclusivity
    for (const auto& r : routers_) {
        for (int o = 0; o < kRouterPorts; ++o) {
            int holders = 0;
            for (int c = 0; c < kRouterPorts; ++c)
                if (r.in[static_cast<std::size_t>(c)].reserved_output == static_cast<Direction>(o)) {
                    ++holders;
                    if (r.out[static_cast<std::size_t>(o)].holder != c) fail("holder mismatch at " + where(r.id));
                }
            if (holders > 1) fail("output reserved twice at " + where(r.id));
            if (r.out[static_cast<std::size_t>(o)].busy != (holders == 1)) fail("busy flag mismatch at " + where(r.id));
        }
    }

    // bus mutual exclusion
    int granted = 0;
    for (const auto& r : routers_)
        if (r.bus_state == BusRequestState::Granted) {
            ++granted;
            if (!arbiter_.grant() || arbiter_.grant()->router != r.id) fail("router uses bus without the grant at " + where(r.id));
        }
    if (granted > 1) fail("more than one router holds the bus");

    // flit conservation
    if (flits_injected_ - flits_consumed_ != flits_in_network()) fail("flit conservation broken");

    // packet conservation: generated = delivered + in flight + queued
    std::unordered_set<PacketId> live;
    for (const auto& r : routers_)
        for (const auto& ch : r.in)
            for (int k = 0; k < ch.fifo.size(); ++k) live.insert(ch.fifo.at(k).packet_id);
    if (bus_.ib) live.insert(bus_.ib->packet_id);
    for (int i = 0; i < cfg_.node_count(); ++i)
        if (const auto* f = bus_.flit_for(i, routers_[static_cast<std::size_t>(i)].pos)) live.insert(f->packet_id);
    for (const auto& s : sources_)
        if (s.active) live.insert(s.active->id);
    if (static_cast<std::int64_t>(live.size()) != packets_in_flight()) fail("packet conservation broken");
}

PacketId Engine::place_packet(Coord src, Coord dst, int length, std::span<const PlacedSegment> segments) {
    int total = 0;
    for (const auto& s : segments) total += s.flits;
    if (total != length || length < 2) throw std::invalid_argument("segments must hold exactly length >= 2 flits");
    if (src == dst) throw std::invalid_argument("self-addressed packet");
    const PacketId id = next_packet_id_++;
    int seq = 0;
    for (const auto& s : segments) {
        auto& r = routers_[static_cast<std::size_t>(node_index(s.node, cfg_))];
        auto& ch = r.input(s.port);
        if (seq == 0 && !ch.fifo.empty()) throw std::invalid_argument("header must be placed at a FIFO head");
        for (int k = 0; k < s.flits; ++k) {
            accept_flit(ch, make_flit(id, src, dst, seq++, length, cycle_));
            ++flits_injected_;
        }
        if (s.reserve) {
            auto& port = r.output(*s.reserve);
            if (port.busy || ch.reserved_output) throw std::invalid_argument("conflicting reservation");
            port.busy = true;
            port.holder = port_index(s.port);
            ch.reserved_output = *s.reserve;
        }
    }
    metrics_.record_generated();
    return id;
}

PacketId Engine::enqueue_packet(Coord src, Coord dst, int length) {
    if (src == dst || length < 2) throw std::invalid_argument("invalid packet");
    PacketDescriptor p{next_packet_id_++, src, dst, length, cycle_};
    sources_[static_cast<std::size_t>(node_index(src, cfg_))].queue.push_back(p);
    metrics_.record_generated();
    return p.id;
}

Report run(const SimConfig& cfg) {
    validate(cfg);
    Engine e(cfg);
    return e.run();
}

}  // namespace busnoc
