#include "tvg/sim.hpp"

#include "tvg/error.hpp"
#include "tvg/tvg_ops.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace tvg {

namespace {

struct Message {
    std::uint64_t id = 0;
    EdgeId edge;
    Vertex from;
    Vertex to;
    Tick invoked = 0;
    Payload payload;
};

struct InFlight {
    Tick departure = 0;
    Tick due = 0;
    Message message;
};

struct TimerEntry {
    std::uint64_t seq = 0;
    Vertex process;
    std::uint64_t tag = 0;
};

struct Pending {
    int phase = 0;
    Vertex process;
    std::uint32_t peer = 0;
    std::uint64_t seq = 0;
    EventIn event;

    auto key() const { return std::make_tuple(phase, process.index, peer, seq); }
};

class Engine {
public:
    Engine(const Tvg& g, const AlgorithmSpec& algo, Tick horizon, const RunOptions& options)
        : g_(g),
          horizon_(horizon),
          options_(options),
          pending_(g.edge_count()),
          in_flight_(g.edge_count()),
          present_(g.edge_count(), false),
          outputs_(std::vector<std::string>(g.vertices().begin(), g.vertices().end()), horizon) {
        if (!algo.make_process) {
            throw DomainError("algorithm '" + algo.name + "' has no process factory");
        }
        std::vector<std::string> names(g.vertices().begin(), g.vertices().end());
        for (std::uint32_t p = 0; p < g.vertex_count(); ++p) {
            ProcessContext ctx{Vertex{p}, neighborhood(g, Vertex{p}), names};
            processes_.push_back(algo.make_process(ctx));
            if (!processes_.back()) {
                throw DomainError("algorithm '" + algo.name + "' produced a null process");
            }
        }
    }

    SimulationResult run() {
        ExecutionTrace exec;
        for (Tick t = 0;; ++t) {
            TickRecord rec = step(t);
            if (options_.record_execution) {
                exec.ticks.push_back(std::move(rec));
            }
            if (t == horizon_) {
                break;
            }
        }
        return {std::move(exec), std::move(outputs_)};
    }

private:
    TickRecord step(Tick t) {
        TickRecord rec;
        rec.tick = t;
        std::vector<Pending> events;

        if (t == 0) {
            for (std::uint32_t p = 0; p < processes_.size(); ++p) {
                events.push_back({0, Vertex{p}, 0, p, Init{}});
            }
        }

        // Phase 1: topology.
        for (std::uint32_t i = 0; i < g_.edge_count(); ++i) {
            const Edge& edge = g_.edges()[i];
            const bool now = edge.schedule.present(t);
            const bool before = present_[i];
            present_[i] = now;
            if (before == now) {
                continue;
            }
            EdgeId id{i};
            if (before && !now) {
                rec.disappeared.push_back(id);
                drop_in_flight(id, t, rec);
                events.push_back({1, edge.ends.u, edge.ends.v.index, 0, EdgeDown{edge.ends.v}});
                events.push_back({1, edge.ends.v, edge.ends.u.index, 0, EdgeDown{edge.ends.u}});
            } else {
                rec.appeared.push_back(id);
                events.push_back({1, edge.ends.u, edge.ends.v.index, 0, EdgeUp{edge.ends.v}});
                events.push_back({1, edge.ends.v, edge.ends.u.index, 0, EdgeUp{edge.ends.u}});
            }
        }

        // Phase 2: retry scan.
        for (std::uint32_t i = 0; i < g_.edge_count(); ++i) {
            if (!present_[i] || pending_[i].empty()) {
                continue;
            }
            for (auto& m : pending_[i]) {
                transmit(std::move(m), t, rec);
            }
            pending_[i].clear();
        }

        // Phase 3: deliveries.
        for (auto& flights : in_flight_) {
            auto split = std::stable_partition(flights.begin(), flights.end(),
                                               [t](const InFlight& f) { return f.due != t; });
            for (auto it = split; it != flights.end(); ++it) {
                Message& m = it->message;
                events.push_back({3, m.to, m.from.index, m.id, Deliver{m.from, std::move(m.payload)}});
            }
            flights.erase(split, flights.end());
        }

        // Phase 4: timers.
        if (auto it = timers_.find(t); it != timers_.end()) {
            for (const auto& timer : it->second) {
                events.push_back({4, timer.process, 0, timer.seq, Timer{timer.tag}});
            }
            timers_.erase(it);
        }

        // Phase 5: handlers.
        std::sort(events.begin(), events.end(), [](const Pending& a, const Pending& b) { return a.key() < b.key(); });
        for (auto& ev : events) {
            if (options_.record_execution) {
                rec.dispatched.push_back(describe(ev));
            }
            auto commands = processes_[ev.process.index]->handle(t, ev.event);
            for (auto& cmd : commands) {
                apply(ev.process, t, std::move(cmd), rec);
            }
        }

        for (std::uint32_t p = 0; p < processes_.size(); ++p) {
            auto changes = outputs_.changes(Vertex{p});
            if (!changes.empty() && changes.back().tick == t) {
                rec.output_changed.push_back(Vertex{p});
            }
        }
        return rec;
    }

    void drop_in_flight(EdgeId e, Tick t, TickRecord& rec) {
        auto& flights = in_flight_[e.index];
        auto split = std::stable_partition(flights.begin(), flights.end(),
                                           [t](const InFlight& f) { return f.due == t; });
        for (auto it = split; it != flights.end(); ++it) {
            rec.lost.push_back(record_of(it->message, it->departure, it->due));
            requeue(std::move(it->message));
        }
        flights.erase(split, flights.end());
    }

    void requeue(Message m) {
        auto& queue = pending_[m.edge.index];
        auto pos = std::lower_bound(queue.begin(), queue.end(), m.id,
                                    [](const Message& x, std::uint64_t id) { return x.id < id; });
        queue.insert(pos, std::move(m));
    }

    void transmit(Message m, Tick t, TickRecord& rec) {
        Tick due = checked_add(t, g_.edges()[m.edge.index].latency);
        rec.transmitted.push_back(record_of(m, t, due));
        in_flight_[m.edge.index].push_back({t, due, std::move(m)});
    }

    static MessageRecord record_of(const Message& m, Tick departure, Tick due) {
        return {m.id, m.edge, m.from, m.to, departure, due};
    }

    DispatchRecord describe(const Pending& ev) const {
        DispatchRecord d;
        d.process = ev.process;
        std::visit(
            [&](const auto& e) {
                using T = std::decay_t<decltype(e)>;
                if constexpr (std::is_same_v<T, Init>) {
                    d.kind = EventKind::init;
                } else if constexpr (std::is_same_v<T, EdgeUp>) {
                    d.kind = EventKind::edge_up;
                    d.peer = e.neighbor;
                } else if constexpr (std::is_same_v<T, EdgeDown>) {
                    d.kind = EventKind::edge_down;
                    d.peer = e.neighbor;
                } else if constexpr (std::is_same_v<T, Deliver>) {
                    d.kind = EventKind::deliver;
                    d.peer = e.from;
                    d.message = ev.seq;
                    d.payload = e.payload;
                } else {
                    d.kind = EventKind::timer;
                    d.tag = e.tag;
                }
            },
            ev.event);
        return d;
    }

    void apply(Vertex p, Tick t, Command cmd, TickRecord& rec) {
        std::visit(
            [&](auto&& c) {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, SendRetry>) {
                    auto e = g_.find_edge(p, c.to);
                    if (!e || c.to.index >= g_.vertex_count()) {
                        throw SimulationError(t, g_.name(p), "SendRetry to a non-neighbour");
                    }
                    if (c.payload.size() > max_payload_bytes) {
                        throw SimulationError(t, g_.name(p), "payload exceeds " + std::to_string(max_payload_bytes) +
                                                                 " bytes");
                    }
                    Message m{next_message_++, *e, p, c.to, t, std::move(c.payload)};
                    if (present_[e->index]) {
                        transmit(std::move(m), t, rec);
                    } else {
                        rec.queued.push_back(record_of(m, t, t));
                        pending_[e->index].push_back(std::move(m));
                    }
                } else if constexpr (std::is_same_v<T, SetTimer>) {
                    if (c.delay == 0) {
                        throw SimulationError(t, g_.name(p), "SetTimer delay must be at least 1");
                    }
                    timers_[checked_add(t, c.delay)].push_back({next_timer_++, p, c.tag});
                } else {
                    if (!std::equal(c.graph.vertices().begin(), c.graph.vertices().end(), g_.vertices().begin(),
                                    g_.vertices().end())) {
                        throw SimulationError(t, g_.name(p), "SetOutput graph is not over the TVG's vertex set");
                    }
                    outputs_.record(p, t, std::move(c.graph));
                }
            },
            std::move(cmd));
    }

    const Tvg& g_;
    Tick horizon_;
    RunOptions options_;
    std::vector<std::unique_ptr<Process>> processes_;
    std::vector<std::vector<Message>> pending_;
    std::vector<std::vector<InFlight>> in_flight_;
    std::vector<bool> present_;
    std::map<Tick, std::vector<TimerEntry>> timers_;
    OutputTrace outputs_;
    std::uint64_t next_message_ = 0;
    std::uint64_t next_timer_ = 0;
};

}  // namespace

SimulationResult run(const Tvg& g, const AlgorithmSpec& algo, Tick horizon, const RunOptions& options) {
    Engine engine(g, algo, horizon, options);
    return engine.run();
}

}  // namespace tvg
