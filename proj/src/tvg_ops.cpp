#include "tvg/tvg_ops.hpp"

#include "tvg/error.hpp"

#include <algorithm>

namespace tvg {

bool presence(const Tvg& g, EdgeId e, Tick t) { return g.edge(e).schedule.present(t); }

std::vector<Snapshot> snapshot_sequence(const Tvg& g, Tick horizon) {
    std::vector<Tick> events{0};
    const Tick stop = checked_add(horizon, 1);
    for (const auto& e : g.edges()) {
        IntervalSet support = e.schedule.unroll(0, stop);
        for (const auto& iv : support.intervals()) {
            events.push_back(iv.start);
            if (iv.end <= horizon) {
                events.push_back(iv.end);
            }
        }
    }
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());

    std::vector<Snapshot> out;
    for (Tick t : events) {
        std::vector<VertexPair> present;
        for (const auto& e : g.edges()) {
            if (e.schedule.present(t)) {
                present.push_back(e.ends);
            }
        }
        StaticGraph snap = g.graph_of(std::move(present));
        if (out.empty() || out.back().graph != snap) {
            out.push_back({t, std::move(snap)});
        }
    }
    return out;
}

StaticGraph underlying_graph(const Tvg& g) {
    std::vector<VertexPair> pairs;
    for (const auto& e : g.edges()) {
        pairs.push_back(e.ends);
    }
    return g.graph_of(std::move(pairs));
}

std::vector<EdgeId> eventual_missing_edges(const Tvg& g) {
    std::vector<EdgeId> out;
    for (std::uint32_t i = 0; i < g.edge_count(); ++i) {
        if (!g.edges()[i].schedule.recurring()) {
            out.push_back(EdgeId{i});
        }
    }
    return out;
}

StaticGraph eventual_underlying_graph(const Tvg& g) {
    std::vector<VertexPair> pairs;
    for (const auto& e : g.edges()) {
        if (e.schedule.recurring()) {
            pairs.push_back(e.ends);
        }
    }
    return g.graph_of(std::move(pairs));
}

std::vector<Vertex> neighborhood(const Tvg& g, Vertex p) {
    std::vector<Vertex> out;
    for (EdgeId e : g.incident(p)) {
        out.push_back(g.edges()[e.index].ends.other(p));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Tvg oplus(const Tvg& g, std::span<const std::pair<EdgeId, TimeSpec>> additions) {
    Tvg out = g;
    for (const auto& [e, spec] : additions) {
        const auto& current = out.edge(e).schedule;
        out = out.with_schedule(e, current.united(PresenceSchedule::from_spec(spec)));
    }
    return out;
}

Tvg oplus(const Tvg& g, EdgeId e, const TimeSpec& spec) {
    std::pair<EdgeId, TimeSpec> one{e, spec};
    return oplus(g, std::span(&one, 1));
}

bool recurrently_usable(const Edge& e) {
    return e.schedule.recurring() && e.schedule.longest_recurring_run() >= ExtendedTime(e.latency);
}

bool is_cot(const Tvg& g) {
    std::vector<VertexPair> usable;
    for (const auto& e : g.edges()) {
        if (recurrently_usable(e)) {
            usable.push_back(e.ends);
        }
    }
    return g.graph_of(std::move(usable)).connected();
}

bool induced_subclass_check(const Tvg& g, std::span<const StaticGraph> family) {
    StaticGraph footprint = underlying_graph(g);
    return std::any_of(family.begin(), family.end(), [&](const StaticGraph& f) { return f == footprint; });
}

}  // namespace tvg
