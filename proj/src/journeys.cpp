#include "tvg/journeys.hpp"

#include "tvg/error.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace tvg {

bool hop_feasible(const Tvg& g, EdgeId e, Tick t) {
    const Edge& edge = g.edge(e);
    ExtendedTime stop = edge.schedule.next_absent(t);
    return edge.schedule.present(t) && stop >= ExtendedTime(checked_add(t, edge.latency));
}

std::optional<Tick> earliest_departure(const Tvg& g, EdgeId e, Tick not_before) {
    const Edge& edge = g.edge(e);
    return edge.schedule.earliest_window(not_before, edge.latency);
}

Tick completeness_horizon(const Tvg& g, Tick after) {
    Tick per_hop = checked_add(g.max_period(), g.max_latency());
    return checked_add(checked_add(after, checked_mul(g.vertex_count(), per_hop)), g.max_base());
}

namespace {

struct Label {
    ExtendedTime arrival = ExtendedTime::infinity();
    std::optional<Hop> via;
};

std::vector<Label> foremost(const Tvg& g, Vertex p, Tick after) {
    std::vector<Label> labels(g.vertex_count());
    std::vector<bool> settled(g.vertex_count(), false);
    using Entry = std::pair<Tick, std::uint32_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;

    const Tick ready = checked_add(after, 1);
    labels[p.index].arrival = ready;
    queue.push({ready, p.index});
    while (!queue.empty()) {
        auto [time, u] = queue.top();
        queue.pop();
        if (settled[u]) {
            continue;
        }
        settled[u] = true;
        for (EdgeId e : g.incident(Vertex{u})) {
            const Edge& edge = g.edges()[e.index];
            Vertex v = edge.ends.other(Vertex{u});
            if (settled[v.index]) {
                continue;
            }
            auto dep = edge.schedule.earliest_window(time, edge.latency);
            if (!dep) {
                continue;
            }
            Tick arr = checked_add(*dep, edge.latency);
            Label& lv = labels[v.index];
            bool better = ExtendedTime(arr) < lv.arrival ||
                          (ExtendedTime(arr) == lv.arrival && lv.via && e < lv.via->edge);
            if (better) {
                lv.arrival = arr;
                lv.via = Hop{e, Vertex{u}, v, *dep, arr};
                queue.push({arr, v.index});
            }
        }
    }
    return labels;
}

void check_endpoints(const Tvg& g, Vertex p, Vertex q) {
    g.name(p);
    g.name(q);
    if (p == q) {
        throw DomainError("temporal paths are defined between distinct processes");
    }
}

}  // namespace

std::vector<ExtendedTime> earliest_arrivals_from(const Tvg& g, Vertex p, Tick after) {
    g.name(p);
    auto labels = foremost(g, p, after);
    std::vector<ExtendedTime> out;
    out.reserve(labels.size());
    for (const auto& l : labels) {
        out.push_back(l.arrival);
    }
    return out;
}

std::optional<TemporalPath> exists_temporal_path(const Tvg& g, Vertex p, Vertex q, Tick after) {
    check_endpoints(g, p, q);
    auto labels = foremost(g, p, after);
    if (labels[q.index].arrival.is_infinite()) {
        return std::nullopt;
    }
    TemporalPath path;
    for (Vertex v = q; v != p;) {
        const Hop& hop = *labels[v.index].via;
        path.hops.push_back(hop);
        v = hop.from;
    }
    std::reverse(path.hops.begin(), path.hops.end());
    return path;
}

ExtendedTime earliest_arrival(const Tvg& g, Vertex p, Vertex q, Tick after) {
    check_endpoints(g, p, q);
    return foremost(g, p, after)[q.index].arrival;
}

}  // namespace tvg
