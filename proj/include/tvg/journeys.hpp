#pragma once

#include "tvg/graph.hpp"
#include "tvg/time.hpp"

#include <optional>
#include <vector>

namespace tvg {

struct Hop {
    EdgeId edge;
    Vertex from;
    Vertex to;
    Tick departure = 0;
    Tick arrival = 0;

    bool operator==(const Hop&) const = default;
};

/// Sequence of hops along a static path; each hop is present over its whole
/// latency window and departs no earlier than the previous arrival.
struct TemporalPath {
    std::vector<Hop> hops;

    Tick arrival() const { return hops.back().arrival; }
    bool operator==(const TemporalPath&) const = default;
};

/// Presence holds at every tick of [t, t + latency(e)).
bool hop_feasible(const Tvg& g, EdgeId e, Tick t);

/// Earliest t' >= not_before at which e is hop-feasible.
std::optional<Tick> earliest_departure(const Tvg& g, EdgeId e, Tick not_before);

/// after + |V| * (max period + max latency) + max base. No journey departing
/// after `after` first arrives later than this.
Tick completeness_horizon(const Tvg& g, Tick after);

/// Foremost journey from p to q whose first departure is strictly after
/// `after`. Throws DomainError when p == q or either vertex is unknown.
std::optional<TemporalPath> exists_temporal_path(const Tvg& g, Vertex p, Vertex q, Tick after);

/// Arrival time of the foremost journey, or infinity.
ExtendedTime earliest_arrival(const Tvg& g, Vertex p, Vertex q, Tick after);

/// Foremost arrival at every vertex from p (p itself maps to after + 1).
std::vector<ExtendedTime> earliest_arrivals_from(const Tvg& g, Vertex p, Tick after);

}  // namespace tvg
