#pragma once

#include "tvg/graph.hpp"
#include "tvg/schedule.hpp"

#include <span>
#include <utility>
#include <vector>

namespace tvg {

/// Whether edge e is available at tick t. Throws DomainError for unknown e.
bool presence(const Tvg& g, EdgeId e, Tick t);

struct Snapshot {
    Tick start = 0;
    StaticGraph graph;

    bool operator==(const Snapshot&) const = default;
};

/// Snapshots at every topological event up to and including `horizon`; each
/// graph holds on [start, next start). Consecutive graphs always differ.
std::vector<Snapshot> snapshot_sequence(const Tvg& g, Tick horizon);

/// Footprint (V, E).
StaticGraph underlying_graph(const Tvg& g);
/// Edges present only finitely often.
std::vector<EdgeId> eventual_missing_edges(const Tvg& g);
/// Footprint minus the eventual missing edges.
StaticGraph eventual_underlying_graph(const Tvg& g);

/// Footprint neighbours of p, sorted. Throws DomainError for unknown p.
std::vector<Vertex> neighborhood(const Tvg& g, Vertex p);

/// g with each listed edge additionally forced present over its TimeSpec.
/// Only presence changes; the footprint is untouched.
Tvg oplus(const Tvg& g, std::span<const std::pair<EdgeId, TimeSpec>> additions);
Tvg oplus(const Tvg& g, EdgeId e, const TimeSpec& spec);

/// Whether a recurring edge has, every period, a presence run at least as
/// long as its latency (so it can carry a message after any time).
bool recurrently_usable(const Edge& e);

/// Connected-over-time membership: after every t, a temporal path exists
/// between every ordered pair. Decided as connectivity of the graph formed by
/// recurrently usable edges.
bool is_cot(const Tvg& g);

/// Footprint equals (as a labelled graph) some member of `family`.
bool induced_subclass_check(const Tvg& g, std::span<const StaticGraph> family);

}  // namespace tvg
