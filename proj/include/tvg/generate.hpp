#pragma once

#include "tvg/graph.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace tvg {

using Rng = std::mt19937_64;

/// "complete:N", "cycle:N", "path:N", "star:N" (alias "k3" = complete:3),
/// over vertices a, b, c, ...
StaticGraph named_footprint(std::string_view spec);

struct ScheduleShape {
    Tick max_period = 8;
    Tick max_base = 8;
};

/// Arbitrary non-never schedule; `recurring` forces a non-empty pattern,
/// `usable_run` (with recurring) a recurring run of at least that length.
PresenceSchedule random_schedule(Rng& rng, const ScheduleShape& shape, bool recurring, Tick usable_run = 0);

/// Schedule with an empty pattern that is present at least once.
PresenceSchedule random_finite_schedule(Rng& rng, const ScheduleShape& shape);

struct CotOptions {
    Tick max_period = 8;
    Tick max_base = 8;
    Tick max_latency = 2;
    /// Probability that a non-tree edge is made eventually missing.
    double density = 0.5;
};

/// Member of COT restricted to `footprint`: a random spanning tree of it
/// carries recurrently usable edges, other edges go missing with
/// probability `density`. Throws DomainError for a disconnected footprint.
Tvg generate_cot(std::uint64_t seed, const StaticGraph& footprint, const CotOptions& options = {});

struct RandomOptions {
    std::size_t max_vertices = 5;
    Tick max_period = 8;
    Tick max_base = 8;
    Tick max_latency = 3;
    double edge_probability = 0.6;
    double missing_probability = 0.3;
};

/// Unconstrained instance, possibly not connected over time.
Tvg random_tvg(std::uint64_t seed, const RandomOptions& options = {});

/// Comparable copy of g: each edge, with probability 1/2, keeps its schedule
/// up to a random cut and continues with a fresh random schedule.
Tvg random_variant(const Tvg& g, Rng& rng, const ScheduleShape& shape);

}  // namespace tvg
