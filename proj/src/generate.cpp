#include "tvg/generate.hpp"

#include "tvg/error.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace tvg {

namespace {

Tick uniform(Rng& rng, Tick lo, Tick hi) { return std::uniform_int_distribution<Tick>(lo, hi)(rng); }

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::vector<std::string> vertex_names(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(n <= 26 ? std::string(1, static_cast<char>('a' + i)) : "v" + std::to_string(i));
    }
    return out;
}

/// Random subset of [lo, hi) as a union of short intervals.
IntervalSet random_support(Rng& rng, Tick lo, Tick hi) {
    IntervalSet out;
    for (Tick t = lo; t < hi; ++t) {
        if (coin(rng, 0.4)) {
            Tick len = uniform(rng, 1, std::max<Tick>(1, (hi - t + 1) / 2));
            out.add(t, std::min(hi, t + len));
            t += len;
        }
    }
    return out;
}

}  // namespace

StaticGraph named_footprint(std::string_view spec) {
    if (spec == "k3") {
        spec = "complete:3";
    }
    auto colon = spec.find(':');
    if (colon == std::string_view::npos) {
        throw DomainError("footprint '" + std::string(spec) + "' is not of the form kind:N");
    }
    auto kind = spec.substr(0, colon);
    auto count = spec.substr(colon + 1);
    std::size_t n = 0;
    auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), n);
    if (ec != std::errc{} || ptr != count.data() + count.size() || n < 2) {
        throw DomainError("footprint size must be an integer >= 2");
    }
    std::vector<VertexPair> edges;
    auto add = [&](std::uint32_t a, std::uint32_t b) { edges.push_back(VertexPair::of(Vertex{a}, Vertex{b})); };
    const auto last = static_cast<std::uint32_t>(n - 1);
    if (kind == "complete") {
        for (std::uint32_t a = 0; a < n; ++a) {
            for (std::uint32_t b = a + 1; b < n; ++b) {
                add(a, b);
            }
        }
    } else if (kind == "path" || kind == "cycle") {
        for (std::uint32_t a = 0; a < last; ++a) {
            add(a, a + 1);
        }
        if (kind == "cycle") {
            if (n < 3) {
                throw DomainError("a cycle needs at least 3 vertices");
            }
            add(last, 0);
        }
    } else if (kind == "star") {
        for (std::uint32_t a = 1; a < n; ++a) {
            add(0, a);
        }
    } else {
        throw DomainError("unknown footprint kind '" + std::string(kind) + "'");
    }
    return StaticGraph(vertex_names(n), std::move(edges));
}

PresenceSchedule random_schedule(Rng& rng, const ScheduleShape& shape, bool recurring, Tick usable_run) {
    while (true) {
        Tick base = uniform(rng, 0, shape.max_base);
        Tick period = uniform(rng, 1, std::max<Tick>(1, shape.max_period));
        IntervalSet transient = random_support(rng, 0, base);
        IntervalSet pattern;
        if (recurring && usable_run > 0) {
            if (usable_run >= period) {
                pattern.add(0, period);
            } else {
                // A run of length in [usable_run, period], possibly wrapping.
                Tick len = uniform(rng, usable_run, period);
                Tick start = uniform(rng, 0, period - 1);
                pattern.add(start, std::min(period, start + len));
                if (start + len > period) {
                    pattern.add(0, start + len - period);
                }
                pattern = pattern.united(random_support(rng, 0, period));
            }
        } else if (recurring || coin(rng, 0.7)) {
            pattern = random_support(rng, 0, period);
            if (recurring && pattern.empty()) {
                Tick t = uniform(rng, 0, period - 1);
                pattern.add(t, t + 1);
            }
        }
        PresenceSchedule s(std::move(transient), base, period, std::move(pattern));
        if (!s.never_present()) {
            return s;
        }
    }
}

PresenceSchedule random_finite_schedule(Rng& rng, const ScheduleShape& shape) {
    Tick base = uniform(rng, 1, std::max<Tick>(1, shape.max_base));
    IntervalSet transient = random_support(rng, 0, base);
    if (transient.empty()) {
        Tick t = uniform(rng, 0, base - 1);
        transient.add(t, t + 1);
    }
    return PresenceSchedule(std::move(transient), base, 1, IntervalSet{});
}

Tvg generate_cot(std::uint64_t seed, const StaticGraph& footprint, const CotOptions& options) {
    if (!footprint.connected()) {
        throw DomainError("footprint is not connected");
    }
    if (options.density < 0.0 || options.density > 1.0) {
        throw DomainError("density must lie in [0, 1]");
    }
    Rng rng(seed);
    const ScheduleShape shape{options.max_period, options.max_base};

    // Random spanning tree: Kruskal over a shuffled edge order.
    std::vector<std::size_t> order(footprint.edge_count());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::uint32_t> parent(footprint.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](std::uint32_t x) {
        while (parent[x] != x) {
            x = parent[x] = parent[parent[x]];
        }
        return x;
    };
    std::vector<bool> in_tree(footprint.edge_count(), false);
    for (std::size_t i : order) {
        const auto& e = footprint.edges()[i];
        auto a = root(e.u.index);
        auto b = root(e.v.index);
        if (a != b) {
            parent[a] = b;
            in_tree[i] = true;
        }
    }

    std::vector<EdgeSpec> edges;
    for (std::size_t i = 0; i < footprint.edge_count(); ++i) {
        const auto& e = footprint.edges()[i];
        Tick latency = uniform(rng, 1, std::max<Tick>(1, options.max_latency));
        PresenceSchedule schedule;
        if (in_tree[i]) {
            schedule = random_schedule(rng, shape, true, latency);
        } else if (coin(rng, options.density)) {
            schedule = random_finite_schedule(rng, shape);
        } else {
            schedule = random_schedule(rng, shape, true);
        }
        edges.push_back({footprint.name(e.u), footprint.name(e.v), latency, std::move(schedule)});
    }
    std::vector<std::string> names(footprint.vertices().begin(), footprint.vertices().end());
    return Tvg(std::move(names), std::move(edges));
}

Tvg random_tvg(std::uint64_t seed, const RandomOptions& options) {
    Rng rng(seed);
    const ScheduleShape shape{options.max_period, options.max_base};
    const auto n = static_cast<std::size_t>(uniform(rng, 2, std::max<std::size_t>(2, options.max_vertices)));
    auto names = vertex_names(n);
    std::vector<EdgeSpec> edges;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (!coin(rng, options.edge_probability)) {
                continue;
            }
            Tick latency = uniform(rng, 1, std::max<Tick>(1, options.max_latency));
            PresenceSchedule schedule = coin(rng, options.missing_probability)
                                            ? random_finite_schedule(rng, shape)
                                            : random_schedule(rng, shape, true);
            edges.push_back({names[a], names[b], latency, std::move(schedule)});
        }
    }
    return Tvg(std::move(names), std::move(edges));
}

Tvg random_variant(const Tvg& g, Rng& rng, const ScheduleShape& shape) {
    Tvg out = g;
    for (std::uint32_t i = 0; i < g.edge_count(); ++i) {
        if (!coin(rng, 0.5)) {
            continue;
        }
        const auto& head = g.edges()[i].schedule;
        Tick cut = uniform(rng, 0, shape.max_base + 2 * shape.max_period);
        PresenceSchedule tail = random_schedule(rng, shape, coin(rng, 0.7));
        PresenceSchedule spliced = PresenceSchedule::splice(head, cut, tail);
        if (!spliced.never_present()) {
            out = out.with_schedule(EdgeId{i}, std::move(spliced));
        }
    }
    return out;
}

}  // namespace tvg
