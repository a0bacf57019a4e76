#include "tvg/graph.hpp"

#include "tvg/error.hpp"

#include <algorithm>
#include <numeric>

namespace tvg {

namespace {

std::vector<std::string> sorted_unique_names(std::vector<std::string> names) {
    std::sort(names.begin(), names.end());
    auto dup = std::adjacent_find(names.begin(), names.end());
    if (dup != names.end()) {
        throw DomainError("duplicate vertex '" + *dup + "'");
    }
    return names;
}

std::optional<Vertex> lookup(std::span<const std::string> names, std::string_view name) {
    auto it = std::lower_bound(names.begin(), names.end(), name);
    if (it == names.end() || *it != name) {
        return std::nullopt;
    }
    return Vertex{static_cast<std::uint32_t>(it - names.begin())};
}

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) {
            return false;
        }
        parent_[a] = b;
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace

// --- StaticGraph ------------------------------------------------------------

StaticGraph StaticGraph::sorted(std::vector<std::string> vertices, std::vector<VertexPair> edges) {
    StaticGraph g;
    g.vertices_ = std::move(vertices);
    for (auto& e : edges) {
        if (e.u == e.v) {
            throw DomainError("self loop on vertex '" + g.vertices_.at(e.u.index) + "'");
        }
        if (e.u.index >= g.vertices_.size() || e.v.index >= g.vertices_.size()) {
            throw DomainError("edge endpoint out of range");
        }
        e = VertexPair::of(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    g.edges_ = std::move(edges);
    return g;
}

StaticGraph::StaticGraph(std::vector<std::string> vertices, std::vector<VertexPair> edges) {
    auto names = vertices;
    std::sort(names.begin(), names.end());
    if (names != vertices) {
        // Re-index edges against the sorted order.
        auto sorted_names = sorted_unique_names(vertices);
        for (auto& e : edges) {
            e.u = *lookup(sorted_names, vertices.at(e.u.index));
            e.v = *lookup(sorted_names, vertices.at(e.v.index));
        }
        *this = sorted(std::move(sorted_names), std::move(edges));
        return;
    }
    *this = sorted(sorted_unique_names(std::move(vertices)), std::move(edges));
}

StaticGraph StaticGraph::from_names(std::vector<std::string> vertices,
                                    const std::vector<std::pair<std::string, std::string>>& edges) {
    auto names = sorted_unique_names(std::move(vertices));
    std::vector<VertexPair> pairs;
    pairs.reserve(edges.size());
    for (const auto& [a, b] : edges) {
        auto va = lookup(names, a);
        auto vb = lookup(names, b);
        if (!va || !vb) {
            throw DomainError("edge " + a + "-" + b + " references an unknown vertex");
        }
        pairs.push_back({*va, *vb});
    }
    return sorted(std::move(names), std::move(pairs));
}

std::optional<Vertex> StaticGraph::vertex(std::string_view name) const { return lookup(vertices_, name); }

bool StaticGraph::has_edge(VertexPair e) const {
    return std::binary_search(edges_.begin(), edges_.end(), VertexPair::of(e.u, e.v));
}

std::vector<Vertex> StaticGraph::neighbors(Vertex v) const {
    std::vector<Vertex> out;
    for (const auto& e : edges_) {
        if (e.has(v)) {
            out.push_back(e.other(v));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool StaticGraph::connected() const {
    if (vertices_.size() <= 1) {
        return true;
    }
    DisjointSets sets(vertices_.size());
    std::size_t components = vertices_.size();
    for (const auto& e : edges_) {
        if (sets.unite(e.u.index, e.v.index)) {
            --components;
        }
    }
    return components == 1;
}

bool is_tree(const StaticGraph& g) {
    return g.vertex_count() > 0 && g.connected() && g.edge_count() == g.vertex_count() - 1;
}

// --- Tvg --------------------------------------------------------------------

Tvg::Tvg(std::vector<std::string> vertices, std::vector<EdgeSpec> edges, Tick process_latency)
    : vertices_(sorted_unique_names(std::move(vertices))), process_latency_(process_latency) {
    // Internal actions are instantaneous; the field is carried for the data model only.
    if (process_latency_ != 0) {
        throw DomainError("process latency is fixed to 0, got " + std::to_string(process_latency_));
    }
    edges_.reserve(edges.size());
    for (auto& spec : edges) {
        auto a = lookup(vertices_, spec.u);
        auto b = lookup(vertices_, spec.v);
        if (!a || !b) {
            throw DomainError("edge " + spec.u + "-" + spec.v + " references an unknown vertex");
        }
        if (*a == *b) {
            throw DomainError("self loop on vertex '" + spec.u + "'");
        }
        if (spec.latency == 0) {
            throw DomainError("edge " + spec.u + "-" + spec.v + " has zero latency");
        }
        if (spec.schedule.never_present()) {
            throw DomainError("edge " + spec.u + "-" + spec.v + " is never present");
        }
        edges_.push_back({VertexPair::of(*a, *b), spec.latency, std::move(spec.schedule)});
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& x, const Edge& y) { return x.ends < y.ends; });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (edges_[i].ends == edges_[i - 1].ends) {
            throw DomainError("parallel edges between " + vertices_[edges_[i].ends.u.index] + " and " +
                              vertices_[edges_[i].ends.v.index]);
        }
    }
    index_incidence();
}

void Tvg::index_incidence() {
    incident_.assign(vertices_.size(), {});
    for (std::uint32_t i = 0; i < edges_.size(); ++i) {
        incident_[edges_[i].ends.u.index].push_back(EdgeId{i});
        incident_[edges_[i].ends.v.index].push_back(EdgeId{i});
    }
}

const Edge& Tvg::edge(EdgeId e) const {
    if (e.index >= edges_.size()) {
        throw DomainError("unknown edge id " + std::to_string(e.index));
    }
    return edges_[e.index];
}

const std::string& Tvg::name(Vertex v) const {
    if (v.index >= vertices_.size()) {
        throw DomainError("unknown vertex index " + std::to_string(v.index));
    }
    return vertices_[v.index];
}

std::optional<Vertex> Tvg::find_vertex(std::string_view name) const { return lookup(vertices_, name); }

Vertex Tvg::vertex(std::string_view name) const {
    auto v = find_vertex(name);
    if (!v) {
        throw DomainError("unknown vertex '" + std::string(name) + "'");
    }
    return *v;
}

std::optional<EdgeId> Tvg::find_edge(Vertex a, Vertex b) const {
    if (a == b) {
        return std::nullopt;
    }
    auto key = VertexPair::of(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), key,
                               [](const Edge& e, const VertexPair& k) { return e.ends < k; });
    if (it == edges_.end() || it->ends != key) {
        return std::nullopt;
    }
    return EdgeId{static_cast<std::uint32_t>(it - edges_.begin())};
}

EdgeId Tvg::edge_by_label(std::string_view label) const {
    for (std::uint32_t i = 0; i < edges_.size(); ++i) {
        const auto& u = vertices_[edges_[i].ends.u.index];
        const auto& v = vertices_[edges_[i].ends.v.index];
        if (label == u + "-" + v || label == v + "-" + u) {
            return EdgeId{i};
        }
    }
    throw DomainError("unknown edge '" + std::string(label) + "'");
}

std::string Tvg::edge_label(EdgeId e) const {
    const auto& ed = edge(e);
    return vertices_[ed.ends.u.index] + "-" + vertices_[ed.ends.v.index];
}

std::span<const EdgeId> Tvg::incident(Vertex v) const {
    if (v.index >= incident_.size()) {
        throw DomainError("unknown vertex index " + std::to_string(v.index));
    }
    return incident_[v.index];
}

Tvg Tvg::with_schedule(EdgeId e, PresenceSchedule schedule) const {
    edge(e);
    if (schedule.never_present()) {
        throw DomainError("edge " + edge_label(e) + " would never be present");
    }
    Tvg out = *this;
    out.edges_[e.index].schedule = std::move(schedule);
    return out;
}

bool Tvg::comparable(const Tvg& other) const {
    if (vertices_ != other.vertices_ || process_latency_ != other.process_latency_ ||
        edges_.size() != other.edges_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (edges_[i].ends != other.edges_[i].ends || edges_[i].latency != other.edges_[i].latency) {
            return false;
        }
    }
    return true;
}

Tick Tvg::max_base() const noexcept {
    Tick m = 0;
    for (const auto& e : edges_) {
        m = std::max(m, e.schedule.base());
    }
    return m;
}

Tick Tvg::max_period() const noexcept {
    Tick m = 1;
    for (const auto& e : edges_) {
        m = std::max(m, e.schedule.period());
    }
    return m;
}

Tick Tvg::max_latency() const noexcept {
    Tick m = 0;
    for (const auto& e : edges_) {
        m = std::max(m, e.latency);
    }
    return m;
}

Tick Tvg::joint_period() const {
    Tick p = 1;
    for (const auto& e : edges_) {
        p = checked_lcm(p, e.schedule.period());
    }
    return p;
}

StaticGraph Tvg::graph_of(std::vector<VertexPair> edges) const { return StaticGraph(vertices_, std::move(edges)); }

}  // namespace tvg
