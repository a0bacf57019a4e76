#pragma once

#include "tvg/schedule.hpp"
#include "tvg/time.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tvg {

/// Index of a vertex in its graph's sorted vertex list.
struct Vertex {
    std::uint32_t index = 0;
    auto operator<=>(const Vertex&) const = default;
};

/// Index of an edge in its TVG's sorted edge list.
struct EdgeId {
    std::uint32_t index = 0;
    auto operator<=>(const EdgeId&) const = default;
};

/// Unordered vertex pair stored with u < v.
struct VertexPair {
    Vertex u;
    Vertex v;

    static VertexPair of(Vertex a, Vertex b) { return a < b ? VertexPair{a, b} : VertexPair{b, a}; }
    bool has(Vertex x) const noexcept { return u == x || v == x; }
    Vertex other(Vertex x) const noexcept { return x == u ? v : u; }
    auto operator<=>(const VertexPair&) const = default;
};

/// Simple loop-free undirected graph over named vertices.
class StaticGraph {
public:
    StaticGraph() = default;
    /// Vertex names must be distinct; they are sorted. Edges index the sorted list.
    StaticGraph(std::vector<std::string> vertices, std::vector<VertexPair> edges);
    /// Edge endpoints given by name.
    static StaticGraph from_names(std::vector<std::string> vertices,
                                  const std::vector<std::pair<std::string, std::string>>& edges);

    std::span<const std::string> vertices() const noexcept { return vertices_; }
    std::span<const VertexPair> edges() const noexcept { return edges_; }
    std::size_t vertex_count() const noexcept { return vertices_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    const std::string& name(Vertex v) const { return vertices_.at(v.index); }
    std::optional<Vertex> vertex(std::string_view name) const;
    bool has_edge(VertexPair e) const;
    std::vector<Vertex> neighbors(Vertex v) const;

    bool connected() const;
    /// Same vertices, edges restricted to those for which keep(e) holds.
    template <typename Pred>
    StaticGraph filtered(Pred keep) const {
        StaticGraph out;
        out.vertices_ = vertices_;
        for (const auto& e : edges_) {
            if (keep(e)) {
                out.edges_.push_back(e);
            }
        }
        return out;
    }
    StaticGraph with_edges(std::vector<VertexPair> edges) const { return StaticGraph::sorted(vertices_, std::move(edges)); }

    bool operator==(const StaticGraph&) const = default;

private:
    static StaticGraph sorted(std::vector<std::string> vertices, std::vector<VertexPair> edges);

    std::vector<std::string> vertices_;
    std::vector<VertexPair> edges_;
};

bool is_tree(const StaticGraph& g);

/// Undirected edge with constant latency and its presence schedule.
struct Edge {
    VertexPair ends;
    Tick latency = 1;
    PresenceSchedule schedule;

    bool operator==(const Edge&) const = default;
};

/// Edge description by vertex name, used to build a Tvg.
struct EdgeSpec {
    std::string u;
    std::string v;
    Tick latency = 1;
    PresenceSchedule schedule;
};

/// Time-varying graph with eventually-periodic presence. Immutable; edits
/// return new values.
class Tvg {
public:
    Tvg() = default;
    /// Throws DomainError on duplicate vertices, unknown endpoints, self loops,
    /// parallel edges, zero latency, or an edge that is never present.
    Tvg(std::vector<std::string> vertices, std::vector<EdgeSpec> edges, Tick process_latency = 0);

    std::span<const std::string> vertices() const noexcept { return vertices_; }
    std::span<const Edge> edges() const noexcept { return edges_; }
    std::size_t vertex_count() const noexcept { return vertices_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    Tick process_latency() const noexcept { return process_latency_; }

    /// Throws DomainError on unknown ids.
    const Edge& edge(EdgeId e) const;
    const std::string& name(Vertex v) const;
    Vertex vertex(std::string_view name) const;
    std::optional<Vertex> find_vertex(std::string_view name) const;
    std::optional<EdgeId> find_edge(Vertex a, Vertex b) const;
    /// Accepts "u-v" in either orientation.
    EdgeId edge_by_label(std::string_view label) const;
    std::string edge_label(EdgeId e) const;
    /// Incident edge ids in increasing order.
    std::span<const EdgeId> incident(Vertex v) const;

    /// Copy with one edge's schedule replaced.
    Tvg with_schedule(EdgeId e, PresenceSchedule schedule) const;

    /// Same vertices, edge endpoints, latencies and process latency.
    bool comparable(const Tvg& other) const;

    /// Largest base over all edge schedules.
    Tick max_base() const noexcept;
    Tick max_period() const noexcept;
    Tick max_latency() const noexcept;
    /// lcm of all edge periods (1 when edgeless).
    Tick joint_period() const;

    /// Static graph over this vertex set with the given edges.
    StaticGraph graph_of(std::vector<VertexPair> edges) const;

    bool operator==(const Tvg& o) const {
        return vertices_ == o.vertices_ && edges_ == o.edges_ && process_latency_ == o.process_latency_;
    }

private:
    void index_incidence();

    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeId>> incident_;
    Tick process_latency_ = 0;
};

}  // namespace tvg
