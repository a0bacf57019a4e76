#pragma once

#include "tvg/graph.hpp"
#include "tvg/time.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tvg {

/// Output variable of every process as a step function over [0, horizon].
/// Each process starts with the edgeless graph; change lists hold strictly
/// increasing ticks and only record actual value changes.
class OutputTrace {
public:
    struct Change {
        Tick tick = 0;
        StaticGraph value;
        bool operator==(const Change&) const = default;
    };

    OutputTrace() = default;
    OutputTrace(std::vector<std::string> vertices, Tick horizon);

    Tick horizon() const noexcept { return horizon_; }
    std::span<const std::string> vertices() const noexcept { return vertices_; }
    std::size_t process_count() const noexcept { return changes_.size(); }
    std::span<const Change> changes(Vertex p) const;

    /// Records p's value at tick t; ignored when equal to the current value.
    /// Ticks must be non-decreasing per process; a repeat tick overwrites.
    void record(Vertex p, Tick t, StaticGraph value);

    /// Value of p's output at t. Throws DomainError when t > horizon.
    const StaticGraph& output_at(Vertex p, Tick t) const;

    /// Same process set, horizon truncated to `horizon`.
    OutputTrace truncated(Tick horizon) const;

    bool operator==(const OutputTrace&) const = default;

private:
    std::vector<std::string> vertices_;
    Tick horizon_ = 0;
    StaticGraph empty_;
    std::vector<std::vector<Change>> changes_;
};

const StaticGraph& output_at(const OutputTrace& trace, Vertex p, Tick t);

}  // namespace tvg
