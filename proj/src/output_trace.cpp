#include "tvg/output_trace.hpp"

#include "tvg/error.hpp"

#include <algorithm>

namespace tvg {

OutputTrace::OutputTrace(std::vector<std::string> vertices, Tick horizon)
    : vertices_(std::move(vertices)), horizon_(horizon) {
    // Process p is the p-th name in sorted order, as in Tvg and StaticGraph.
    std::sort(vertices_.begin(), vertices_.end());
    empty_ = StaticGraph(vertices_, {});
    changes_.resize(vertices_.size());
}

std::span<const OutputTrace::Change> OutputTrace::changes(Vertex p) const {
    if (p.index >= changes_.size()) {
        throw DomainError("unknown process index " + std::to_string(p.index));
    }
    return changes_[p.index];
}

void OutputTrace::record(Vertex p, Tick t, StaticGraph value) {
    if (p.index >= changes_.size()) {
        throw DomainError("unknown process index " + std::to_string(p.index));
    }
    if (t > horizon_) {
        throw DomainError("output recorded past the horizon");
    }
    auto& list = changes_[p.index];
    if (!list.empty() && list.back().tick > t) {
        throw DomainError("output changes must be recorded in tick order");
    }
    if (!list.empty() && list.back().tick == t) {
        list.pop_back();
    }
    const StaticGraph& before = list.empty() ? empty_ : list.back().value;
    if (before == value) {
        return;
    }
    list.push_back({t, std::move(value)});
}

const StaticGraph& OutputTrace::output_at(Vertex p, Tick t) const {
    if (t > horizon_) {
        throw DomainError("tick " + std::to_string(t) + " beyond trace horizon " + std::to_string(horizon_));
    }
    auto list = changes(p);
    auto it = std::upper_bound(list.begin(), list.end(), t, [](Tick v, const Change& c) { return v < c.tick; });
    if (it == list.begin()) {
        return empty_;
    }
    return std::prev(it)->value;
}

OutputTrace OutputTrace::truncated(Tick horizon) const {
    if (horizon > horizon_) {
        throw DomainError("cannot extend a trace by truncation");
    }
    OutputTrace out(vertices_, horizon);
    for (std::size_t p = 0; p < changes_.size(); ++p) {
        for (const auto& c : changes_[p]) {
            if (c.tick <= horizon) {
                out.changes_[p].push_back(c);
            }
        }
    }
    return out;
}

const StaticGraph& output_at(const OutputTrace& trace, Vertex p, Tick t) { return trace.output_at(p, t); }

}  // namespace tvg
