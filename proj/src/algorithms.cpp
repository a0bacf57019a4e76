#include "tvg/algorithms.hpp"

#include "tvg/error.hpp"

#include <charconv>
#include <map>
#include <set>

namespace tvg {

namespace {

using Knowledge = std::map<VertexPair, Tick>;

void put_varint(Payload& out, std::uint64_t v) {
    while (v >= 0x80) {
        out.push_back(static_cast<std::uint8_t>(v | 0x80));
        v >>= 7;
    }
    out.push_back(static_cast<std::uint8_t>(v));
}

std::uint64_t get_varint(const Payload& in, std::size_t& pos) {
    std::uint64_t v = 0;
    for (int shift = 0; shift < 64; shift += 7) {
        if (pos >= in.size()) {
            throw DomainError("truncated knowledge payload");
        }
        std::uint8_t byte = in[pos++];
        v |= static_cast<std::uint64_t>(byte & 0x7f) << shift;
        if ((byte & 0x80) == 0) {
            return v;
        }
    }
    throw DomainError("malformed varint in knowledge payload");
}

Payload encode(const Knowledge& k) {
    Payload out;
    put_varint(out, k.size());
    for (const auto& [e, ts] : k) {
        put_varint(out, e.u.index);
        put_varint(out, e.v.index);
        put_varint(out, ts);
    }
    return out;
}

Knowledge decode(const Payload& in) {
    Knowledge k;
    std::size_t pos = 0;
    std::uint64_t n = get_varint(in, pos);
    for (std::uint64_t i = 0; i < n; ++i) {
        auto u = static_cast<std::uint32_t>(get_varint(in, pos));
        auto v = static_cast<std::uint32_t>(get_varint(in, pos));
        Tick ts = get_varint(in, pos);
        k[VertexPair::of(Vertex{u}, Vertex{v})] = ts;
    }
    return k;
}

/// Raises entries of `into` to those of `from`; true if anything changed.
bool merge_max(Knowledge& into, const Knowledge& from) {
    bool changed = false;
    for (const auto& [e, ts] : from) {
        auto [it, inserted] = into.try_emplace(e, ts);
        if (inserted) {
            changed = true;
        } else if (it->second < ts) {
            it->second = ts;
            changed = true;
        }
    }
    return changed;
}

class FloodingProcess : public Process {
protected:
    explicit FloodingProcess(ProcessContext ctx) : ctx_(std::move(ctx)) {}

    void flood(std::vector<Command>& out, const Knowledge& k) const {
        Payload payload = encode(k);
        for (Vertex nb : ctx_.neighbors) {
            out.push_back(SendRetry{nb, payload});
        }
    }

    StaticGraph graph_of(std::vector<VertexPair> edges) const { return StaticGraph(ctx_.vertices, std::move(edges)); }

    VertexPair incident(Vertex nb) const { return VertexPair::of(ctx_.self, nb); }

    ProcessContext ctx_;
};

class LocalFloodWindow final : public FloodingProcess {
public:
    LocalFloodWindow(ProcessContext ctx, Tick window) : FloodingProcess(std::move(ctx)), window_(window) {}

    std::vector<Command> handle(Tick now, const EventIn& event) override {
        std::vector<Command> out;
        bool changed = false;
        bool edge_up = false;
        if (std::holds_alternative<Init>(event)) {
            out.push_back(SetTimer{1, 0});
        } else if (const auto* up = std::get_if<EdgeUp>(&event)) {
            up_.insert(up->neighbor);
            changed = touch(incident(up->neighbor), now);
            edge_up = true;
        } else if (const auto* down = std::get_if<EdgeDown>(&event)) {
            up_.erase(down->neighbor);
        } else if (const auto* msg = std::get_if<Deliver>(&event)) {
            changed = merge_max(seen_, decode(msg->payload));
        } else {
            for (Vertex nb : up_) {
                changed = touch(incident(nb), now) || changed;
            }
            out.push_back(SetTimer{1, 0});
        }
        if (changed || edge_up) {
            flood(out, seen_);
        }
        out.push_back(SetOutput{current(now)});
        return out;
    }

private:
    bool touch(VertexPair e, Tick now) {
        auto [it, inserted] = seen_.try_emplace(e, now);
        if (inserted) {
            return true;
        }
        if (it->second < now) {
            it->second = now;
            return true;
        }
        return false;
    }

    StaticGraph current(Tick now) const {
        std::vector<VertexPair> edges;
        for (const auto& [e, ts] : seen_) {
            if (now - ts < window_) {
                edges.push_back(e);
            }
        }
        return graph_of(std::move(edges));
    }

    Tick window_;
    Knowledge seen_;
    std::set<Vertex> up_;
};

class EchoFootprint final : public FloodingProcess {
public:
    explicit EchoFootprint(ProcessContext ctx) : FloodingProcess(std::move(ctx)) {}

    std::vector<Command> handle(Tick, const EventIn& event) override {
        std::vector<Command> out;
        bool changed = false;
        if (const auto* up = std::get_if<EdgeUp>(&event)) {
            changed = known_.try_emplace(incident(up->neighbor), 0).second;
        } else if (const auto* msg = std::get_if<Deliver>(&event)) {
            changed = merge_max(known_, decode(msg->payload));
        }
        if (changed) {
            flood(out, known_);
        }
        std::vector<VertexPair> edges;
        for (const auto& entry : known_) {
            edges.push_back(entry.first);
        }
        out.push_back(SetOutput{graph_of(std::move(edges))});
        return out;
    }

private:
    Knowledge known_;
};

Tick parse_tick(const std::string& key, const std::string& text) {
    Tick v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw DomainError("parameter " + key + "='" + text + "' is not a non-negative integer");
    }
    return v;
}

}  // namespace

std::vector<std::string> builtin_algorithms() { return {"echo-footprint", "local-flood-window"}; }

AlgorithmSpec local_flood_window(Tick window) {
    if (window == 0) {
        throw DomainError("local-flood-window needs W >= 1");
    }
    return {"local-flood-window(W=" + std::to_string(window) + ")", [window](const ProcessContext& ctx) {
                return std::make_unique<LocalFloodWindow>(ctx, window);
            }};
}

AlgorithmSpec echo_footprint() {
    return {"echo-footprint", [](const ProcessContext& ctx) { return std::make_unique<EchoFootprint>(ctx); }};
}

AlgorithmSpec make_algorithm(std::string_view name, const AlgorithmParams& params) {
    if (name == "local-flood-window") {
        Tick window = 8;
        for (const auto& [key, value] : params) {
            if (key != "W") {
                throw DomainError("local-flood-window has no parameter '" + key + "'");
            }
            window = parse_tick(key, value);
        }
        return local_flood_window(window);
    }
    if (name == "echo-footprint") {
        if (!params.empty()) {
            throw DomainError("echo-footprint takes no parameters");
        }
        return echo_footprint();
    }
    throw DomainError("unknown algorithm '" + std::string(name) + "'");
}

}  // namespace tvg
