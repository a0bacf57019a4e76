#pragma once

#include "tvg/graph.hpp"
#include "tvg/output_trace.hpp"
#include "tvg/time.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tvg {

using Payload = std::vector<std::uint8_t>;
inline constexpr std::size_t max_payload_bytes = std::size_t{1} << 16;

// Events delivered to a process.
struct Init {};
struct EdgeUp {
    Vertex neighbor;
};
struct EdgeDown {
    Vertex neighbor;
};
struct Deliver {
    Vertex from;
    Payload payload;
};
struct Timer {
    std::uint64_t tag = 0;
};
using EventIn = std::variant<Init, EdgeUp, EdgeDown, Deliver, Timer>;

// Commands a process may issue while handling an event.
struct SendRetry {
    Vertex to;
    Payload payload;
};
struct SetTimer {
    Tick delay = 1;
    std::uint64_t tag = 0;
};
struct SetOutput {
    StaticGraph graph;
};
using Command = std::variant<SendRetry, SetTimer, SetOutput>;

struct ProcessContext {
    Vertex self;
    /// Footprint neighbours, sorted.
    std::vector<Vertex> neighbors;
    /// Vertex names of the TVG, indexed by Vertex.
    std::vector<std::string> vertices;
};

/// Local deterministic algorithm of one process. `handle` must depend only on
/// the process' own history of (now, event) pairs.
class Process {
public:
    virtual ~Process() = default;
    virtual std::vector<Command> handle(Tick now, const EventIn& event) = 0;
};

struct AlgorithmSpec {
    std::string name;
    std::function<std::unique_ptr<Process>(const ProcessContext&)> make_process;
};

// --- execution trace ----------------------------------------------------------

enum class EventKind { init, edge_up, edge_down, deliver, timer };

struct MessageRecord {
    std::uint64_t id = 0;
    EdgeId edge;
    Vertex from;
    Vertex to;
    /// Transmission start for transmitted/lost copies; invocation tick for queued ones.
    Tick departure = 0;
    Tick due = 0;
    bool operator==(const MessageRecord&) const = default;
};

struct DispatchRecord {
    EventKind kind = EventKind::init;
    Vertex process;
    std::optional<Vertex> peer;
    std::uint64_t tag = 0;
    std::uint64_t message = 0;
    Payload payload;
    bool operator==(const DispatchRecord&) const = default;
};

struct TickRecord {
    Tick tick = 0;
    std::vector<EdgeId> appeared;
    std::vector<EdgeId> disappeared;
    /// In-flight copies dropped by a disappearance; they return to the retry queue.
    std::vector<MessageRecord> lost;
    /// SendRetry invocations that found the edge absent.
    std::vector<MessageRecord> queued;
    /// Copies put on an edge this tick.
    std::vector<MessageRecord> transmitted;
    std::vector<DispatchRecord> dispatched;
    std::vector<Vertex> output_changed;
    bool operator==(const TickRecord&) const = default;
};

struct ExecutionTrace {
    std::vector<TickRecord> ticks;
    bool operator==(const ExecutionTrace&) const = default;
};

struct SimulationResult {
    ExecutionTrace execution;
    OutputTrace outputs;
};

struct RunOptions {
    bool record_execution = true;
};

/// Runs `algo` over ticks [0, horizon]. Each tick executes, in order:
/// topology changes (in-flight copies on vanished edges are lost and requeued;
/// endpoints get EdgeDown/EdgeUp), retry scan of queued messages on present
/// edges, due deliveries, due timers; events are dispatched ordered by
/// (phase, process, peer, sequence) and their commands applied immediately.
/// Throws SimulationError on a contract violation.
SimulationResult run(const Tvg& g, const AlgorithmSpec& algo, Tick horizon, const RunOptions& options = {});

}  // namespace tvg
