#pragma once

#include "tvg/graph.hpp"
#include "tvg/metric.hpp"
#include "tvg/output_trace.hpp"
#include "tvg/sim.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tvg {

/// Outcome of an eta/alpha detector. `tick` is empty when the finite run
/// could not settle the question; `evidence` then says what was observed.
struct Detection {
    std::optional<Tick> tick;
    std::string evidence;
    bool vacuous = false;
    /// eta only: last tick at which some process output the edge.
    std::optional<Tick> last_output;

    bool conclusive() const noexcept { return tick.has_value(); }
};

struct AdversaryConfig {
    std::size_t rounds = 3;
    Tick quiescence = 32;
    Tick horizon = 5000;
};

/// One step of the construction. With L the last tick at which some process
/// outputs the target edge, eta = L + 2: the splice opens one tick after the
/// first all-absent configuration so that configuration survives into every
/// later round. alpha is the first tick > eta at which every process outputs
/// the edge once it is forced present from eta on.
struct Round {
    std::size_t index = 0;
    Tvg g;
    Detection eta;
    std::optional<Tvg> g_prime;
    Detection alpha;
    /// lambda(g_i, g_{i+1}); only for completed rounds.
    std::optional<ExtendedTime> lambda_consecutive;
    /// Agreement between the outputs on limit_prefix and on g_i.
    std::optional<CensoredLambda> limit_agreement;

    bool completed() const noexcept { return eta.conclusive() && alpha.conclusive() && lambda_consecutive.has_value(); }
};

struct Verdict {
    bool defeated = false;
    std::string reason;
};

struct AdversaryReport {
    EdgeId edge;
    std::string edge_label;
    std::string algorithm;
    AdversaryConfig config;
    std::vector<Round> rounds;
    /// Last TVG built (g_k for k completed rounds).
    Tvg final_graph;
    std::size_t flip_count = 0;
    Tvg limit_prefix;
    Verdict verdict;

    std::size_t completed_rounds() const;
};

/// Alternations between "e in every output" and "e in no output" over the
/// trace; ticks where only some processes output e are skipped.
std::size_t flip_count(const OutputTrace& trace, VertexPair e);

/// Requires e eventually missing in g and g connected over time.
Detection find_eta(const Tvg& g, const AlgorithmSpec& algo, EdgeId e, Tick quiescence, Tick horizon);

/// Requires e recurring in g_prime.
Detection find_alpha(const Tvg& g_prime, const AlgorithmSpec& algo, EdgeId e, Tick eta, Tick horizon);

/// Builds g_0 = base, g'_i = g_i + (e, [eta_i, inf)), g_{i+1} = g_i + (e,
/// [eta_i, alpha_i)) for the requested number of rounds, stopping early with an
/// inconclusive verdict when a detector cannot decide. Requires base connected
/// over time with a non-tree footprint and e eventually missing.
AdversaryReport run_adversary(const Tvg& base, EdgeId e, const AlgorithmSpec& algo, const AdversaryConfig& config);

}  // namespace tvg
