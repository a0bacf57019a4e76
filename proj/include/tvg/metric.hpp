#pragma once

#include "tvg/graph.hpp"
#include "tvg/output_trace.hpp"
#include "tvg/schedule.hpp"
#include "tvg/time.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tvg {

/// Length of the longest common prefix: the two objects agree on [0, lambda)
/// and differ at tick lambda; infinity when they agree everywhere.
struct PrefixAgreement {
    ExtendedTime lambda;

    /// Larger agreement means smaller distance.
    bool closer_than(const PrefixAgreement& o) const { return lambda > o.lambda; }
    bool operator==(const PrefixAgreement&) const = default;
};

/// 2^-lambda kept exactly as lambda; `approx` is for display only and
/// saturates to 0 below the binary64 range.
struct DyadicDistance {
    ExtendedTime lambda;
    double approx = 0.0;

    std::string exact() const;
};

DyadicDistance distance(ExtendedTime lambda);

/// First tick where some edge's presence differs between g and h. Throws
/// DomainError("incomparable TVGs") unless both share vertices, edges,
/// latencies and process latency.
ExtendedTime lambda_graph(const Tvg& g, const Tvg& h);

/// Outputs observed over a finite horizon cannot certify agreement forever,
/// so full agreement is reported as right-censored: lambda >= value.
struct CensoredLambda {
    Tick value = 0;
    bool censored = false;

    /// True when the true lambda is certainly >= t.
    bool at_least(ExtendedTime t) const { return t <= ExtendedTime(value); }
    bool operator==(const CensoredLambda&) const = default;
};

/// First tick in [0, horizon] where some process's output differs; when none,
/// {horizon + 1, censored}. Throws DomainError for different horizons or
/// process sets.
CensoredLambda lambda_output(const OutputTrace& a, const OutputTrace& b);

struct ScaleVerdict {
    /// epsilon = 2^-exponent.
    unsigned exponent = 0;
    bool cauchy = false;
    /// Smallest k such that every pair in the tail from k is closer than epsilon.
    std::optional<std::size_t> witness;
};

struct SequenceReport {
    std::vector<ExtendedTime> consecutive;
    std::vector<std::vector<ExtendedTime>> matrix;
    std::vector<ScaleVerdict> scales;
    bool ultrametric_consistent = true;
    std::optional<Tvg> limit;
};

/// Pairwise agreement analysis of a finite TVG sequence, with Cauchy verdicts
/// for epsilon = 2^-1 .. 2^-max_exponent. A tail must hold at least two members.
/// `limit` is filled by limit_construct (no tail rule) when prefixes grow.
SequenceReport sequence_check(std::span<const Tvg> gs, unsigned max_exponent = 16);

/// Per-edge presence to use from the last agreement point on; edges without
/// a rule keep the last member's schedule.
using TailRule = std::map<EdgeId, TimeSpec>;

/// TVG agreeing with g_k on [0, lambda(g_k, g_k+1)) for every k, closed by
/// `tail` beyond the last agreement point. Throws DomainError("not a
/// growing-prefix sequence") unless consecutive agreement strictly increases
/// (once infinite it must stay infinite).
Tvg limit_construct(std::span<const Tvg> gs, const TailRule& tail = {});

}  // namespace tvg
