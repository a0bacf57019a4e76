#include "tvg/adversary.hpp"

#include "tvg/error.hpp"
#include "tvg/tvg_ops.hpp"

#include <algorithm>

namespace tvg {

namespace {

bool contains_edge(const StaticGraph& g, VertexPair e) { return g.has_edge(e); }

std::vector<Tick> change_points(const OutputTrace& trace, Tick from) {
    std::vector<Tick> ticks{from};
    for (std::uint32_t p = 0; p < trace.process_count(); ++p) {
        for (const auto& c : trace.changes(Vertex{p})) {
            if (c.tick >= from) {
                ticks.push_back(c.tick);
            }
        }
    }
    std::sort(ticks.begin(), ticks.end());
    ticks.erase(std::unique(ticks.begin(), ticks.end()), ticks.end());
    return ticks;
}

enum class Membership { all, none, mixed };

Membership membership_at(const OutputTrace& trace, VertexPair e, Tick t) {
    std::size_t holders = 0;
    for (std::uint32_t p = 0; p < trace.process_count(); ++p) {
        if (contains_edge(trace.output_at(Vertex{p}, t), e)) {
            ++holders;
        }
    }
    if (holders == trace.process_count()) {
        return Membership::all;
    }
    return holders == 0 ? Membership::none : Membership::mixed;
}

/// Last tick at which some process outputs e; nullopt if never.
std::optional<Tick> last_output_tick(const OutputTrace& trace, VertexPair e) {
    std::optional<Tick> last;
    for (std::uint32_t p = 0; p < trace.process_count(); ++p) {
        auto changes = trace.changes(Vertex{p});
        for (std::size_t i = 0; i < changes.size(); ++i) {
            if (!contains_edge(changes[i].value, e)) {
                continue;
            }
            Tick until = i + 1 < changes.size() ? changes[i + 1].tick - 1 : trace.horizon();
            last = std::max(last.value_or(0), until);
        }
    }
    return last;
}

void require_missing(const Tvg& g, EdgeId e) {
    if (g.edge(e).schedule.recurring()) {
        throw DomainError("edge " + g.edge_label(e) + " is not eventually missing");
    }
}

}  // namespace

std::size_t AdversaryReport::completed_rounds() const {
    return static_cast<std::size_t>(std::count_if(rounds.begin(), rounds.end(), [](const Round& r) { return r.completed(); }));
}

std::size_t flip_count(const OutputTrace& trace, VertexPair e) {
    std::size_t flips = 0;
    std::optional<Membership> last;
    for (Tick t : change_points(trace, 0)) {
        Membership m = membership_at(trace, e, t);
        if (m == Membership::mixed) {
            continue;
        }
        if (last && *last != m) {
            ++flips;
        }
        last = m;
    }
    return flips;
}

Detection find_eta(const Tvg& g, const AlgorithmSpec& algo, EdgeId e, Tick quiescence, Tick horizon) {
    require_missing(g, e);
    if (!is_cot(g)) {
        throw DomainError("find_eta needs a connected-over-time TVG");
    }
    const VertexPair ends = g.edge(e).ends;
    const Tick last_presence = g.edge(e).schedule.last_presence()->value();
    const Tick settle = std::max(g.max_base(), checked_add(last_presence, 1));

    auto result = run(g, algo, horizon, {.record_execution = false});
    Detection d;
    Tick absent_from = 0;
    if (auto last = last_output_tick(result.outputs, ends); !last) {
        d.vacuous = true;
        d.evidence = "edge never output; eta placed after the transient";
        absent_from = settle;
    } else if (*last == horizon) {
        d.last_output = last;
        d.evidence = "edge still output at the horizon (tick " + std::to_string(horizon) +
                     "): the candidate keeps an eventual missing edge";
        return d;
    } else {
        d.last_output = last;
        absent_from = *last + 1;
        if (absent_from < settle) {
            d.evidence = "edge left every output at tick " + std::to_string(absent_from) +
                         ", before the schedules settle at tick " + std::to_string(settle);
            return d;
        }
    }
    const Tick quiet = horizon + 1 > absent_from ? horizon + 1 - absent_from : 0;
    if (quiet < quiescence) {
        d.evidence = "only " + std::to_string(quiet) + " quiescent ticks before the horizon, " +
                     std::to_string(quiescence) + " required";
        return d;
    }
    d.tick = checked_add(absent_from, 1);
    return d;
}

Detection find_alpha(const Tvg& g_prime, const AlgorithmSpec& algo, EdgeId e, Tick eta, Tick horizon) {
    if (!g_prime.edge(e).schedule.recurring()) {
        throw DomainError("find_alpha needs the target edge to recur in g'");
    }
    const VertexPair ends = g_prime.edge(e).ends;
    auto result = run(g_prime, algo, horizon, {.record_execution = false});
    Detection d;
    if (eta > horizon) {
        d.evidence = "eta lies beyond the horizon";
        return d;
    }
    if (eta == horizon) {
        d.evidence = "no tick after eta within the horizon";
        return d;
    }
    for (Tick t : change_points(result.outputs, eta + 1)) {
        if (membership_at(result.outputs, ends, t) == Membership::all) {
            d.tick = t;
            return d;
        }
    }
    d.evidence = "edge never output by every process before the horizon although it recurs in g'";
    return d;
}

AdversaryReport run_adversary(const Tvg& base, EdgeId e, const AlgorithmSpec& algo, const AdversaryConfig& config) {
    require_missing(base, e);
    if (!is_cot(base)) {
        throw DomainError("base TVG is not connected over time");
    }
    const StaticGraph footprint = underlying_graph(base);
    if (is_tree(footprint)) {
        throw DomainError("a connected-over-time TVG on a tree footprint admits no eventual missing edge");
    }

    AdversaryReport report;
    report.edge = e;
    report.edge_label = base.edge_label(e);
    report.algorithm = algo.name;
    report.config = config;

    std::vector<Tvg> sequence{base};
    Tvg g = base;
    for (std::size_t i = 0; i < config.rounds; ++i) {
        Round r;
        r.index = i;
        r.g = g;
        r.eta = find_eta(g, algo, e, config.quiescence, config.horizon);
        if (!r.eta.conclusive()) {
            report.verdict = {false, "round " + std::to_string(i) + " eta: " + r.eta.evidence};
            report.rounds.push_back(std::move(r));
            break;
        }
        const Tick eta = *r.eta.tick;
        if (i > 0 && eta <= *report.rounds.back().alpha.tick) {
            r.eta.evidence = "eta does not exceed the previous alpha";
            report.verdict = {false, "round " + std::to_string(i) + ": " + r.eta.evidence};
            report.rounds.push_back(std::move(r));
            break;
        }
        r.g_prime = oplus(g, e, TimeSpec{{eta, ExtendedTime::infinity()}});
        r.alpha = find_alpha(*r.g_prime, algo, e, eta, config.horizon);
        if (!r.alpha.conclusive()) {
            report.verdict = {false, "round " + std::to_string(i) + " alpha: " + r.alpha.evidence};
            report.rounds.push_back(std::move(r));
            break;
        }
        Tvg next = oplus(g, e, TimeSpec{{eta, ExtendedTime(*r.alpha.tick)}});
        if (underlying_graph(next) != footprint || next.edge(e).schedule.recurring()) {
            throw std::logic_error("finite splice changed the footprint or made the edge recur");
        }
        r.lambda_consecutive = lambda_graph(g, next);
        report.rounds.push_back(std::move(r));
        sequence.push_back(next);
        g = std::move(next);
    }

    report.final_graph = g;
    const VertexPair ends = base.edge(e).ends;
    report.flip_count = flip_count(run(g, algo, config.horizon, {.record_execution = false}).outputs, ends);

    const std::size_t done = report.completed_rounds();
    if (done > 0) {
        const Round& last = report.rounds[done - 1];
        TailRule tail{{e, TimeSpec{{*last.eta.tick, ExtendedTime(*last.alpha.tick)}}}};
        report.limit_prefix = limit_construct(sequence, tail);
    } else {
        report.limit_prefix = base;
    }

    auto limit_run = run(report.limit_prefix, algo, config.horizon, {.record_execution = false});
    for (auto& r : report.rounds) {
        if (r.completed()) {
            auto round_run = run(r.g, algo, config.horizon, {.record_execution = false});
            r.limit_agreement = lambda_output(limit_run.outputs, round_run.outputs);
        }
    }

    if (report.verdict.reason.empty()) {
        if (config.rounds == 0) {
            report.verdict = {false, "no rounds requested"};
        } else if (report.flip_count < done) {
            report.verdict = {false, "only " + std::to_string(report.flip_count) + " output flips in " +
                                         std::to_string(done) + " rounds"};
        } else {
            report.verdict = {true, "every round completed; the candidate's outputs keep flipping"};
        }
    }
    return report;
}

}  // namespace tvg
