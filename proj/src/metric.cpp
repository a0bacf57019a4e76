#include "tvg/metric.hpp"

#include "tvg/error.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tvg {

std::string DyadicDistance::exact() const { return lambda.is_infinite() ? "0" : "2^-" + lambda.to_string(); }

DyadicDistance distance(ExtendedTime lambda) {
    if (lambda.is_infinite()) {
        return {lambda, 0.0};
    }
    // Anything past 1100 is below the smallest subnormal.
    int exponent = static_cast<int>(std::min<Tick>(lambda.value(), 1100));
    return {lambda, std::ldexp(1.0, -exponent)};
}

namespace {

ExtendedTime schedule_agreement(const PresenceSchedule& a, const PresenceSchedule& b) {
    if (a == b) {
        return ExtendedTime::infinity();
    }
    // Canonical schedules that differ must differ before this bound.
    Tick bound = checked_add(std::max(a.base(), b.base()), checked_mul(2, checked_lcm(a.period(), b.period())));
    auto diff = a.unroll(0, bound).first_difference(b.unroll(0, bound));
    if (!diff) {
        throw std::logic_error("distinct canonical schedules agree up to the comparison bound");
    }
    return *diff;
}

}  // namespace

ExtendedTime lambda_graph(const Tvg& g, const Tvg& h) {
    if (!g.comparable(h)) {
        throw DomainError("incomparable TVGs");
    }
    ExtendedTime lambda = ExtendedTime::infinity();
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        lambda = std::min(lambda, schedule_agreement(g.edges()[i].schedule, h.edges()[i].schedule));
    }
    return lambda;
}

CensoredLambda lambda_output(const OutputTrace& a, const OutputTrace& b) {
    if (a.horizon() != b.horizon()) {
        throw DomainError("output traces have different horizons");
    }
    if (!std::equal(a.vertices().begin(), a.vertices().end(), b.vertices().begin(), b.vertices().end())) {
        throw DomainError("output traces are over different process sets");
    }
    std::optional<Tick> first;
    for (std::uint32_t p = 0; p < a.process_count(); ++p) {
        Vertex v{p};
        std::vector<Tick> ticks{0};
        for (const auto* tr : {&a, &b}) {
            for (const auto& c : tr->changes(v)) {
                ticks.push_back(c.tick);
            }
        }
        std::sort(ticks.begin(), ticks.end());
        ticks.erase(std::unique(ticks.begin(), ticks.end()), ticks.end());
        for (Tick t : ticks) {
            if (first && t >= *first) {
                break;
            }
            if (a.output_at(v, t) != b.output_at(v, t)) {
                first = t;
                break;
            }
        }
    }
    if (first) {
        return {*first, false};
    }
    return {checked_add(a.horizon(), 1), true};
}

SequenceReport sequence_check(std::span<const Tvg> gs, unsigned max_exponent) {
    if (gs.size() < 2) {
        throw DomainError("sequence_check needs at least two TVGs");
    }
    const std::size_t n = gs.size();
    SequenceReport report;
    report.matrix.assign(n, std::vector<ExtendedTime>(n, ExtendedTime::infinity()));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            ExtendedTime l = lambda_graph(gs[i], gs[j]);
            report.matrix[i][j] = l;
            report.matrix[j][i] = l;
        }
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        report.consecutive.push_back(report.matrix[i][i + 1]);
    }
    for (std::size_t i = 0; i < n && report.ultrametric_consistent; ++i) {
        for (std::size_t j = 0; j < n && report.ultrametric_consistent; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (report.matrix[i][k] < std::min(report.matrix[i][j], report.matrix[j][k])) {
                    report.ultrametric_consistent = false;
                    break;
                }
            }
        }
    }

    // tail_min[k]: smallest agreement among pairs drawn from gs[k..n).
    std::vector<ExtendedTime> tail_min(n, ExtendedTime::infinity());
    for (std::size_t k = n - 1; k-- > 0;) {
        ExtendedTime m = tail_min[k + 1];
        for (std::size_t j = k + 1; j < n; ++j) {
            m = std::min(m, report.matrix[k][j]);
        }
        tail_min[k] = m;
    }
    for (unsigned exponent = 1; exponent <= max_exponent; ++exponent) {
        ScaleVerdict v{exponent, false, std::nullopt};
        // distance < 2^-exponent  <=>  lambda > exponent
        for (std::size_t k = 0; k + 1 < n; ++k) {
            if (tail_min[k] > ExtendedTime(exponent)) {
                v.cauchy = true;
                v.witness = k;
                break;
            }
        }
        report.scales.push_back(v);
    }
    try {
        report.limit = limit_construct(gs);
    } catch (const DomainError&) {
        // No growing prefixes, so no limit to offer.
    }
    return report;
}

Tvg limit_construct(std::span<const Tvg> gs, const TailRule& tail) {
    if (gs.empty()) {
        throw DomainError("limit_construct needs a non-empty sequence");
    }
    if (gs.size() == 1) {
        return gs.front();
    }
    std::vector<ExtendedTime> agreement;
    for (std::size_t k = 0; k + 1 < gs.size(); ++k) {
        agreement.push_back(lambda_graph(gs[k], gs[k + 1]));
        if (k > 0) {
            const auto& prev = agreement[k - 1];
            const auto& cur = agreement[k];
            bool growing = prev.is_infinite() ? cur.is_infinite() : cur > prev;
            if (!growing) {
                throw DomainError("not a growing-prefix sequence");
            }
        }
    }
    const Tvg& last = gs.back();
    if (agreement.back().is_infinite()) {
        return last;
    }
    const Tick cut = agreement.back().value();
    Tvg out = last;
    for (const auto& [e, spec] : tail) {
        const auto& head = last.edge(e).schedule;
        out = out.with_schedule(e, PresenceSchedule::splice(head, cut, PresenceSchedule::from_spec(spec)));
    }
    for (std::size_t k = 0; k + 1 < gs.size(); ++k) {
        if (lambda_graph(gs[k], out) < agreement[k]) {
            throw std::logic_error("limit does not extend the common prefix of member " + std::to_string(k));
        }
    }
    return out;
}

}  // namespace tvg
