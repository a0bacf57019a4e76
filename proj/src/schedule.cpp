#include "tvg/schedule.hpp"

#include "tvg/error.hpp"

#include <algorithm>

namespace tvg {

namespace {

std::vector<Tick> divisors(Tick n) {
    std::vector<Tick> small;
    std::vector<Tick> large;
    for (Tick d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) {
                large.push_back(n / d);
            }
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

}  // namespace

PresenceSchedule::PresenceSchedule() = default;

PresenceSchedule::PresenceSchedule(IntervalSet transient, Tick base, Tick period, IntervalSet pattern)
    : transient_(std::move(transient)), base_(base), period_(period), pattern_(std::move(pattern)) {
    if (period_ == 0) {
        throw DomainError("schedule period must be positive");
    }
    if (!transient_.empty() && transient_.back().end > base_) {
        throw DomainError("transient interval ends at " + std::to_string(transient_.back().end) +
                          ", past base " + std::to_string(base_));
    }
    if (!pattern_.empty() && pattern_.back().end > period_) {
        throw DomainError("pattern interval ends at " + std::to_string(pattern_.back().end) +
                          ", past period " + std::to_string(period_));
    }
    canonicalize();
}

void PresenceSchedule::canonicalize() {
    // Least period of the repeating part.
    for (Tick d : divisors(period_)) {
        if (d == period_) {
            break;
        }
        if (pattern_.rotated(d, period_) == pattern_) {
            pattern_ = pattern_.clipped(0, d);
            period_ = d;
            break;
        }
    }

    // Least pre-period: slide the pattern start back while the transient
    // already agrees with it.
    Tick steps = 0;
    if (pattern_.empty()) {
        Tick target = transient_.empty() ? 0 : transient_.back().end;
        steps = base_ - target;
    } else if (full_pattern()) {
        Tick target = base_;
        if (!transient_.empty() && transient_.back().end == base_) {
            target = transient_.back().start;
        }
        steps = base_ - target;
    } else {
        while (steps < base_) {
            Tick t = base_ - 1 - steps;
            Tick idx = (period_ - (steps + 1) % period_) % period_;
            if (transient_.contains(t) != pattern_.contains(idx)) {
                break;
            }
            ++steps;
        }
    }
    if (steps > 0) {
        pattern_ = pattern_.rotated(steps % period_, period_);
        base_ -= steps;
        transient_ = transient_.clipped(0, base_);
    }
}

PresenceSchedule PresenceSchedule::always() { return {IntervalSet{}, 0, 1, IntervalSet::from({{0, 1}})}; }

PresenceSchedule PresenceSchedule::finite(IntervalSet support) {
    Tick base = support.empty() ? 0 : support.back().end;
    return {std::move(support), base, 1, IntervalSet{}};
}

PresenceSchedule PresenceSchedule::from_spec(const TimeSpec& spec) {
    PresenceSchedule out;
    for (const auto& span : spec) {
        if (span.end.is_finite()) {
            if (span.start >= span.end.value()) {
                throw DomainError("time span [" + std::to_string(span.start) + "," + span.end.to_string() +
                                  ") is empty");
            }
            out = out.united(finite(IntervalSet::from({{span.start, span.end.value()}})));
        } else {
            out = out.united(PresenceSchedule(IntervalSet{}, span.start, 1, IntervalSet::from({{0, 1}})));
        }
    }
    return out;
}

PresenceSchedule PresenceSchedule::splice(const PresenceSchedule& head, Tick cut, const PresenceSchedule& tail) {
    Tick base = std::max(cut, tail.base_);
    IntervalSet transient = head.unroll(0, cut).united(tail.unroll(cut, base));
    IntervalSet pattern = tail.unroll(base, checked_add(base, tail.period_)).shifted_down(base);
    return {std::move(transient), base, tail.period_, std::move(pattern)};
}

bool PresenceSchedule::full_pattern() const noexcept { return pattern_.measure() == period_; }

bool PresenceSchedule::present(Tick t) const noexcept {
    if (t < base_) {
        return transient_.contains(t);
    }
    return pattern_.contains((t - base_) % period_);
}

IntervalSet PresenceSchedule::unroll(Tick from, Tick to) const {
    IntervalSet out;
    if (from >= to) {
        return out;
    }
    IntervalSet head = transient_.clipped(from, std::min(to, base_));
    for (const auto& iv : head.intervals()) {
        out.add(iv);
    }
    Tick lo = std::max(from, base_);
    if (lo >= to || pattern_.empty()) {
        return out;
    }
    if (full_pattern()) {
        out.add(lo, to);
        return out;
    }
    Tick cycle = base_ + ((lo - base_) / period_) * period_;
    for (; cycle < to; cycle = checked_add(cycle, period_)) {
        for (const auto& iv : pattern_.intervals()) {
            Tick s = std::max(cycle + iv.start, lo);
            Tick e = std::min(cycle + iv.end, to);
            out.add(s, e);
        }
    }
    return out;
}

PresenceSchedule PresenceSchedule::united(const PresenceSchedule& other) const {
    Tick base = std::max(base_, other.base_);
    Tick period = checked_lcm(period_, other.period_);
    Tick end = checked_add(base, period);
    IntervalSet transient = unroll(0, base).united(other.unroll(0, base));
    IntervalSet pattern = unroll(base, end).united(other.unroll(base, end)).shifted_down(base);
    return {std::move(transient), base, period, std::move(pattern)};
}

std::optional<ExtendedTime> PresenceSchedule::last_presence() const {
    if (recurring()) {
        return ExtendedTime::infinity();
    }
    if (transient_.empty()) {
        return std::nullopt;
    }
    return ExtendedTime(transient_.back().end - 1);
}

std::optional<Tick> PresenceSchedule::next_present(Tick t) const {
    if (t < base_) {
        if (const Interval* iv = transient_.first_ending_after(t)) {
            return std::max(iv->start, t);
        }
        t = base_;
    }
    if (pattern_.empty()) {
        return std::nullopt;
    }
    Tick offset = (t - base_) % period_;
    Tick cycle = t - offset;
    if (const Interval* iv = pattern_.first_ending_after(offset)) {
        return cycle + std::max(iv->start, offset);
    }
    return checked_add(cycle, period_) + pattern_.front().start;
}

ExtendedTime PresenceSchedule::next_absent(Tick t) const {
    if (t < base_) {
        const Interval* iv = transient_.find(t);
        if (iv == nullptr) {
            return t;
        }
        if (iv->end < base_) {
            return iv->end;
        }
        t = base_;
    }
    if (full_pattern()) {
        return ExtendedTime::infinity();
    }
    Tick offset = (t - base_) % period_;
    Tick cycle = t - offset;
    const Interval* iv = pattern_.find(offset);
    if (iv == nullptr) {
        return t;
    }
    if (iv->end < period_) {
        return cycle + iv->end;
    }
    // Run reaches the period boundary and may continue into the next cycle.
    Tick next_cycle = checked_add(cycle, period_);
    if (pattern_.front().start == 0) {
        return next_cycle + pattern_.front().end;
    }
    return next_cycle;
}

ExtendedTime PresenceSchedule::longest_recurring_run() const {
    if (pattern_.empty()) {
        return Tick{0};
    }
    if (full_pattern()) {
        return ExtendedTime::infinity();
    }
    return pattern_.united(pattern_.shifted_up(period_)).longest_run();
}

std::optional<Tick> PresenceSchedule::earliest_window(Tick t, Tick duration) const {
    if (duration == 0) {
        throw DomainError("window duration must be at least 1");
    }
    const bool recurring_usable = longest_recurring_run() >= ExtendedTime(duration);
    for (;;) {
        if (t >= base_ && !recurring_usable) {
            return std::nullopt;
        }
        std::optional<Tick> start = next_present(t);
        if (!start) {
            return std::nullopt;
        }
        ExtendedTime stop = next_absent(*start);
        if (stop.is_infinite() || stop.value() - *start >= duration) {
            return start;
        }
        t = stop.value();
    }
}

}  // namespace tvg
