#include "tvg/interval_set.hpp"

#include "tvg/error.hpp"

#include <algorithm>
#include <numeric>

namespace tvg {

Tick checked_lcm(Tick a, Tick b) {
    if (a == 0 || b == 0) {
        return 0;
    }
    Tick g = std::gcd(a, b);
    return checked_mul(a / g, b);
}

IntervalSet IntervalSet::from(std::vector<Interval> intervals) {
    for (const auto& iv : intervals) {
        if (iv.start >= iv.end) {
            throw DomainError("interval [" + std::to_string(iv.start) + "," + std::to_string(iv.end) +
                              ") is empty or inverted");
        }
    }
    std::sort(intervals.begin(), intervals.end(),
              [](const Interval& a, const Interval& b) { return a.start < b.start; });
    IntervalSet out;
    for (const auto& iv : intervals) {
        if (!out.intervals_.empty() && iv.start <= out.intervals_.back().end) {
            out.intervals_.back().end = std::max(out.intervals_.back().end, iv.end);
        } else {
            out.intervals_.push_back(iv);
        }
    }
    return out;
}

const Interval* IntervalSet::first_ending_after(Tick t) const noexcept {
    auto it = std::upper_bound(intervals_.begin(), intervals_.end(), t,
                               [](Tick v, const Interval& iv) { return v < iv.end; });
    return it == intervals_.end() ? nullptr : &*it;
}

const Interval* IntervalSet::find(Tick t) const noexcept {
    const Interval* iv = first_ending_after(t);
    return (iv != nullptr && iv->start <= t) ? iv : nullptr;
}

bool IntervalSet::contains(Tick t) const noexcept { return find(t) != nullptr; }

void IntervalSet::add(Tick start, Tick end) {
    if (start >= end) {
        return;
    }
    if (intervals_.empty() || start > intervals_.back().end) {
        intervals_.push_back({start, end});
        return;
    }
    if (start >= intervals_.back().start) {
        intervals_.back().end = std::max(intervals_.back().end, end);
        return;
    }
    auto copy = intervals_;
    copy.push_back({start, end});
    *this = from(std::move(copy));
}

IntervalSet IntervalSet::united(const IntervalSet& other) const {
    std::vector<Interval> all(intervals_);
    all.insert(all.end(), other.intervals_.begin(), other.intervals_.end());
    return from(std::move(all));
}

IntervalSet IntervalSet::clipped(Tick lo, Tick hi) const {
    IntervalSet out;
    for (const auto& iv : intervals_) {
        if (iv.end <= lo) {
            continue;
        }
        if (iv.start >= hi) {
            break;
        }
        out.intervals_.push_back({std::max(iv.start, lo), std::min(iv.end, hi)});
    }
    return out;
}

IntervalSet IntervalSet::shifted_up(Tick delta) const {
    IntervalSet out;
    out.intervals_.reserve(intervals_.size());
    for (const auto& iv : intervals_) {
        out.intervals_.push_back({checked_add(iv.start, delta), checked_add(iv.end, delta)});
    }
    return out;
}

IntervalSet IntervalSet::shifted_down(Tick delta) const {
    IntervalSet out;
    out.intervals_.reserve(intervals_.size());
    for (const auto& iv : intervals_) {
        if (iv.start < delta) {
            throw DomainError("shifted_down below zero");
        }
        out.intervals_.push_back({iv.start - delta, iv.end - delta});
    }
    return out;
}

IntervalSet IntervalSet::rotated(Tick shift, Tick modulus) const {
    if (modulus == 0) {
        throw DomainError("rotation modulus must be positive");
    }
    shift %= modulus;
    std::vector<Interval> pieces;
    pieces.reserve(intervals_.size() + 1);
    for (const auto& iv : intervals_) {
        if (iv.end > modulus) {
            throw DomainError("interval exceeds rotation modulus");
        }
        Tick s = iv.start + shift;
        Tick e = iv.end + shift;
        if (e <= modulus) {
            pieces.push_back({s, e});
        } else if (s >= modulus) {
            pieces.push_back({s - modulus, e - modulus});
        } else {
            pieces.push_back({s, modulus});
            pieces.push_back({0, e - modulus});
        }
    }
    return from(std::move(pieces));
}

Tick IntervalSet::measure() const noexcept {
    Tick m = 0;
    for (const auto& iv : intervals_) {
        m += iv.length();
    }
    return m;
}

Tick IntervalSet::longest_run() const noexcept {
    Tick m = 0;
    for (const auto& iv : intervals_) {
        m = std::max(m, iv.length());
    }
    return m;
}

std::optional<Tick> IntervalSet::first_difference(const IntervalSet& other) const {
    // Membership is constant between consecutive boundary points, so the first
    // difference, if any, sits on a boundary.
    std::vector<Tick> points;
    points.reserve(2 * (intervals_.size() + other.intervals_.size()));
    for (const auto* set : {this, &other}) {
        for (const auto& iv : set->intervals_) {
            points.push_back(iv.start);
            points.push_back(iv.end);
        }
    }
    std::sort(points.begin(), points.end());
    for (Tick p : points) {
        if (contains(p) != other.contains(p)) {
            return p;
        }
    }
    return std::nullopt;
}

}  // namespace tvg
