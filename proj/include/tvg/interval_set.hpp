#pragma once

#include "tvg/time.hpp"

#include <optional>
#include <span>
#include <vector>

namespace tvg {

/// Half-open [start, end) with start < end.
struct Interval {
    Tick start = 0;
    Tick end = 0;

    Tick length() const noexcept { return end - start; }
    bool contains(Tick t) const noexcept { return start <= t && t < end; }
    bool operator==(const Interval&) const = default;
};

/// Sorted, pairwise disjoint, non-abutting intervals. Every mutation keeps
/// the set in this normal form.
class IntervalSet {
public:
    IntervalSet() = default;

    /// Accepts intervals in any order, overlapping or abutting. Throws
    /// DomainError on an empty or inverted interval.
    static IntervalSet from(std::vector<Interval> intervals);

    std::span<const Interval> intervals() const noexcept { return intervals_; }
    bool empty() const noexcept { return intervals_.empty(); }
    std::size_t size() const noexcept { return intervals_.size(); }
    const Interval& front() const { return intervals_.front(); }
    const Interval& back() const { return intervals_.back(); }

    bool contains(Tick t) const noexcept;
    /// The interval containing t, if any.
    const Interval* find(Tick t) const noexcept;
    /// First interval whose end is > t (it contains t or starts after t).
    const Interval* first_ending_after(Tick t) const noexcept;

    /// Adds [start, end); start >= end is a no-op. Cheap when appended at the back.
    void add(Tick start, Tick end);
    void add(const Interval& iv) { add(iv.start, iv.end); }

    IntervalSet united(const IntervalSet& other) const;
    /// Restriction to [lo, hi).
    IntervalSet clipped(Tick lo, Tick hi) const;
    IntervalSet shifted_up(Tick delta) const;
    /// Requires every start >= delta.
    IntervalSet shifted_down(Tick delta) const;
    /// Image of this set under x -> (x + shift) mod modulus. Requires every
    /// end <= modulus.
    IntervalSet rotated(Tick shift, Tick modulus) const;

    Tick measure() const noexcept;
    Tick longest_run() const noexcept;

    /// Smallest tick whose membership differs between the two sets.
    std::optional<Tick> first_difference(const IntervalSet& other) const;

    bool operator==(const IntervalSet&) const = default;

private:
    std::vector<Interval> intervals_;
};

}  // namespace tvg
