#pragma once

#include "tvg/interval_set.hpp"
#include "tvg/time.hpp"

#include <optional>
#include <vector>

namespace tvg {

/// One element of a TimeSpec: [start, end) where end may be infinity.
struct Span {
    Tick start = 0;
    ExtendedTime end = ExtendedTime::infinity();

    bool operator==(const Span&) const = default;
};

/// Finite union of possibly right-unbounded spans.
using TimeSpec = std::vector<Span>;

/// Eventually-periodic availability of one edge.
///
/// Presence at t < base is membership in `transient`; at t >= base it is
/// membership of (t - base) mod period in `pattern`. Instances are always held
/// in canonical form: the period is the least period of the repeating part and
/// the base is the least pre-period for that period. Two schedules denote the
/// same presence function iff they compare equal.
class PresenceSchedule {
public:
    /// The never-present schedule.
    PresenceSchedule();

    /// Validates and canonicalizes. Throws DomainError when transient content
    /// extends past base, pattern content past period, or period is zero.
    PresenceSchedule(IntervalSet transient, Tick base, Tick period, IntervalSet pattern);

    static PresenceSchedule always();
    static PresenceSchedule never() { return {}; }
    /// Present exactly on the given TimeSpec.
    static PresenceSchedule from_spec(const TimeSpec& spec);
    /// Present on the finite set of intervals only.
    static PresenceSchedule finite(IntervalSet support);
    /// `head` on [0, cut) and `tail` on [cut, inf).
    static PresenceSchedule splice(const PresenceSchedule& head, Tick cut, const PresenceSchedule& tail);

    const IntervalSet& transient() const noexcept { return transient_; }
    Tick base() const noexcept { return base_; }
    Tick period() const noexcept { return period_; }
    const IntervalSet& pattern() const noexcept { return pattern_; }

    bool present(Tick t) const noexcept;
    /// Presence support restricted to [from, to).
    IntervalSet unroll(Tick from, Tick to) const;

    /// Pointwise union of the two presence functions.
    PresenceSchedule united(const PresenceSchedule& other) const;

    bool never_present() const noexcept { return transient_.empty() && pattern_.empty(); }
    bool recurring() const noexcept { return !pattern_.empty(); }
    bool full_pattern() const noexcept;
    /// Last present tick; infinity when recurring, nullopt when never present.
    std::optional<ExtendedTime> last_presence() const;

    /// Earliest present tick >= t.
    std::optional<Tick> next_present(Tick t) const;
    /// Earliest absent tick >= t (infinity if present forever from t).
    ExtendedTime next_absent(Tick t) const;
    /// Earliest departure d >= t such that presence holds on all of
    /// [d, d + duration). duration must be >= 1.
    std::optional<Tick> earliest_window(Tick t, Tick duration) const;
    /// Longest presence run of the repeating part, wrap-around included.
    /// Infinity when the pattern is full.
    ExtendedTime longest_recurring_run() const;

    bool operator==(const PresenceSchedule&) const = default;

private:
    void canonicalize();

    IntervalSet transient_;
    Tick base_ = 0;
    Tick period_ = 1;
    IntervalSet pattern_;
};

}  // namespace tvg
