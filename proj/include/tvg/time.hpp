#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace tvg {

/// Discrete time. Lifetime of every TVG is [0, inf).
using Tick = std::uint64_t;

inline Tick checked_add(Tick a, Tick b) {
    if (a > std::numeric_limits<Tick>::max() - b) {
        throw std::overflow_error("tick arithmetic overflow");
    }
    return a + b;
}

inline Tick checked_mul(Tick a, Tick b) {
    if (a != 0 && b > std::numeric_limits<Tick>::max() / a) {
        throw std::overflow_error("tick arithmetic overflow");
    }
    return a * b;
}

Tick checked_lcm(Tick a, Tick b);

/// A tick or the distinguished value infinity, greater than every tick.
class ExtendedTime {
public:
    constexpr ExtendedTime() = default;
    constexpr ExtendedTime(Tick t) : value_(t), finite_(true) {}  // NOLINT: implicit by intent

    static constexpr ExtendedTime infinity() {
        ExtendedTime e;
        e.finite_ = false;
        return e;
    }

    constexpr bool is_finite() const noexcept { return finite_; }
    constexpr bool is_infinite() const noexcept { return !finite_; }

    /// Throws std::logic_error when infinite.
    Tick value() const {
        if (!finite_) {
            throw std::logic_error("ExtendedTime::value() on infinity");
        }
        return value_;
    }

    constexpr bool operator==(const ExtendedTime& o) const noexcept {
        return finite_ == o.finite_ && (!finite_ || value_ == o.value_);
    }
    constexpr std::strong_ordering operator<=>(const ExtendedTime& o) const noexcept {
        if (!finite_ || !o.finite_) {
            return static_cast<int>(!finite_) <=> static_cast<int>(!o.finite_);
        }
        return value_ <=> o.value_;
    }

    std::string to_string() const { return finite_ ? std::to_string(value_) : std::string("inf"); }

private:
    Tick value_ = 0;
    bool finite_ = true;
};

}  // namespace tvg
