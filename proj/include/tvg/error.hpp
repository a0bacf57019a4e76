#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tvg {

/// Raised when an operation is called outside its domain: unknown edge or
/// vertex, incomparable TVGs, malformed schedules.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised while decoding a TVG or graph document.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An algorithm issued a command that violates the simulator contract.
class SimulationError : public std::runtime_error {
public:
    SimulationError(std::uint64_t tick, std::string process, const std::string& what)
        : std::runtime_error("tick " + std::to_string(tick) + ", process " + process + ": " + what),
          tick_(tick),
          process_(std::move(process)) {}

    std::uint64_t tick() const noexcept { return tick_; }
    const std::string& process() const noexcept { return process_; }

private:
    std::uint64_t tick_;
    std::string process_;
};

}  // namespace tvg
