#pragma once

#include "tvg/sim.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace tvg {

using AlgorithmParams = std::map<std::string, std::string>;

/// Names accepted by make_algorithm.
std::vector<std::string> builtin_algorithms();

/// Builds a catalogued algorithm:
///  - "local-flood-window" (param W, default 8): every process refreshes the
///    last-seen tick of its present incident edges each tick, floods its
///    last-seen map on every change and EdgeUp, and outputs edges seen within
///    the last W ticks.
///  - "echo-footprint": floods every edge appearance it learns of and never
///    forgets; outputs everything learned.
/// Throws DomainError on an unknown name or parameter.
AlgorithmSpec make_algorithm(std::string_view name, const AlgorithmParams& params = {});

AlgorithmSpec local_flood_window(Tick window);
AlgorithmSpec echo_footprint();

}  // namespace tvg
