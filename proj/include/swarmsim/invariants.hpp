#pragma once

#include <optional>
#include <string>
#include <vector>

#include "swarmsim/overlay.hpp"

namespace swarmsim {

// Structural checks over the live overlay: per-peer caps, initiator-flag
// consistency, edge symmetry, no self-loops or parallel edges, and the
// preempted-in cap when one is configured. Returns one message per violation;
// empty means clean.
std::vector<std::string> check_overlay_invariants(
    const Overlay& overlay, std::optional<double> preemption_cap = std::nullopt);

}  // namespace swarmsim
