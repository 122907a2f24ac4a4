#pragma once

#include <cstdint>

namespace swarmsim {

// Peers are identified by their join index: 0 is the initial seed, ids are
// dense in arrival order.
using PeerId = std::uint32_t;

}  // namespace swarmsim
