#pragma once

#include <cstdint>
#include <vector>

namespace psp {

enum class PlacementPolicy {
    // owner(c) = c mod p, so worker i holds components {i, i+p, ...}.
    RoundRobin,
    // Contiguous component blocks, sizes differing by at most one. With
    // k = 2p each worker holds the pair {2i, 2i+1}.
    PairsPerGpu,
};

// Assignment of components to the p simulated workers. Every component has
// exactly one owner and per-worker counts differ by at most one.
struct Placement {
    std::uint32_t p = 1;
    std::vector<std::uint32_t> owner;
    std::vector<std::vector<std::uint32_t>> components_of;

    bool operator==(const Placement&) const = default;
};

// Deterministic balanced placement of k components onto p workers.
// Throws std::invalid_argument unless 1 <= p <= k.
Placement place_components(std::uint32_t k, std::uint32_t p,
                           PlacementPolicy policy = PlacementPolicy::RoundRobin);

}  // namespace psp
