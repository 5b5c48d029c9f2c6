#include "psp/placement.hpp"

#include <stdexcept>

namespace psp {

Placement place_components(std::uint32_t k, std::uint32_t p, PlacementPolicy policy) {
    if (p < 1) throw std::invalid_argument("place_components: need at least one worker");
    if (p > k) throw std::invalid_argument("place_components: more workers than components");

    Placement pl;
    pl.p = p;
    pl.owner.resize(k);
    pl.components_of.assign(p, {});
    switch (policy) {
        case PlacementPolicy::RoundRobin:
            for (std::uint32_t c = 0; c < k; ++c) pl.owner[c] = c % p;
            break;
        case PlacementPolicy::PairsPerGpu: {
            // First k % p workers take ceil(k/p) components, the rest floor(k/p).
            const std::uint32_t base = k / p;
            const std::uint32_t extra = k % p;
            std::uint32_t c = 0;
            for (std::uint32_t w = 0; w < p; ++w) {
                const std::uint32_t take = base + (w < extra ? 1u : 0u);
                for (std::uint32_t i = 0; i < take; ++i) pl.owner[c++] = w;
            }
            break;
        }
    }
    for (std::uint32_t c = 0; c < k; ++c) pl.components_of[pl.owner[c]].push_back(c);
    return pl;
}

}  // namespace psp
