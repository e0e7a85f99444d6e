#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cyheight/cyclotomic.hpp"

namespace cyheight::testing {

// Fixed seeds so failures reproduce.
inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline CycInt random_cyc(std::mt19937_64& g, std::uint32_t m, std::int64_t bound) {
    std::uniform_int_distribution<std::int64_t> d(-bound, bound);
    std::vector<std::int64_t> c(m);
    for (auto& x : c) x = d(g);
    return CycInt::from_cyclic(m, std::span<const std::int64_t>(c));
}

}  // namespace cyheight::testing
