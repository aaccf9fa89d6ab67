#pragma once

#include <cstdint>

#include "coreset/points.hpp"

namespace coreset {

// k_true centers uniform in [-spread, spread]^d; point i belongs to center
// i % k_true (round-robin) with i.i.d. Gaussian noise of std sigma.
PointSet gen_gaussian_mixture(std::size_t n, std::size_t d, std::size_t k_true, double spread,
                              double sigma, std::uint64_t seed);

}  // namespace coreset
