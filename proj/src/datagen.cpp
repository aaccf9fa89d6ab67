#include "coreset/datagen.hpp"

#include "coreset/rng.hpp"

namespace coreset {

namespace {
constexpr std::uint64_t kDataTag = 0x4D58;
}

PointSet gen_gaussian_mixture(std::size_t n, std::size_t d, std::size_t k_true, double spread,
                              double sigma, std::uint64_t seed) {
    require(k_true >= 1 && n >= k_true, "gen_gaussian_mixture: need n >= k_true >= 1");
    require(d >= 1, "gen_gaussian_mixture: d must be >= 1");
    require(spread >= 0.0 && sigma >= 0.0, "gen_gaussian_mixture: negative scale");

    Rng rng(sub_seed(seed, kDataTag));
    PointSet centers(k_true, d);
    for (double& v : centers.data) v = (2.0 * rng.next_double() - 1.0) * spread;

    // single stream, fixed order: centers first, then points row by row
    PointSet out(n, d);
    for (std::size_t i = 0; i < n; ++i) {
        const double* c = centers.row(i % k_true);
        double* row = out.row(i);
        for (std::size_t j = 0; j < d; ++j) row[j] = c[j] + sigma * rng.next_gaussian();
    }
    return out;
}

}  // namespace coreset
