#pragma once

#include <cstdint>
#include <utility>

namespace vlpmono {

/// Counter-free splitmix64 stream. Each Monte Carlo trial owns its own
/// generator derived from (seed, grid_index, trial), so results are
/// independent of execution order and thread count.
class TrialRng {
public:
    explicit TrialRng(std::uint64_t seed) : state_(seed) {}

    static TrialRng derive(std::uint64_t seed, std::uint64_t grid_index, std::uint64_t trial);

    std::uint64_t next_u64();

    /// Uniform double in [0, 1), 53 mantissa bits.
    double uniform();

    /// Pair of independent standard normal deviates (Box-Muller).
    std::pair<double, double> gaussian_pair();

private:
    std::uint64_t state_;
};

/// splitmix64 finalizer; used for stream derivation.
std::uint64_t mix64(std::uint64_t z);

}  // namespace vlpmono
