#include "vlpmono/rng.hpp"

#include <cmath>
#include <numbers>

namespace vlpmono {

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

TrialRng TrialRng::derive(std::uint64_t seed, std::uint64_t grid_index, std::uint64_t trial) {
    std::uint64_t s = mix64(seed);
    s = mix64(s ^ (grid_index + 0x9e3779b97f4a7c15ULL));
    s = mix64(s ^ (trial + 0xd1b54a32d192ed03ULL));
    return TrialRng(s);
}

std::uint64_t TrialRng::next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double TrialRng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::pair<double, double> TrialRng::gaussian_pair() {
    // 1 - uniform() lies in (0, 1], keeping the log argument positive.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
}

}  // namespace vlpmono
