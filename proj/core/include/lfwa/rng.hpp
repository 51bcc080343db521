#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <random>

namespace lfwa {

/// Source of the three kinds of randomness the optimizer operators consume.
///
/// Operators are templated on this concept so tests can substitute
/// deterministic stubs (e.g. a source whose uniform() always returns 1).
template <typename R>
concept RandomSource = requires(R& r, std::size_t n) {
    { r.uniform() } -> std::convertible_to<double>;      // [0, 1)
    { r.normal() } -> std::convertible_to<double>;       // N(0, 1)
    { r.index(n) } -> std::convertible_to<std::size_t>;  // uniform in [0, n)
};

/// Seeded 64-bit Mersenne Twister. One instance per run; never shared across threads.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return unit_(engine_); }
    double normal() { return gauss_(engine_); }

    std::size_t index(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::uniform_real_distribution<double> unit_{0.0, 1.0};
    std::normal_distribution<double> gauss_{0.0, 1.0};
};

static_assert(RandomSource<Rng>);

}  // namespace lfwa
