#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

namespace tschur {

// Deterministic random bits, fixed across platforms and releases:
//   - splitmix64 finalizer for seeding and sub-seed derivation,
//   - xoshiro256** for the bit streams,
//   - 53-bit uniforms, complex Gaussians via the polar Box-Muller form
//       z = sqrt(-ln u1) * exp(2*pi*i*u2),
//     so Re z, Im z ~ N(0, 1/2) and E|z|^2 = 1.
// No std::random distributions anywhere; their algorithms are
// implementation-defined and would break the reproducibility contract.

namespace rngdetail {

inline std::uint64_t splitmix64_mix(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace rngdetail

// Sub-seed for stream `stream` of a campaign seeded with `seed`. Pure
// function, so parallel campaigns stay deterministic.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return rngdetail::splitmix64_mix(seed ^ rngdetail::splitmix64_mix(stream));
}

// xoshiro256** seeded through splitmix64.
class Rng {
public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) {
      sm += 0x9E3779B97F4A7C15ULL;
      std::uint64_t z = sm;
      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
      z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
      word = z ^ (z >> 31);
    }
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rngdetail::rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rngdetail::rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1), 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in {0, ..., bound-1} by the multiply-shift reduction.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  // Standard complex Gaussian: E z = 0, E|z|^2 = 1.
  std::complex<double> gaussian_complex() {
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = uniform01();
    const double radius = std::sqrt(-std::log(u1));
    const double angle = 2.0 * 3.14159265358979323846 * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
  }

private:
  std::uint64_t state_[4];
};

}  // namespace tschur
