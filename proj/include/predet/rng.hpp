#pragma once

#include <complex>
#include <cstdint>

namespace predet {

// Deterministic splitmix64 stream. We roll our own instead of using
// <random> distributions so that identical seeds give identical bytes on
// every platform and standard library.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller; the uniform is shifted into (0, 1].
    double normal();

    // Complex standard normal, E|z|^2 = 1.
    std::complex<double> complex_normal();

  private:
    std::uint64_t state_;
};

// Counter-based seed splitter: one master seed fans out to independent
// streams for sweep points, generators, test samples.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace predet
