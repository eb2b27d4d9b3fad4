#pragma once

#include <cstdint>

namespace burgers {

// splitmix64: fast, well-mixed 64-bit stream. Used both as a stream
// generator and as a hash for deriving per-block seeds, so that the
// sampled realization is a deterministic function of (seed, block).
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

  private:
    std::uint64_t state_;
};

// Stateless mixing of a master seed with a block index (may be negative).
inline std::uint64_t mix_seed(std::uint64_t master, std::int64_t block) {
    SplitMix64 g(master ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(block) + 0x632be59bd9b4e019ULL));
    g.next_u64();
    return g.next_u64();
}

// Exact Poisson sampling by uniform-product inversion (Knuth). Fine for
// the small per-block means used here.
int poisson_knuth(SplitMix64& g, double lambda);

}  // namespace burgers
