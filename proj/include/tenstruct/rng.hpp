#pragma once

#include <cstdint>

namespace tenstruct {

// Deterministic, platform-independent random source built on the SplitMix64
// finalizer. Supports two access styles:
//   * counter-addressed draws `at(k)`: pure function of (seed, k), used where
//     reproducibility must not depend on evaluation order (e.g. entry k of a
//     generated tensor);
//   * sequential draws `next()`: a private stream advanced one step at a time.
// Two instances with the same seed produce identical values on any platform.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : m_seed(seed), m_counter(0) {}

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t at(std::uint64_t counter) const {
    return mix(m_seed + 0x632be59bd9b4e019ULL * (counter + 1));
  }

  std::uint64_t next() { return at(m_counter++); }

  // Uniform draw from [0, 1).
  double nextUnit() { return toUnit(next()); }
  double unitAt(std::uint64_t counter) const { return toUnit(at(counter)); }

  // Uniform dyadic rational k/256 with k in [-256, 256]. Exactly
  // representable, and closed under the small sums and integer scalings the
  // generators perform, so classification of generated tensors is exact.
  double dyadicAt(std::uint64_t counter) const {
    const std::int64_t k = static_cast<std::int64_t>(at(counter) % 513u) - 256;
    return static_cast<double>(k) / 256.0;
  }

  // Dyadic rational in (0, 1]: k/256 with k in [1, 256].
  double positiveDyadicAt(std::uint64_t counter) const {
    const std::int64_t k = static_cast<std::int64_t>(at(counter) % 256u) + 1;
    return static_cast<double>(k) / 256.0;
  }

  // Derive an independent stream, e.g. one per multistart run.
  CounterRng substream(std::uint64_t key) const {
    return CounterRng(mix(m_seed ^ mix(key)));
  }

  std::uint64_t seed() const { return m_seed; }

 private:
  static double toUnit(std::uint64_t u) {
    return static_cast<double>(u >> 11) * 0x1.0p-53;
  }

  std::uint64_t m_seed;
  std::uint64_t m_counter;
};

}  // namespace tenstruct
