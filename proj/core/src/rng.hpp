#pragma once

#include <cstdint>
#include <random>

namespace subshift::detail {

inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                                std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a),    static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b),    static_cast<std::uint32_t>(b >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

// Uniform on [0, n) by rejection; the standard distributions are not
// reproducible across library implementations.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t threshold = (0 - n) % n;
  while (true) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % n;
  }
}

}  // namespace subshift::detail
