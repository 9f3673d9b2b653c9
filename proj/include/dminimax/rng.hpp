#pragma once

#include <cmath>
#include <cstdint>

namespace dminimax {

/// Counter-based random stream keyed on (master_seed, node, iteration).
///
/// The draw sequence is a pure function of the key triple, so any node's
/// minibatch at any iteration can be replayed in isolation and parallel
/// evaluation cannot reorder results.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t node_id,
            std::uint64_t iteration)
      : state_(derive(master_seed, node_id, iteration)) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  /// Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller (cosine branch only).
  double gaussian() {
    // u1 in (0, 1] so the log is finite
    double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t derive(std::uint64_t seed, std::uint64_t node,
                              std::uint64_t iteration) {
    std::uint64_t s = mix(seed + 0x9E3779B97F4A7C15ULL);
    s = mix(s ^ mix(node + 0xD1B54A32D192ED03ULL));
    s = mix(s ^ mix(iteration + 0x8CB92BA72F3D8DD7ULL));
    return s;
  }

  std::uint64_t state_;
};

}  // namespace dminimax
