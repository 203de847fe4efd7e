#pragma once

#include <cstdint>
#include <random>

namespace wsnacc {

/// SplitMix64 finalizer; used to derive independent substream seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Seeded random source with bit-reproducible output on every platform.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The standard distributions are implementation-defined, so the
/// uniform and normal transforms are done here: uniform() takes the top 53
/// bits, normal() is the Marsaglia polar method.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Generator for substream `stream` of `seed`.
  static Rng substream(std::uint64_t seed, std::uint64_t stream) {
    return Rng(mix_seed(seed, stream));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on [lo, hi].
  double uniform(double lo, double hi);
  /// Standard normal.
  double normal();

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

} // namespace wsnacc
