#pragma once

#include <cstdint>
#include <random>
#include <utility>

namespace qcvol {

/// Reproducible random stream keyed by (seed, stream_id). Uses mt19937_64 seeded
/// through std::seed_seq and converts bits to doubles by hand, so sequences
/// are identical across standard libraries.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1].
  double uniform_positive() { return 1.0 - uniform(); }
  /// Pair of independent standard normals (Box-Muller).
  std::pair<double, double> normal_pair();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  /// Number of 64-bit words consumed so far.
  std::uint64_t draws() const { return draws_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t draws_ = 0;
  std::mt19937_64 engine_;
};

inline constexpr std::uint64_t kDefaultSeed = 0x9E3779B97F4A7C15ULL;

}  // namespace qcvol
