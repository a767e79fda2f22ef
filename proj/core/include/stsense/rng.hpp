#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace stsense {

/// One 10-round Philox4x32 block: 128-bit counter, 64-bit key -> 4x32 bits.
std::array<std::uint32_t, 4> philox4x32_10(const std::array<std::uint32_t, 4>& counter,
                                           const std::array<std::uint32_t, 2>& key);

/// Identifies what a stream is used for, so that trials, channel draws and
/// auxiliary draws never collide even under the same seed.
enum class StreamDomain : std::uint32_t {
  H0Trial = 0,
  H1Trial = 1,
  Channel = 2,
  Generic = 3,
};

/// Counter-based random stream (Philox4x32-10).
///
/// A stream is addressed by (seed, domain, index); block b of the stream is
/// philox(counter = [b_lo, b_hi, index_lo32, domain], key = [seed_lo, seed_hi]).
/// Each block yields two uniforms in (0,1); normals are produced from uniform
/// pairs by the Box-Muller transform. Draws therefore depend only on the
/// stream address and the position in the stream, never on execution order
/// or thread count.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, StreamDomain domain, std::uint64_t index);

  /// Uniform on the open interval (0,1).
  double next_uniform();

  /// Standard normal N(0,1).
  double next_normal();

  /// Circularly-symmetric complex Gaussian with unit total variance
  /// (real and imaginary parts independent N(0, 1/2)).
  std::complex<double> next_complex_gaussian();

  std::uint64_t seed() const { return seed_; }

 private:
  void refill();

  std::uint64_t seed_;
  std::array<std::uint32_t, 2> key_;
  std::uint32_t index_lo_;
  std::uint32_t domain_;
  std::uint64_t block_ = 0;
  double buffer_[2];
  int buffered_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace stsense
