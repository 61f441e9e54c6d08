#pragma once

#include <array>
#include <cstdint>

namespace ppprelay {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
/// as easy as 1, 2, 3"). Pure function of (counter, key).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

/// Counter-based random stream. The stream is fully determined by
/// (seed, stream_id); draw j of the stream is a pure function of
/// (seed, stream_id, j), so independent trials can run in any order or on
/// any thread and still see identical numbers.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

  std::uint64_t next_u64() noexcept;

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform() noexcept;

  /// Uniform on (0, 1]; never returns zero.
  double uniform_positive() noexcept;

  /// Unit-mean exponential by inverse transform, -ln U with U in (0, 1].
  double exponential() noexcept;

  /// Poisson variate of the given mean (mean >= 0) by sequential inversion.
  /// Means above 500 are split into chunks so e^{-mean} never underflows.
  std::uint64_t poisson(double mean) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

 private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int available_ = 0;
};

}  // namespace ppprelay
