#include "ppprelay/random.hpp"

#include <cmath>

namespace ppprelay {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

constexpr double kTwoPow53Inv = 1.0 / 9007199254740992.0;

constexpr std::uint32_t lo32(std::uint64_t v) { return static_cast<std::uint32_t>(v); }
constexpr std::uint32_t hi32(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }

double poisson_chunk(RandomStream& stream, double mean) noexcept {
  const double u = stream.uniform();
  double p = std::exp(-mean);
  double cdf = p;
  std::uint64_t k = 0;
  while (u >= cdf) {
    ++k;
    p *= mean / static_cast<double>(k);
    const double next = cdf + p;
    // Rounding can leave the cdf a hair below u; stop once the tail is flat.
    if (next == cdf && static_cast<double>(k) > mean) break;
    cdf = next;
  }
  return static_cast<double>(k);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) noexcept {
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
    ctr = {hi32(p1) ^ ctr[1] ^ key[0], lo32(p1), hi32(p0) ^ ctr[3] ^ key[1], lo32(p0)};
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  return ctr;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
    : seed_(seed), stream_id_(stream_id) {}

void RandomStream::refill() noexcept {
  const auto out = philox4x32({lo32(block_), hi32(block_), lo32(stream_id_), hi32(stream_id_)},
                              {lo32(seed_), hi32(seed_)});
  ++block_;
  buffer_[0] = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
  buffer_[1] = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
  available_ = 2;
}

std::uint64_t RandomStream::next_u64() noexcept {
  if (available_ == 0) refill();
  return buffer_[2 - available_--];
}

double RandomStream::uniform() noexcept {
  return static_cast<double>(next_u64() >> 11) * kTwoPow53Inv;
}

double RandomStream::uniform_positive() noexcept {
  return static_cast<double>((next_u64() >> 11) + 1) * kTwoPow53Inv;
}

double RandomStream::exponential() noexcept { return -std::log(uniform_positive()); }

std::uint64_t RandomStream::poisson(double mean) noexcept {
  if (!(mean > 0.0)) return 0;
  constexpr double kChunk = 500.0;
  double total = 0.0;
  while (mean > kChunk) {
    total += poisson_chunk(*this, kChunk);
    mean -= kChunk;
  }
  total += poisson_chunk(*this, mean);
  return static_cast<std::uint64_t>(total);
}

}  // namespace ppprelay
