#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <boost/random/normal_distribution.hpp>

namespace lipmin {

/// Seeded random source identified by (master seed, stream index).
///
/// The engine is a 64-bit Mersenne twister seeded through std::seed_seq with
/// the four 32-bit halves of (seed, stream). Distinct stream indices therefore
/// give unrelated engine states. Child streams derived with split() map
/// (stream, child) through splitmix64, so replicate k of a Monte Carlo loop
/// can own split(k) regardless of how the loop is scheduled.
///
/// Normal variates use Boost's ziggurat sampler, which is deterministic across
/// standard library implementations.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  /// Independent stream derived from this one's (seed, stream) pair.
  RngStream split(std::uint64_t child) const;

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1).
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() { return normal_(engine_); }

  double exponential(double rate) { return -std::log(uniform()) / rate; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  boost::random::normal_distribution<double> normal_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace lipmin
