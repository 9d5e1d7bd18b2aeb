#pragma once

#include <cstdint>
#include <limits>

#include "geamkit/linalg.hpp"

namespace geamkit {

/// SplitMix64 generator. Fixed algorithm so that seeded fixtures are portable
/// across standard libraries (std::normal_distribution is not).
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept;

  /// Standard normal variate via Box-Muller; the second variate of each pair
  /// is cached for the next call.
  double gaussian() noexcept;

  /// Standard complex Gaussian: independent N(0,1) real and imaginary parts.
  Complex complex_gaussian() noexcept;

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Seed for sub-stream `index` of `seed`; independent of evaluation order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Haar-random unit vector in C^n.
ComplexVector random_unit_vector(int n, SplitMix64& rng);

/// Haar-random n x n unitary (QR of a Ginibre matrix with phase fix).
ComplexMatrix random_unitary(int n, SplitMix64& rng);

}  // namespace geamkit
