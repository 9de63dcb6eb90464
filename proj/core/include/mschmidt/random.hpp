#pragma once

#include <cstdint>

#include "mschmidt/types.hpp"

namespace mschmidt {

/// Counter-based generator: the k-th draw is splitmix64(seed, k), so streams are
/// reproducible on every platform. Normal variates come from Box-Muller over
/// our own uniforms rather than std::normal_distribution, whose output is
/// implementation defined.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

  std::uint64_t next() noexcept;
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept;
  double normal() noexcept;
  /// Standard complex Gaussian (E|z|^2 = 1).
  cplx complex_normal() noexcept;

  CVector complex_normal_vector(Eigen::Index n);
  CMatrix ginibre(Eigen::Index rows, Eigen::Index cols);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace mschmidt
