#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <random>

namespace cvc::rng {

/// splitmix64 step; used to derive child seeds from a master seed.
inline std::uint64_t mix(std::uint64_t seed) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  return mix(seed ^ mix(salt));
}

inline Eigen::MatrixXd standard_normal(Eigen::Index rows, Eigen::Index cols,
                                       std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal(gen);
  return m;
}

}  // namespace cvc::rng
