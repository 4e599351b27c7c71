#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace oacs {

/// Seeded generator with a platform-independent output sequence.
///
/// std::mt19937_64 is fully specified by the standard, but the std
/// distributions are not; uniform and Gaussian variates are therefore derived
/// here from the raw 64-bit stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double gaussian();

  Eigen::VectorXd gaussian_vector(Eigen::Index n);
  Eigen::MatrixXd gaussian_matrix(Eigen::Index rows, Eigen::Index cols);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// SplitMix64 finalizer; derives independent sub-seeds from (base, stream).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

/// Haar-distributed orthogonal matrix: Householder QR of a Gaussian matrix
/// with the signs of diag(R) folded into Q.
Eigen::MatrixXd random_orthogonal(Eigen::Index n, Rng& rng);

}  // namespace oacs
