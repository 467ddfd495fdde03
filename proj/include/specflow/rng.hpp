#pragma once

#include <cstdint>
#include <random>

#include "specflow/laurent_symbol.hpp"

namespace specflow {

/// splitmix64 finalizer; derives independent stream seeds from (seed, id).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Platform-independent random source. The standard distributions are
/// implementation-defined, so doubles and normals are derived by hand from
/// the raw mt19937_64 output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi);
  double normal();
  Complex complex_normal();

  Matrix gaussian(int rows, int cols);
  /// Haar-distributed unitary (QR of a complex Gaussian with phase fix).
  Matrix haar_unitary(int n);
  /// Random Hermitian matrix with spectral norm <= scale.
  Matrix hermitian(int n, double scale);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace specflow
