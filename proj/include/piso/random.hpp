#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace piso {

/// Seeded generator used by every experiment.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The standard distributions are not (their algorithms are left to
/// the library), so all derived variates are computed here from raw engine
/// words. Same seed, same numbers, on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n), unbiased (rejection sampling). n > 0.
  std::uint64_t below(std::uint64_t n);
  /// Standard normal via Box-Muller.
  double gaussian();
  /// e^{i phi}, phi uniform on [0, 2 pi).
  std::complex<double> unimodular();
  /// Fisher-Yates shuffle of 0..n-1.
  std::vector<int> permutation(int n);

 private:
  std::mt19937_64 engine_;
};

/// Derives an independent stream seed for sub-task `index` of a seeded run.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace piso
