#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace piso {

using Complex = std::complex<double>;

/// Dense complex matrix. Column-major storage; rows() * cols() entries.
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr Complex kI{0.0, 1.0};

/// Builds a matrix from row-major nested lists. Handy in tests and configs.
inline ComplexMatrix from_rows(const std::vector<std::vector<Complex>>& rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto m = n == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(rows.front().size());
  ComplexMatrix out(n, m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j) out(i, j) = rows[i].at(j);
  return out;
}

inline bool all_finite(const ComplexMatrix& m) {
  return m.allFinite();
}

}  // namespace piso
