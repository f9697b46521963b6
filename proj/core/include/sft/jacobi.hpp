#pragma once

#include <Eigen/Dense>

namespace sft::spectral {

struct JacobiResult {
  Eigen::VectorXd values;    // ascending
  Eigen::MatrixXcd vectors;  // columns match values; empty unless requested
  int sweeps = 0;
};

/// Cyclic Jacobi for a complex Hermitian matrix. The input must be exactly
/// Hermitian (bitwise conj-symmetric, real diagonal); anything else throws
/// NumericalError.
JacobiResult jacobi_eigen(Eigen::MatrixXcd a, bool want_vectors = false, int max_sweeps = 60);

}  // namespace sft::spectral
