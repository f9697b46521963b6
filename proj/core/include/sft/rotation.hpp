#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace sft::spectral {

/// rho(A) together with the elliptic spectrum seen through the Krein form:
/// for each unit-circle eigenvalue e^{i theta} (theta in (0, pi)) of Krein
/// signature (p, k - p), p copies of theta and k - p copies of 2 pi - theta.
struct RotationData {
  std::complex<double> rho = 1;
  std::vector<double> krein_angles;  // each in (0, 2 pi)
};

RotationData rotation_data(const Eigen::MatrixXd& a);

}  // namespace sft::spectral
