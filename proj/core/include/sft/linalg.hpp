#pragma once

#include <Eigen/Dense>
#include <complex>

namespace sft::linalg {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using cplx = std::complex<double>;

/// Block-diagonal [[0,-1],[1,0]] on (x_j, y_j) pairs; J0 acts as multiplication by i.
MatrixXd J0(Eigen::Index dim);

/// m x m complex matrix of a real 2m x 2m matrix commuting with J0: the
/// (j,l) block [[a,-b],[b,a]] becomes a + ib. No commutation check.
MatrixXcd to_complex(const MatrixXd& a);
MatrixXd to_real(const MatrixXcd& a);

/// max |A^T J0 A - J0|.
double symplectic_defect(const MatrixXd& a);
/// max |A J0 - J0 A|.
double complex_linearity_defect(const MatrixXd& a);

/// Orthogonal factor of the polar decomposition A = U P.
MatrixXd polar_unitary(const MatrixXd& a);

/// Positive factor P of A = U P raised to the real power s.
MatrixXd polar_positive_power(const MatrixXd& a, double s);

}  // namespace sft::linalg
