#include "sft/linalg.hpp"

#include <Eigen/SVD>
#include <stdexcept>

#include "sft/error.hpp"

namespace sft::linalg {

MatrixXd J0(Eigen::Index dim) {
  if (dim <= 0 || dim % 2) throw ValidationError("J0 needs a positive even dimension");
  MatrixXd j = MatrixXd::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; k += 2) {
    j(k, k + 1) = -1;
    j(k + 1, k) = 1;
  }
  return j;
}

MatrixXcd to_complex(const MatrixXd& a) {
  if (a.rows() != a.cols() || a.rows() % 2) throw ValidationError("expected an even square matrix");
  const Eigen::Index m = a.rows() / 2;
  MatrixXcd c(m, m);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index l = 0; l < m; ++l) c(j, l) = {a(2 * j, 2 * l), a(2 * j + 1, 2 * l)};
  return c;
}

MatrixXd to_real(const MatrixXcd& c) {
  const Eigen::Index m = c.rows();
  MatrixXd a(2 * m, 2 * m);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index l = 0; l < m; ++l) {
      const double re = c(j, l).real(), im = c(j, l).imag();
      a(2 * j, 2 * l) = re;
      a(2 * j, 2 * l + 1) = -im;
      a(2 * j + 1, 2 * l) = im;
      a(2 * j + 1, 2 * l + 1) = re;
    }
  return a;
}

double symplectic_defect(const MatrixXd& a) {
  const MatrixXd j = J0(a.rows());
  return (a.transpose() * j * a - j).cwiseAbs().maxCoeff();
}

double complex_linearity_defect(const MatrixXd& a) {
  const MatrixXd j = J0(a.rows());
  return (a * j - j * a).cwiseAbs().maxCoeff();
}

MatrixXd polar_unitary(const MatrixXd& a) {
  Eigen::JacobiSVD<MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

MatrixXd polar_positive_power(const MatrixXd& a, double s) {
  Eigen::JacobiSVD<MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const VectorXd pw = svd.singularValues().array().pow(s);
  return svd.matrixV() * pw.asDiagonal() * svd.matrixV().transpose();
}

}  // namespace sft::linalg
