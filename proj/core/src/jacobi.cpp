#include "sft/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "sft/error.hpp"

namespace sft::spectral {

using cplx = std::complex<double>;

JacobiResult jacobi_eigen(Eigen::MatrixXcd a, bool want_vectors, int max_sweeps) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw ValidationError("jacobi_eigen needs a square matrix");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (a(i, i).imag() != 0.0) throw NumericalError("matrix is not Hermitian (complex diagonal)");
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (a(i, j) != std::conj(a(j, i))) throw NumericalError("matrix is not exactly Hermitian");
  }

  Eigen::MatrixXcd v;
  if (want_vectors) v = Eigen::MatrixXcd::Identity(n, n);

  double scale = 0;
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) scale += std::norm(a(i, j));
  scale = std::sqrt(scale);

  JacobiResult out;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0;
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < j; ++i) off += std::norm(a(i, j));
    off = std::sqrt(2 * off);
    if (off <= 1e-15 * scale || off == 0) break;
    ++out.sweeps;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double r = std::abs(a(p, q));
        if (r == 0) continue;
        const double app = a(p, p).real(), aqq = a(q, q).real();
        // skip rotations that cannot change the diagonal in floating point
        if (sweep > 3 && r < 1e-18 * (std::abs(app) + std::abs(aqq))) {
          a(p, q) = a(q, p) = 0;
          continue;
        }
        const cplx e = a(p, q) / r;
        const double tau = (aqq - app) / (2 * r);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
        const double c = 1 / std::sqrt(1 + t * t), s = t * c;
        // G = [[c, s e], [-s conj(e), c]] acting on columns p, q
        const cplx gpq = s * e, gqp = -s * std::conj(e);
        cplx* colp = a.col(p).data();
        cplx* colq = a.col(q).data();
        for (Eigen::Index k = 0; k < n; ++k) {
          const cplx xp = colp[k], xq = colq[k];
          colp[k] = c * xp + gqp * xq;
          colq[k] = gpq * xp + c * xq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          a(p, k) = std::conj(colp[k]);
          a(q, k) = std::conj(colq[k]);
        }
        a(p, p) = app - t * r;
        a(q, q) = aqq + t * r;
        a(p, q) = a(q, p) = 0;
        if (want_vectors) {
          cplx* vp = v.col(p).data();
          cplx* vq = v.col(q).data();
          for (Eigen::Index k = 0; k < n; ++k) {
            const cplx xp = vp[k], xq = vq[k];
            vp[k] = c * xp + gqp * xq;
            vq[k] = gpq * xp + c * xq;
          }
        }
      }
    }
    if (sweep == max_sweeps - 1) throw NumericalError("Jacobi iteration did not converge");
  }

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](auto i, auto j) { return a(i, i).real() < a(j, j).real(); });
  out.values.resize(n);
  if (want_vectors) out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]).real();
    if (want_vectors) out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

}  // namespace sft::spectral
