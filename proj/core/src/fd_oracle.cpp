#include <Eigen/Sparse>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "sft/error.hpp"
#include "sft/linalg.hpp"
#include "sft/spectral.hpp"

namespace sft::spectral {
namespace {

using SpMat = Eigen::SparseMatrix<double>;

// Component c lives on integer nodes when even (x), half nodes when odd (y).
SpMat staggered_operator(const CoefficientLoop& loop, int n) {
  const auto d = loop.dim;
  const double h = 1.0 / n;
  const MatrixXd j = linalg::J0(d);
  auto c_at = [&](double t) {
    const MatrixXd s = j * loop(t);
    return MatrixXd(0.5 * (s + s.transpose()));
  };
  auto idx = [n](Eigen::Index comp, int i) { return comp * n + ((i % n) + n) % n; };

  std::vector<Eigen::Triplet<double>> trip;
  for (int i = 0; i < n; ++i) {
    const double t_int = i * h, t_half = (i + 0.5) * h;
    const MatrixXd ci = c_at(t_int), ch = c_at(t_half);
    const MatrixXd c_lo = c_at(t_int - 0.25 * h), c_hi = c_at(t_int + 0.25 * h);
    for (Eigen::Index p = 0; p < d; p += 2) {
      // -J0 h' on the pair: x-row gets +y', y-row gets -x'
      trip.emplace_back(idx(p, i), idx(p + 1, i), 1 / h);
      trip.emplace_back(idx(p, i), idx(p + 1, i - 1), -1 / h);
      trip.emplace_back(idx(p + 1, i), idx(p, i), 1 / h);
      trip.emplace_back(idx(p + 1, i - 1), idx(p, i), -1 / h);
    }
    for (Eigen::Index a = 0; a < d; ++a)
      for (Eigen::Index b = 0; b < d; ++b) {
        const bool a_int = a % 2 == 0, b_int = b % 2 == 0;
        if (a_int == b_int) {
          trip.emplace_back(idx(a, i), idx(b, i), a_int ? ci(a, b) : ch(a, b));
        } else if (a_int) {
          // edges (int i, half i-1) and (int i, half i), weight 1/2 each,
          // coefficient taken at the edge midpoint; mirrored for the y-row
          trip.emplace_back(idx(a, i), idx(b, i - 1), 0.5 * c_lo(a, b));
          trip.emplace_back(idx(a, i), idx(b, i), 0.5 * c_hi(a, b));
          trip.emplace_back(idx(b, i - 1), idx(a, i), 0.5 * c_lo(a, b));
          trip.emplace_back(idx(b, i), idx(a, i), 0.5 * c_hi(a, b));
        }
      }
  }
  SpMat a(d * n, d * n);
  a.setFromTriplets(trip.begin(), trip.end());
  return a;
}

// Full sorted spectrum of the staggered matrix.
std::vector<double> fd_spectrum(const CoefficientLoop& loop, int n_points) {
  validate(loop);
  if (n_points < 8) throw ValidationError("finite-difference oracle needs at least 8 points");
  const MatrixXd dense = MatrixXd(staggered_operator(loop, n_points));
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(dense, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("finite-difference eigensolve failed");
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

// Start of the contiguous block of `count` smallest-magnitude entries.
std::size_t smallest_block(const std::vector<double>& sorted, std::size_t count) {
  auto zero = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), 0.0) - sorted.begin());
  std::size_t lo = zero, hi = zero;
  while (hi - lo < count) {
    if (lo == 0) ++hi;
    else if (hi == sorted.size()) --lo;
    else if (std::abs(sorted[lo - 1]) <= std::abs(sorted[hi])) --lo;
    else ++hi;
  }
  return lo;
}

}  // namespace

std::vector<double> fd_smallest_eigenvalues(const CoefficientLoop& loop, int n_points, int count) {
  const auto spec = fd_spectrum(loop, n_points);
  if (count < 1 || static_cast<std::size_t>(count) > spec.size())
    throw ValidationError("bad eigenvalue count");
  const auto lo = smallest_block(spec, count);
  return {spec.begin() + lo, spec.begin() + lo + count};
}

std::vector<double> fd_oracle(const CoefficientLoop& loop, int count, int n_points) {
  const auto coarse = fd_spectrum(loop, n_points);
  const auto fine = fd_spectrum(loop, 2 * n_points);
  if (count < 1 || static_cast<std::size_t>(count) > coarse.size())
    throw ValidationError("bad eigenvalue count");
  const auto lo = smallest_block(fine, count);
  // both spectra are matched relative to their first nonnegative eigenvalue
  const auto zf = std::lower_bound(fine.begin(), fine.end(), 0.0) - fine.begin();
  const auto zc = std::lower_bound(coarse.begin(), coarse.end(), 0.0) - coarse.begin();
  std::vector<double> out(count);
  for (int k = 0; k < count; ++k) {
    const auto i = static_cast<std::ptrdiff_t>(lo) + k;
    const auto j = i - zf + zc;
    if (j < 0 || j >= static_cast<std::ptrdiff_t>(coarse.size()))
      throw NumericalError("finite-difference spectra cannot be aligned");
    out[k] = (4 * fine[i] - coarse[j]) / 3;
  }
  return out;
}

}  // namespace sft::spectral
