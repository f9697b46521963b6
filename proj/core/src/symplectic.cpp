#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "sft/error.hpp"
#include "sft/index.hpp"
#include "sft/linalg.hpp"
#include "sft/rotation.hpp"

namespace sft::spectral {

using linalg::cplx;
using std::numbers::pi;

void validate(const SymplecticPath& path) {
  if (path.samples.size() < 2 || path.samples.size() != path.times.size())
    throw ValidationError("symplectic path needs matching times and samples (at least 2)");
  const auto d = path.dim();
  if (d == 0 || d % 2) throw ValidationError("symplectic path dimension must be even and positive");
  if (path.times.front() != 0.0 || path.times.back() != 1.0)
    throw ValidationError("symplectic path times must run from 0 to 1");
  for (std::size_t j = 0; j < path.samples.size(); ++j) {
    const auto& a = path.samples[j];
    if (a.rows() != d || a.cols() != d)
      throw ValidationError("symplectic path sample " + std::to_string(j) + " has the wrong shape");
    if (j > 0 && !(path.times[j] > path.times[j - 1]))
      throw ValidationError("symplectic path times must be strictly increasing");
    const double norm = a.cwiseAbs().maxCoeff();
    if (linalg::symplectic_defect(a) > kSymplecticTol * std::max(1.0, norm * norm))
      throw ValidationError("symplectic path sample " + std::to_string(j) + " is not symplectic");
  }
  if ((path.samples.front() - MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-12)
    throw ValidationError("symplectic path must start at the identity");
}

bool has_nondegenerate_endpoint(const SymplecticPath& path) {
  Eigen::EigenSolver<MatrixXd> es(path.endpoint(), false);
  for (const auto& l : es.eigenvalues())
    if (std::abs(l - 1.0) < kEigenOneTol) return false;
  return true;
}

SymplecticPath sample_path(const std::function<MatrixXd(double)>& phi, int intervals) {
  if (intervals < 1) throw ValidationError("path needs at least one interval");
  SymplecticPath p;
  for (int j = 0; j <= intervals; ++j) {
    const double t = j == intervals ? 1.0 : double(j) / intervals;
    p.times.push_back(t);
    p.samples.push_back(phi(t));
  }
  return p;
}

SymplecticPath rotation_path(double theta, int intervals) {
  return sample_path(
      [theta](double t) {
        const double a = 2 * pi * theta * t;
        MatrixXd r(2, 2);
        r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
        return r;
      },
      intervals);
}

namespace {
void require_same_times(const SymplecticPath& a, const SymplecticPath& b) {
  if (a.times != b.times) throw ValidationError("paths must share sample times");
}
}  // namespace

SymplecticPath direct_sum(const SymplecticPath& a, const SymplecticPath& b) {
  require_same_times(a, b);
  SymplecticPath out;
  out.times = a.times;
  const auto da = a.dim(), db = b.dim();
  for (std::size_t j = 0; j < a.samples.size(); ++j) {
    MatrixXd m = MatrixXd::Zero(da + db, da + db);
    m.topLeftCorner(da, da) = a.samples[j];
    m.bottomRightCorner(db, db) = b.samples[j];
    out.samples.push_back(m);
  }
  return out;
}

SymplecticPath pointwise_product(const SymplecticPath& a, const SymplecticPath& b) {
  require_same_times(a, b);
  if (a.dim() != b.dim()) throw ValidationError("paths must have the same dimension");
  SymplecticPath out;
  out.times = a.times;
  for (std::size_t j = 0; j < a.samples.size(); ++j) out.samples.push_back(a.samples[j] * b.samples[j]);
  return out;
}

SymplecticPath pointwise_inverse(const SymplecticPath& a) {
  SymplecticPath out;
  out.times = a.times;
  const MatrixXd j = linalg::J0(a.dim());
  for (const auto& s : a.samples) out.samples.push_back(-j * s.transpose() * j);
  return out;
}

RotationData rotation_data(const MatrixXd& a) {
  Eigen::EigenSolver<MatrixXd> es(a, true);
  const auto& vals = es.eigenvalues();
  const auto& vecs = es.eigenvectors();
  const MatrixXd j0 = linalg::J0(a.rows());

  RotationData out;
  int negative = 0;
  std::vector<Eigen::Index> elliptic;
  for (Eigen::Index k = 0; k < vals.size(); ++k) {
    const cplx l = vals(k);
    if (std::abs(l.imag()) <= 1e-9 * std::max(1.0, std::abs(l))) {
      if (l.real() < 0) ++negative;
    } else if (l.imag() > 0 && std::abs(std::abs(l) - 1) <= 1e-7) {
      elliptic.push_back(k);
    }
  }
  if (negative % 2) throw NumericalError("odd number of negative real eigenvalues");

  std::vector<bool> used(elliptic.size(), false);
  cplx phase = negative % 4 == 0 ? 1.0 : -1.0;
  for (std::size_t c = 0; c < elliptic.size(); ++c) {
    if (used[c]) continue;
    std::vector<Eigen::Index> cluster;
    cplx mean = 0;
    for (std::size_t d = c; d < elliptic.size(); ++d)
      if (!used[d] && std::abs(vals(elliptic[d]) - vals(elliptic[c])) < 1e-6) {
        used[d] = true;
        cluster.push_back(elliptic[d]);
        mean += vals(elliptic[d]);
      }
    const auto k = static_cast<Eigen::Index>(cluster.size());
    Eigen::MatrixXcd v(a.rows(), k);
    for (Eigen::Index q = 0; q < k; ++q) v.col(q) = vecs.col(cluster[q]);
    const Eigen::MatrixXcd form = (v.adjoint() * j0.cast<cplx>() * v) / cplx(0, 1);
    const Eigen::MatrixXcd herm = 0.5 * (form + form.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ks(herm, Eigen::EigenvaluesOnly);
    int positive = 0;
    for (Eigen::Index q = 0; q < k; ++q) positive += ks.eigenvalues()(q) > 0;
    const double theta = std::arg(mean);  // in (0, pi)
    for (int q = 0; q < positive; ++q) out.krein_angles.push_back(theta);
    for (Eigen::Index q = positive; q < k; ++q) out.krein_angles.push_back(2 * pi - theta);
    phase *= std::polar(1.0, (2.0 * positive - double(k)) * theta);
  }
  out.rho = phase;
  return out;
}

cplx rho(const MatrixXd& a) { return rotation_data(a).rho; }

}  // namespace sft::spectral
