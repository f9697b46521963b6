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

namespace {

cplx unitary_det(const MatrixXd& a) {
  const cplx d = linalg::to_complex(linalg::polar_unitary(a)).determinant();
  return d / std::abs(d);
}

// Lifted change of arg det_C(U(t)) along the samples.
double det_winding(const SymplecticPath& path) {
  double total = 0;
  cplx prev = unitary_det(path.samples.front());
  for (std::size_t j = 1; j < path.samples.size(); ++j) {
    const cplx cur = unitary_det(path.samples[j]);
    const double step = std::arg(cur / prev);
    if (std::abs(step) > pi / 2) throw DomainError("path under-sampled: det_C jumps by more than pi/2");
    total += step;
    prev = cur;
  }
  return total;
}

// Lifted change of arg rho along s |-> U P^s on [s0, s1].
double lift_segment(const MatrixXd& u, const MatrixXd& a, double s0, double s1, cplx r0, cplx r1,
                    int depth) {
  const double step = std::arg(r1 / r0);
  if (std::abs(step) <= pi / 4) return step;
  if (depth > 40) throw NumericalError("rotation function does not settle along the polar segment");
  const double sm = 0.5 * (s0 + s1);
  const cplx rm = rho(u * linalg::polar_positive_power(a, sm));
  return lift_segment(u, a, s0, sm, r0, rm, depth + 1) + lift_segment(u, a, sm, s1, rm, r1, depth + 1);
}

}  // namespace

int cz_index(const SymplecticPath& path) {
  validate(path);
  if (!has_nondegenerate_endpoint(path)) throw DomainError("degenerate endpoint: 1 is an eigenvalue of Phi(1)");
  const double theta_det = det_winding(path);

  const MatrixXd& a = path.endpoint();
  const MatrixXd u = linalg::polar_unitary(a);
  constexpr int kSegments = 32;
  double delta = 0;
  cplx prev = rho(u);
  for (int q = 1; q <= kSegments; ++q) {
    const double s0 = double(q - 1) / kSegments, s1 = double(q) / kSegments;
    const cplx cur = q == kSegments ? rho(a) : rho(u * linalg::polar_positive_power(a, s1));
    delta += lift_segment(u, a, s0, s1, prev, cur, 0);
    prev = cur;
  }

  double correction = 0;
  for (double th : rotation_data(a).krein_angles) correction += pi - th;

  const double value = (theta_det + delta + correction) / pi;
  const double r = std::round(value);
  if (std::abs(value - r) > 0.25) throw NumericalError("Conley-Zehnder sum is not near an integer");
  return static_cast<int>(r);
}

int maslov_index(const SymplecticPath& loop) {
  validate(loop);
  const auto d = loop.dim();
  if ((loop.endpoint() - MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-9)
    throw DomainError("Maslov index needs a closed loop: Phi(1) != Id");
  const double value = det_winding(loop) / (2 * pi);
  const double r = std::round(value);
  if (std::abs(value - r) > 1e-6) throw NumericalError("det_C winding is not an integer");
  return static_cast<int>(r);
}

ParityReport parity_check(const SymplecticPath& path, int n) {
  ParityReport rep;
  rep.cz = cz_index(path);
  rep.n = n < 0 ? static_cast<int>(path.dim() / 2 + 1) : n;
  rep.parity_bit = ((rep.cz + rep.n - 3) % 2 + 2) % 2;
  const auto d = path.dim();
  const double det = (MatrixXd::Identity(d, d) - path.endpoint()).determinant();
  if (det == 0) throw DomainError("degenerate endpoint: det(Id - A) = 0");
  rep.sign_det = det > 0 ? 1 : -1;
  const int lhs = (rep.cz + rep.n + 1) % 2 == 0 ? 1 : -1;
  rep.consistent = lhs == rep.sign_det;
  return rep;
}

void validate(const PeriodicOrbitRecord& orbit) {
  if (!(orbit.period > 0)) throw ValidationError("periodic orbit needs period T > 0");
  if (orbit.covering < 1) throw ValidationError("periodic orbit needs covering k >= 1");
  const auto& a = orbit.return_map;
  if (a.rows() != a.cols() || a.rows() == 0 || a.rows() % 2)
    throw ValidationError("return map must be square of even size");
  const double norm = a.cwiseAbs().maxCoeff();
  if (linalg::symplectic_defect(a) > kSymplecticTol * std::max(1.0, norm * norm))
    throw ValidationError("return map is not symplectic");
}

int negative_real_count(const MatrixXd& a1) {
  if (a1.rows() != a1.cols() || a1.rows() == 0) throw ValidationError("return map must be square");
  Eigen::EigenSolver<MatrixXd> es(a1, false);
  int count = 0;
  for (const auto& l : es.eigenvalues()) {
    if (std::abs(l - 1.0) < kEigenOneTol || std::abs(l + 1.0) < kEigenOneTol)
      throw DomainError("simple return map has an eigenvalue at +1 or -1");
    if (std::abs(l.imag()) <= 1e-12 * std::abs(l) && l.real() > -1 && l.real() < 0) ++count;
  }
  return count;
}

bool is_bad_orbit(const PeriodicOrbitRecord& orbit, const MatrixXd& simple_return_map) {
  validate(orbit);
  const int e = negative_real_count(simple_return_map);
  return orbit.covering % 2 == 0 && e % 2 == 1;
}

}  // namespace sft::spectral
