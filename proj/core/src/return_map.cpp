#include <Eigen/Eigenvalues>
#include <cmath>

#include "sft/error.hpp"
#include "sft/index.hpp"
#include "sft/linalg.hpp"

namespace sft::spectral {
namespace {

void check_generator(const std::function<MatrixXd(double)>& s, Eigen::Index dim, double period) {
  if (dim <= 0 || dim % 2) throw ValidationError("flow dimension must be even and positive");
  if (!(period > 0)) throw ValidationError("flow period must be positive");
  const MatrixXd j = linalg::J0(dim);
  for (int q = 0; q < 16; ++q) {
    const MatrixXd m = s(period * q / 16.0);
    if (m.rows() != dim || m.cols() != dim) throw ValidationError("flow generator has the wrong size");
    const MatrixXd js = j * m;
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((js - js.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
      throw ValidationError("flow generator is not infinitesimally symplectic (J0 S not symmetric)");
  }
}

MatrixXd rk4_step(const std::function<MatrixXd(double)>& s, const MatrixXd& psi, double t, double h) {
  const MatrixXd sm = s(t + 0.5 * h);
  const MatrixXd k1 = s(t) * psi;
  const MatrixXd k2 = sm * (psi + 0.5 * h * k1);
  const MatrixXd k3 = sm * (psi + 0.5 * h * k2);
  const MatrixXd k4 = s(t + h) * (psi + h * k3);
  return psi + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
}

MatrixXd integrate(const std::function<MatrixXd(double)>& s, double t0, double t1, int steps,
                   MatrixXd psi) {
  const double h = (t1 - t0) / steps;
  for (int q = 0; q < steps; ++q) psi = rk4_step(s, psi, t0 + q * h, h);
  return psi;
}

constexpr double kDriftTarget = 1e-8;
// Successive doublings must agree this closely, so that eigenvalue-at-1 tests
// at 1e-9 see the flow rather than the RK4 phase error.
constexpr double kConvergence = 1e-11;
constexpr double kDriftLimit = 1e-6;
constexpr int kMaxSteps = 1 << 20;

}  // namespace

ReturnMapResult return_map(const std::function<MatrixXd(double)>& s, Eigen::Index dim, double period,
                           int initial_steps) {
  check_generator(s, dim, period);
  ReturnMapResult r;
  r.steps = std::max(1, initial_steps);
  r.a = integrate(s, 0, period, r.steps, MatrixXd::Identity(dim, dim));
  for (;;) {
    const MatrixXd finer = integrate(s, 0, period, 2 * r.steps, MatrixXd::Identity(dim, dim));
    const double change = (finer - r.a).cwiseAbs().maxCoeff() / std::max(1.0, r.a.cwiseAbs().maxCoeff());
    r.a = finer;
    r.steps *= 2;
    r.drift = linalg::symplectic_defect(r.a);
    if ((r.drift <= kDriftTarget && change <= kConvergence) || r.steps >= kMaxSteps) break;
  }
  if (r.drift > kDriftLimit)
    throw NumericalError("symplectic drift " + std::to_string(r.drift) + " exceeds 1e-6");
  return r;
}

SymplecticPath flow_path(const std::function<MatrixXd(double)>& s, Eigen::Index dim, double period,
                         int intervals) {
  if (intervals < 1) throw ValidationError("flow path needs at least one interval");
  const auto probe = return_map(s, dim, period);
  // paths must meet the 1e-9 input tolerance, so refine past the drift target
  int sub = std::max(1, (probe.steps + intervals - 1) / intervals);
  for (;;) {
    SymplecticPath p;
    MatrixXd psi = MatrixXd::Identity(dim, dim);
    p.times.push_back(0.0);
    p.samples.push_back(psi);
    double worst = 0;
    for (int q = 0; q < intervals; ++q) {
      psi = integrate(s, period * q / intervals, period * (q + 1) / intervals, sub, psi);
      p.times.push_back(q + 1 == intervals ? 1.0 : double(q + 1) / intervals);
      p.samples.push_back(psi);
      const double norm = psi.cwiseAbs().maxCoeff();
      worst = std::max(worst, linalg::symplectic_defect(psi) / std::max(1.0, norm * norm));
    }
    if (worst <= 0.1 * kSymplecticTol) return p;
    if (static_cast<long>(sub) * intervals >= kMaxSteps)
      throw NumericalError("flow path cannot reach the symplectic input tolerance");
    sub *= 2;
  }
}

bool is_nondegenerate(const MatrixXd& a, int k) {
  if (a.rows() != a.cols() || a.rows() == 0) throw ValidationError("return map must be square");
  if (k < 1) throw ValidationError("covering bound k must be >= 1");
  MatrixXd power = a;
  for (int m = 1; m <= k; ++m) {
    if (m > 1) power = power * a;
    Eigen::EigenSolver<MatrixXd> es(power, false);
    for (const auto& l : es.eigenvalues())
      if (std::abs(l - 1.0) < kEigenOneTol) return false;
  }
  return true;
}

}  // namespace sft::spectral
