#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>

#include "sft/error.hpp"
#include "sft/jacobi.hpp"
#include "sft/linalg.hpp"
#include "sft/spectral.hpp"

namespace sft::spectral {

using linalg::cplx;
using linalg::J0;
using std::numbers::pi;

namespace {

double max_abs(const MatrixXd& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

CoefficientLoop CoefficientLoop::from_constant(const MatrixXd& b, int samples) {
  if (b.rows() != b.cols() || b.rows() == 0 || b.rows() % 2)
    throw ValidationError("coefficient matrix must be square of even size");
  CoefficientLoop loop;
  loop.dim = b.rows();
  loop.eval = [b](double) { return b; };
  loop.samples = samples;
  loop.constant = b;
  return loop;
}

CoefficientLoop CoefficientLoop::from_samples(std::vector<MatrixXd> b) {
  if (b.size() < 2) throw ValidationError("sampled coefficient loop needs at least 2 samples");
  const auto dim = b.front().rows();
  if (dim == 0 || dim % 2) throw ValidationError("coefficient matrix must be square of even size");
  for (const auto& s : b)
    if (s.rows() != dim || s.cols() != dim)
      throw ValidationError("coefficient samples have inconsistent shapes");
  const int m = static_cast<int>(b.size());
  // real trigonometric interpolant: B(t) = a_0 + sum_j (a_j cos + b_j sin) 2 pi j t
  std::vector<MatrixXd> ca(m / 2 + 1, MatrixXd::Zero(dim, dim)), cb(m / 2 + 1, MatrixXd::Zero(dim, dim));
  for (int j = 0; j <= m / 2; ++j)
    for (int n = 0; n < m; ++n) {
      const double ang = 2 * pi * j * n / m;
      ca[j] += b[n] * std::cos(ang);
      cb[j] += b[n] * std::sin(ang);
    }
  for (int j = 0; j <= m / 2; ++j) {
    const bool edge = j == 0 || (m % 2 == 0 && j == m / 2);
    const double w = edge ? 1.0 / m : 2.0 / m;
    ca[j] *= w;
    cb[j] *= edge ? 0.0 : w;
  }
  CoefficientLoop loop;
  loop.dim = dim;
  loop.samples = m;
  loop.eval = [ca, cb, dim](double t) {
    MatrixXd out = MatrixXd::Zero(dim, dim);
    for (std::size_t j = 0; j < ca.size(); ++j)
      out += ca[j] * std::cos(2 * pi * j * t) + cb[j] * std::sin(2 * pi * j * t);
    return out;
  };
  loop.sampled = std::move(b);
  return loop;
}

void validate(const CoefficientLoop& loop, double tol) {
  if (loop.dim <= 0 || loop.dim % 2) throw ValidationError("coefficient loop dimension must be even");
  if (loop.samples < 2) throw ValidationError("coefficient loop needs at least 2 samples");
  if (!loop.eval) throw ValidationError("coefficient loop has no evaluator");
  const MatrixXd j = J0(loop.dim);
  for (int n = 0; n < loop.samples; ++n) {
    const double t = double(n) / loop.samples;
    const MatrixXd b = loop(t);
    if (b.rows() != loop.dim || b.cols() != loop.dim)
      throw ValidationError("coefficient loop returned a matrix of the wrong size");
    const MatrixXd s = -j * b;
    const double asym = max_abs(s - s.transpose());
    if (asym > tol * std::max(1.0, max_abs(b)))
      throw ValidationError("-J0 B(t) is not symmetric at t = " + std::to_string(t) +
                            " (defect " + std::to_string(asym) + ")");
  }
}

void validate(const AsymptoticOperator& op) {
  if (op.modes < 1) throw ValidationError("asymptotic operator needs modes K >= 1");
  validate(op.loop);
}

MatrixXcd galerkin_matrix(const AsymptoticOperator& op) {
  validate(op);
  const auto d = op.loop.dim;
  const int k_max = op.modes, m = op.loop.samples;
  const MatrixXd j = J0(d);

  std::vector<MatrixXd> c(m);
  for (int n = 0; n < m; ++n) {
    const MatrixXd s = j * op.loop(double(n) / m);
    c[n] = 0.5 * (s + s.transpose());
  }
  // C_hat_j for 0 <= j <= 2K; coefficients at or beyond Nyquist are dropped
  std::vector<MatrixXcd> chat(2 * k_max + 1, MatrixXcd::Zero(d, d));
  for (int q = 0; q <= 2 * k_max && 2 * q < m; ++q) {
    MatrixXcd acc = MatrixXcd::Zero(d, d);
    for (int n = 0; n < m; ++n) acc += c[n].cast<cplx>() * std::polar(1.0, -2 * pi * q * n / m);
    acc /= double(m);
    for (Eigen::Index r = 0; r < d; ++r)
      for (Eigen::Index s = 0; s < r; ++s) acc(r, s) = acc(s, r);
    if (q == 0) acc = acc.real().cast<cplx>();
    chat[q] = acc;
  }

  const Eigen::Index size = d * (2 * k_max + 1);
  MatrixXcd h = MatrixXcd::Zero(size, size);
  for (int a = 0; a < 2 * k_max + 1; ++a)
    for (int b = a; b < 2 * k_max + 1; ++b)
      h.block(a * d, b * d, d, d) = chat[b - a].conjugate();  // block (k_a, k_b) = C_hat_{k_a - k_b}
  for (int a = 0; a < 2 * k_max + 1; ++a) {
    const double k = a - k_max;
    for (Eigen::Index p = 0; p < d; p += 2) {
      // -2 pi k (i J0) on the (x, y) pair
      h(a * d + p, a * d + p + 1) += cplx(0, 2 * pi * k);
    }
  }
  for (Eigen::Index r = 0; r < size; ++r) {
    h(r, r) = h(r, r).real();
    for (Eigen::Index s = 0; s < r; ++s) h(r, s) = std::conj(h(s, r));
  }
  return h;
}

std::vector<double> spectrum(const AsymptoticOperator& op) {
  const auto res = jacobi_eigen(galerkin_matrix(op));
  return {res.values.data(), res.values.data() + res.values.size()};
}

double SpectralGap::radius() const { return degenerate ? 0.0 : std::min(-lower, upper); }

double SpectralGap::capped_radius() const { return std::min(radius(), 2 * pi); }

SpectralGap spectral_gap(const std::vector<double>& spec, double zero_tol) {
  SpectralGap g;
  bool have_neg = false, have_pos = false;
  for (double l : spec) {
    if (std::abs(l) <= zero_tol) {
      g.degenerate = true;
      g.lower = g.upper = 0;
      return g;
    }
    if (l < 0 && (!have_neg || l > g.lower)) g.lower = l, have_neg = true;
    if (l > 0 && (!have_pos || l < g.upper)) g.upper = l, have_pos = true;
  }
  if (!have_neg) g.lower = -std::numeric_limits<double>::infinity();
  if (!have_pos) g.upper = std::numeric_limits<double>::infinity();
  return g;
}

SpectralGap spectral_gap(const AsymptoticOperator& op) { return spectral_gap(spectrum(op)); }

double empty_orbit_weight() { return pi; }

double weight_selector(const SpectralGap& gap) {
  if (gap.degenerate) throw DomainError("degenerate spectral gap: orbit is not non-degenerate");
  return std::min(kWeightSafety * gap.radius(), kWeightSafety * 2 * pi);
}

std::map<std::string, double> weight_selector(const std::map<std::string, SpectralGap>& gaps) {
  std::map<std::string, double> out;
  for (const auto& [label, g] : gaps) {
    if (g.degenerate) throw DomainError("orbit '" + label + "' has a degenerate spectral gap");
    out[label] = weight_selector(g);
  }
  return out;
}

std::vector<double> weight_sequence(double delta0, double cap, int count) {
  if (count < 0) throw ValidationError("weight sequence length must be nonnegative");
  if (!(delta0 > 0) || !(delta0 < cap))
    throw ValidationError("weight sequence needs 0 < delta_0 < cap");
  std::vector<double> out;
  double d = delta0;
  for (int i = 0; i < count; ++i) {
    if (!out.empty() && !(d > out.back()))
      throw NumericalError("weight sequence length exceeds floating-point resolution below cap");
    out.push_back(d);
    d = cap - 0.5 * (cap - d);
  }
  return out;
}

std::pair<MatrixXd, MatrixXd> UnitaryLoop::eval(double t) const {
  const auto n = static_cast<Eigen::Index>(factors.size());
  std::vector<MatrixXcd> e(n), de(n);
  for (Eigen::Index q = 0; q < n; ++q) {
    const auto& f = factors[q];
    double v = f.slope * t, dv = f.slope;
    for (std::size_t k = 0; k < f.cos_coeffs.size(); ++k) {
      const double w = 2 * pi * (k + 1);
      v += f.cos_coeffs[k] * std::cos(w * t);
      dv -= f.cos_coeffs[k] * w * std::sin(w * t);
    }
    for (std::size_t k = 0; k < f.sin_coeffs.size(); ++k) {
      const double w = 2 * pi * (k + 1);
      v += f.sin_coeffs[k] * std::sin(w * t);
      dv += f.sin_coeffs[k] * w * std::cos(w * t);
    }
    e[q] = (f.generator * v).exp();
    de[q] = f.generator * dv * e[q];
  }
  MatrixXcd u = MatrixXcd::Identity(m, m), du = MatrixXcd::Zero(m, m);
  for (Eigen::Index q = 0; q < n; ++q) {
    du = du * e[q] + u * de[q];
    u = u * e[q];
  }
  return {linalg::to_real(u), linalg::to_real(du)};
}

void validate(const UnitaryLoop& u) {
  if (u.m < 1) throw ValidationError("unitary loop needs m >= 1");
  for (const auto& f : u.factors) {
    if (f.generator.rows() != u.m || f.generator.cols() != u.m)
      throw ValidationError("unitary loop generator has the wrong size");
    const double scale = std::max(1.0, f.generator.cwiseAbs().maxCoeff());
    if ((f.generator + f.generator.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
      throw ValidationError("unitary loop generator is not skew-Hermitian (U would not be unitary)");
  }
  const auto [u0, d0] = u.eval(0.0);
  const auto [u1, d1] = u.eval(1.0);
  if ((u0 - u1).cwiseAbs().maxCoeff() > 1e-9) throw ValidationError("unitary loop does not close");
}

UnitaryLoop winding_loop(Eigen::Index m, int w) {
  UnitaryLoop u;
  u.m = m;
  u.factors.push_back({MatrixXcd::Identity(m, m) * cplx(0, 2 * pi * w), 1.0, {}, {}});
  return u;
}

AsymptoticOperator conjugate(const AsymptoticOperator& op, const UnitaryLoop& u) {
  validate(op);
  validate(u);
  if (2 * u.m != op.loop.dim) throw ValidationError("unitary loop size does not match operator");
  AsymptoticOperator out = op;
  auto base = op.loop.eval;
  out.loop.eval = [base, u](double t) {
    const auto [uu, du] = u.eval(t);
    const MatrixXd inv = uu.transpose();
    return MatrixXd(uu * base(t) * inv + du * inv);
  };
  out.loop.constant.reset();
  out.loop.sampled.clear();
  for (int n = 0; n < out.loop.samples; ++n) out.loop.sampled.push_back(out.loop(double(n) / out.loop.samples));
  return out;
}

ConjugationReport conjugation_invariance_check(const AsymptoticOperator& op, const UnitaryLoop& u,
                                               double tol) {
  const auto s1 = spectrum(op);
  const auto s2 = spectrum(conjugate(op, u));
  const double window = pi * op.modes;
  // window [lo, hi) in s1, shrunk so that its ends do not split a cluster
  std::size_t lo = 0, hi = s1.size();
  while (lo < hi && s1[lo] < -window) ++lo;
  while (hi > lo && s1[hi - 1] > window) --hi;
  const double sep = 1e-3;
  while (lo < hi && lo > 0 && s1[lo] - s1[lo - 1] < sep) ++lo;
  while (hi > lo && hi < s1.size() && s1[hi] - s1[hi - 1] < sep) --hi;

  ConjugationReport rep;
  if (lo >= hi) return rep;
  const auto start = std::lower_bound(s2.begin(), s2.end(), s1[lo] - sep / 2);
  const auto offset = static_cast<std::size_t>(start - s2.begin());
  if (offset + (hi - lo) > s2.size()) return rep;
  for (std::size_t i = lo; i < hi; ++i)
    rep.max_difference = std::max(rep.max_difference, std::abs(s1[i] - s2[offset + i - lo]));
  rep.compared = hi - lo;
  rep.ok = rep.max_difference <= tol;
  return rep;
}

}  // namespace sft::spectral
