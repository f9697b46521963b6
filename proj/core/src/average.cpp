#include "sft/average.hpp"

#include <cmath>
#include <numbers>
#include <optional>

#include "sft/error.hpp"

namespace sft::average {

using Eigen::Vector2d;
using Eigen::Vector3d;
using std::numbers::pi;

namespace {

double raw_bump(double s) { return std::abs(s) < 1 ? std::exp(-1 / (1 - s * s)) : 0.0; }

double trapezoid_raw(int intervals) {
  const double h = 2.0 / intervals;
  double sum = 0;
  for (int k = 1; k < intervals; ++k) sum += raw_bump(-1 + k * h);
  return sum * h;  // endpoints vanish
}

}  // namespace

BumpWeight::BumpWeight() : c_(1 / trapezoid_raw(20000)) {}

double BumpWeight::operator()(double s) const { return c_ * raw_bump(s); }

double BumpWeight::peak() const { return c_ * std::exp(-1.0); }

double BumpWeight::integral(int intervals) const { return c_ * trapezoid_raw(intervals); }

double BumpWeight::sample(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> u(-1, 1), a(0, 1);
  for (;;) {
    const double s = u(rng);
    if (a(rng) * std::exp(-1.0) <= raw_bump(s)) return s;
  }
}

double TauForm::operator()(std::span<const double> s) const {
  if (static_cast<int>(s.size()) != n) throw ValidationError("tau^N evaluated at a point of the wrong dimension");
  double v = 1;
  for (double x : s) v *= beta(x);
  return v;
}

std::vector<double> TauForm::sample(std::mt19937_64& rng) const {
  std::vector<double> s(n);
  for (auto& x : s) x = beta.sample(rng);
  return s;
}

std::string to_string(Base b) { return b == Base::sphere ? "sphere" : "torus"; }
std::string to_string(Bundle b) { return b == Bundle::tangent ? "tangent" : "trivial"; }

Base parse_base(const std::string& s) {
  if (s == "sphere" || s == "S2") return Base::sphere;
  if (s == "torus" || s == "T2") return Base::torus;
  throw ValidationError("unknown base manifold '" + s + "' (sphere, torus)");
}

Bundle parse_bundle(const std::string& s) {
  if (s == "tangent") return Bundle::tangent;
  if (s == "trivial") return Bundle::trivial;
  throw ValidationError("unknown bundle '" + s + "' (tangent, trivial)");
}

void validate(const BundleModel& m) {
  if (m.effective_parameters < 0) throw ValidationError("effective_parameters must be nonnegative");
  if (!(m.amplitude >= 0) || !std::isfinite(m.amplitude)) throw ValidationError("amplitude must be finite and nonnegative");
  if (m.orientation != 1 && m.orientation != -1) throw ValidationError("orientation must be +1 or -1");
}

Vector3d chart_to_sphere(int chart, const Vector2d& u) {
  const Vector2d w = chart == 0 ? Vector2d(u(0), -u(1)) : u;
  const double r2 = w.squaredNorm();
  const double z = chart == 0 ? (r2 - 1) / (r2 + 1) : (1 - r2) / (1 + r2);
  return {2 * w(0) / (1 + r2), 2 * w(1) / (1 + r2), z};
}

Vector2d sphere_to_chart(int chart, const Vector3d& p) {
  if (chart == 0) return Vector2d(p(0), -p(1)) / (1 - p(2));
  return Vector2d(p(0), p(1)) / (1 + p(2));
}

SectionEvaluator::SectionEvaluator(const BundleModel& m, std::span<const double> s) : m_(m) {
  validate(m);
  const int eff = std::min<int>(m.effective_parameters, static_cast<int>(s.size()));
  for (int j = 0; j < eff; ++j) coeff_.push_back(m.amplitude * s[j]);
  std::mt19937_64 rng(m.family_seed);
  std::normal_distribution<double> n(0, 1);
  std::uniform_real_distribution<double> un(-1, 1);
  for (int j = 0; j < eff; ++j) {
    if (m.base == Base::sphere && m.bundle == Bundle::tangent) {
      tangent_dirs_.push_back(Vector3d(n(rng), n(rng), n(rng)).normalized());
    } else if (m.base == Base::sphere) {
      Eigen::Matrix<double, 2, 3> a;
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 3; ++c) a(r, c) = un(rng);
      linear_maps_.push_back(a);
    } else {
      torus_modes_.push_back({un(rng), un(rng), un(rng), un(rng)});
      torus_modes2_.push_back({un(rng), un(rng), un(rng), un(rng)});
    }
  }
}

int SectionEvaluator::charts() const { return m_.base == Base::sphere ? 2 : 1; }

bool SectionEvaluator::owns(int chart, const Vector2d& u) const {
  if (m_.base == Base::torus) return true;
  const double z = chart_to_sphere(chart, u)(2);
  return chart == 0 ? z <= 0 : z > 0;
}

Vector3d SectionEvaluator::ambient(const Vector3d& p) const {
  Vector3d f = Vector3d(-p(1), p(0), 0);
  for (std::size_t j = 0; j < tangent_dirs_.size(); ++j) {
    const Vector3d& a = tangent_dirs_[j];
    f += coeff_[j] * (a - a.dot(p) * p);
  }
  return f;
}

Vector2d SectionEvaluator::operator()(int chart, const Vector2d& u) const {
  if (m_.base == Base::torus) {
    const double s1 = std::sin(2 * pi * u(0)), c1 = std::cos(2 * pi * u(0));
    const double s2 = std::sin(2 * pi * u(1)), c2 = std::cos(2 * pi * u(1));
    Vector2d f = m_.bundle == Bundle::tangent ? Vector2d(s1, s2) : Vector2d(1, 0);
    const Eigen::Vector4d basis(s1, c1, s2, c2);
    for (std::size_t j = 0; j < coeff_.size(); ++j)
      f += coeff_[j] * Vector2d(torus_modes_[j].dot(basis), torus_modes2_[j].dot(basis));
    return f;
  }
  const Vector3d p = chart_to_sphere(chart, u);
  if (m_.bundle == Bundle::trivial) {
    Vector2d f(1, 0);
    for (std::size_t j = 0; j < coeff_.size(); ++j) f += coeff_[j] * (linear_maps_[j] * p);
    return f;
  }
  const Vector3d f = ambient(p);
  Eigen::Matrix<double, 2, 3> d;
  if (chart == 0) {
    const double q = 1 - p(2);
    d << 1 / q, 0, p(0) / (q * q), 0, -1 / q, -p(1) / (q * q);
  } else {
    const double q = 1 + p(2);
    d << 1 / q, 0, -p(0) / (q * q), 0, 1 / q, -p(1) / (q * q);
  }
  return d * f;
}

namespace {

using Field = std::function<Vector2d(const Vector2d&)>;

Eigen::Matrix2d jacobian(const Field& f, const Vector2d& u, double h) {
  Eigen::Matrix2d j;
  for (int k = 0; k < 2; ++k) {
    Vector2d e = Vector2d::Zero();
    e(k) = h;
    j.col(k) = (f(u + e) - f(u - e)) / (2 * h);
  }
  return j;
}

// Damped Newton; falls back to least squares when the Jacobian is singular.
std::optional<Vector2d> newton(const Field& f, Vector2d u, double limit) {
  Vector2d v = f(u);
  for (int it = 0; it < 100; ++it) {
    const double r = v.norm();
    if (r < 1e-13) return u;
    const Eigen::Matrix2d j = jacobian(f, u, 1e-7);
    const Vector2d step = j.completeOrthogonalDecomposition().solve(v);
    double lambda = 1;
    bool moved = false;
    for (int ls = 0; ls < 30; ++ls, lambda *= 0.5) {
      const Vector2d cand = u - lambda * step;
      if (cand.cwiseAbs().maxCoeff() > limit) continue;
      const Vector2d fv = f(cand);
      if (fv.norm() < r) {
        u = cand;
        v = fv;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  if (v.norm() < 1e-10) return u;
  return std::nullopt;
}

double wrap(double a) { return std::remainder(a, 2 * pi); }

struct Grid {
  double lo, hi;
  int n;
  bool periodic;
  double node(int k) const { return periodic ? (k + 0.37) / n : lo + (hi - lo) * k / (n - 1); }
  int cells() const { return periodic ? n : n - 1; }
};

// Zeros of one chart field: seeds from cell windings and local minima.
struct ChartZeros {
  std::vector<Vector2d> zeros;
  bool newton_failed = false;
};

ChartZeros find_chart_zeros(const Field& f, const Grid& g) {
  const int n = g.n;
  std::vector<Vector2d> val(n * n);
  std::vector<double> mag(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      val[a * n + b] = f({g.node(a), g.node(b)});
      mag[a * n + b] = val[a * n + b].norm();
    }
  auto at = [&](int a, int b) -> const Vector2d& { return val[((a % n) * n) + (b % n)]; };
  std::vector<std::pair<Vector2d, bool>> seeds;  // (point, from a winding cell)
  const double h = g.periodic ? 1.0 / n : (g.hi - g.lo) / (n - 1);
  for (int a = 0; a < g.cells(); ++a)
    for (int b = 0; b < g.cells(); ++b) {
      const Vector2d c[4] = {at(a, b), at(a + 1, b), at(a + 1, b + 1), at(a, b + 1)};
      double w = 0;
      for (int k = 0; k < 4; ++k)
        w += wrap(std::atan2(c[(k + 1) % 4](1), c[(k + 1) % 4](0)) - std::atan2(c[k](1), c[k](0)));
      if (std::lround(w / (2 * pi)) != 0) seeds.push_back({{g.node(a) + h / 2, g.node(b) + h / 2}, true});
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!g.periodic && (a == 0 || b == 0 || a == n - 1 || b == n - 1)) continue;
      bool minimum = true;
      for (int da = -1; da <= 1 && minimum; ++da)
        for (int db = -1; db <= 1; ++db) {
          if (!da && !db) continue;
          const int aa = (a + da + n) % n, bb = (b + db + n) % n;
          if (mag[aa * n + bb] < mag[a * n + b]) {
            minimum = false;
            break;
          }
        }
      if (minimum) seeds.push_back({{g.node(a), g.node(b)}, false});
    }

  ChartZeros out;
  const double limit = g.periodic ? 1e6 : 4 * std::max(std::abs(g.lo), std::abs(g.hi));
  for (const auto& [seed, winding] : seeds) {
    auto z = newton(f, seed, limit);
    if (!z) {
      if (winding) out.newton_failed = true;
      continue;
    }
    out.zeros.push_back(*z);
  }
  return out;
}

}  // namespace

ZeroCount signed_zero_count(const BundleModel& m, std::span<const double> s, int grid) {
  if (grid < 8) throw ValidationError("zero-finding grid must have at least 8 nodes per side");
  const SectionEvaluator ev(m, s);
  const bool torus = m.base == Base::torus;
  ZeroCount out;
  std::vector<Vector3d> seen;
  auto key = [&](int chart, const Vector2d& u) -> Vector3d {
    if (torus) {
      const Vector2d w = u.array() - u.array().floor();
      return {w(0), w(1), 0};
    }
    return chart_to_sphere(chart, u);
  };
  auto same = [&](const Vector3d& a, const Vector3d& b) {
    Vector3d d = a - b;
    if (torus) d = d.unaryExpr([](double x) { return x - std::round(x); });
    return d.norm() < 1e-6;
  };
  for (int chart = 0; chart < ev.charts(); ++chart) {
    const Field f = [&](const Vector2d& u) { return ev(chart, u); };
    const Grid g = torus ? Grid{0, 1, grid, true} : Grid{-1.25, 1.25, grid, false};
    const auto found = find_chart_zeros(f, g);
    if (found.newton_failed) {
      out.degenerate = true;
      out.diagnostic = "Newton failed from a cell with nonzero winding number";
    }
    for (const auto& u : found.zeros) {
      if (!ev.owns(chart, u)) continue;
      const Vector3d k = key(chart, u);
      bool dup = false;
      for (const auto& q : seen) dup = dup || same(q, k);
      if (dup) continue;
      seen.push_back(k);
      Zero z;
      z.chart = chart;
      z.u = u;
      z.det = jacobian(f, u, 1e-6).determinant();
      z.sign = (z.det > 0 ? 1 : -1) * m.orientation;
      if (std::abs(z.det) < kDegenerateDet) {
        out.degenerate = true;
        out.diagnostic = "zero with |det| below 1e-6";
      }
      out.signed_count += z.sign;
      out.zeros.push_back(z);
    }
  }
  return out;
}

EulerEstimate averaged_euler(const BundleModel& m, int n, int n_samples, std::uint64_t seed) {
  validate(m);
  if (n < 1) throw ValidationError("parameter dimension N must be >= 1");
  if (n_samples < 100) throw ValidationError("averaged_euler needs at least 100 samples");
  const TauForm tau{n, BumpWeight()};
  // Neumaier-compensated sums of x and x^2
  double sum = 0, comp = 0, sum2 = 0, comp2 = 0;
  auto add = [](double& s, double& c, double x) {
    const double t = s + x;
    c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
    s = t;
  };
  int used = 0, degenerate = 0;
  for (int i = 0; i < n_samples; ++i) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(i));
    const auto s = tau.sample(rng);
    const auto zc = signed_zero_count(m, s);
    if (zc.degenerate) {
      ++degenerate;
      continue;
    }
    ++used;
    add(sum, comp, zc.signed_count);
    add(sum2, comp2, double(zc.signed_count) * zc.signed_count);
  }
  EulerEstimate e;
  e.samples = n_samples;
  e.used = used;
  e.seed = seed;
  e.degenerate_rate = double(degenerate) / n_samples;
  if (e.degenerate_rate > 0.05)
    throw DomainError("averaged_euler aborted: " + std::to_string(degenerate) + " of " +
                      std::to_string(n_samples) + " samples degenerate (limit 5%)");
  const double mean = (sum + comp) / used;
  const double var = used > 1 ? std::max(0.0, ((sum2 + comp2) - used * mean * mean) / (used - 1)) : 0.0;
  e.estimate = mean;
  e.stderr_ = std::sqrt(var / used);
  return e;
}

SubmersionReport submersion_check(const TorusHomotopy& h, const std::vector<double>& t_slices,
                                  const std::vector<std::vector<double>>& s_samples, int grid) {
  if (!h.f) throw ValidationError("homotopy has no evaluator");
  SubmersionReport rep;
  const Grid g{0, 1, grid, true};
  for (const auto& s : s_samples) {
    if (static_cast<int>(s.size()) != h.n) throw ValidationError("parameter sample has the wrong dimension");
    for (double t : t_slices) {
      if (t < 0 || t > 1) throw ValidationError("t-slices must lie in [0,1]");
      const Field f = [&](const Vector2d& u) { return h.f(s, t, u); };
      const auto found = find_chart_zeros(f, g);
      std::vector<Vector2d> distinct;
      for (const auto& u : found.zeros) {
        const Vector2d w = u.array() - u.array().floor();
        bool dup = false;
        for (const auto& q : distinct) {
          const Vector2d d = (w - q).unaryExpr([](double x) { return x - std::round(x); });
          dup = dup || d.norm() < 1e-6;
        }
        if (!dup) distinct.push_back(w);
      }
      for (const auto& u : distinct) {
        ++rep.zeros_checked;
        const double eps = 1e-6;
        Eigen::MatrixXd full(2, h.n + 3);
        std::vector<double> sp(s), sm(s);
        for (int k = 0; k < h.n; ++k) {
          sp[k] = s[k] + eps;
          sm[k] = s[k] - eps;
          full.col(k) = (h.f(sp, t, u) - h.f(sm, t, u)) / (2 * eps);
          sp[k] = sm[k] = s[k];
        }
        full.col(h.n) = (h.f(s, t + eps, u) - h.f(s, t - eps, u)) / (2 * eps);
        full.rightCols(2) = jacobian(f, u, eps);
        Eigen::MatrixXd no_t(2, h.n + 2);
        no_t << full.leftCols(h.n), full.rightCols(2);
        const auto sv_full = Eigen::JacobiSVD<Eigen::MatrixXd>(full).singularValues();
        const auto sv_not = Eigen::JacobiSVD<Eigen::MatrixXd>(no_t).singularValues();
        const double thr = 1e-6 * std::max(1.0, sv_full(0));
        const int rank_full = int((sv_full.array() > thr).count());
        const int rank_not = int((sv_not.array() > thr).count());
        if (rank_full < 2) {
          rep.inconclusive = true;
          rep.diagnostic = "zero set is not cut out transversally; rank estimate inconclusive";
        } else if (rank_not < rank_full) {
          rep.submersive = false;
          ++rep.failures;
          rep.diagnostic = "t-projection is not submersive at a zero (t = " + std::to_string(t) + ")";
        }
      }
    }
  }
  return rep;
}

}  // namespace sft::average
