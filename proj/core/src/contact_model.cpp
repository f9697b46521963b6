#include "sft/contact_model.hpp"

#include <cmath>
#include <numbers>

#include "sft/error.hpp"
#include "sft/linalg.hpp"

namespace sft::spectral {

using std::numbers::pi;

namespace {

Vec4 grad_h(const EllipsoidModel& m, const Vec4& p) {
  const double c1 = 2 * pi / m.a1, c2 = 2 * pi / m.a2;
  return {c1 * p(0), c1 * p(1), c2 * p(2), c2 * p(3)};
}

Vec4 j0(const Vec4& v) { return {-v(1), v(0), -v(3), v(2)}; }

}  // namespace

void validate(const EllipsoidModel& m) {
  if (!(m.a1 > 0) || !(m.a2 > 0)) throw ValidationError("ellipsoid weights must be positive");
}

double hamiltonian(const EllipsoidModel& m, const Vec4& p) {
  return pi * (p(0) * p(0) + p(1) * p(1)) / m.a1 + pi * (p(2) * p(2) + p(3) * p(3)) / m.a2;
}

double contact_form(const Vec4& p, const Vec4& v) {
  return 0.5 * (p(0) * v(1) - p(1) * v(0) + p(2) * v(3) - p(3) * v(2));
}

double dlambda(const Vec4& u, const Vec4& v) {
  return u(0) * v(1) - u(1) * v(0) + u(2) * v(3) - u(3) * v(2);
}

Vec4 sample_point(const EllipsoidModel& m, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0, 1);
  Vec4 p;
  do {
    p = {n(rng), n(rng), n(rng), n(rng)};
  } while (p.norm() < 1e-3);
  return p / std::sqrt(hamiltonian(m, p));
}

Eigen::Matrix<double, 4, 3> tangent_basis(const EllipsoidModel& m, const Vec4& p) {
  const Vec4 g = grad_h(m, p).normalized();
  Eigen::Matrix4d q = Eigen::Matrix4d::Identity();
  q.col(0) = g;
  // the standard vector least aligned with g keeps the Gram-Schmidt stable
  int skip = 0;
  g.cwiseAbs().maxCoeff(&skip);
  Eigen::Matrix<double, 4, 3> out;
  int col = 0;
  for (int k = 0; k < 4 && col < 3; ++k) {
    if (k == skip) continue;
    Vec4 v = Vec4::Unit(k);
    v -= v.dot(g) * g;
    for (int c = 0; c < col; ++c) v -= v.dot(out.col(c)) * out.col(c);
    v -= v.dot(g) * g;
    out.col(col++) = v.normalized();
  }
  return out;
}

Vec4 reeb_field(const EllipsoidModel& m, const Vec4& p) {
  const Vec4 x = j0(grad_h(m, p));
  return x / contact_form(p, x);
}

std::pair<Vec4, Vec4> xi_frame(const EllipsoidModel& m, const Vec4& p) {
  const auto t = tangent_basis(m, p);
  const Eigen::RowVector3d l{contact_form(p, t.col(0)), contact_form(p, t.col(1)), contact_form(p, t.col(2))};
  // kernel of the 1x3 row l
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(Eigen::Matrix3d(l.replicate(3, 1)), Eigen::ComputeFullV);
  const Vec4 e1 = (t * svd.matrixV().col(1)).normalized();
  Vec4 e2 = t * svd.matrixV().col(2);
  e2 -= e2.dot(e1) * e1;
  e2 /= dlambda(e1, e2);
  return {e1, e2};
}

ShiftFunction tanh_shift(double c) {
  return {[c](double s) { return c * std::tanh(s); },
          [c](double s) {
            const double ch = std::cosh(s);
            return c / (ch * ch);
          }};
}

ShiftFunction constant_shift(double c) {
  return {[c](double) { return c; }, [](double) { return 0.0; }};
}

double omega_phi(const ShiftFunction& f, double s, const Vec4& p, const CylinderVector& u,
                 const CylinderVector& v) {
  const double ds_lambda = u.h * contact_form(p, v.w) - v.h * contact_form(p, u.w);
  return (1 + f.phi(s)) * dlambda(u.w, v.w) + f.dphi(s) * ds_lambda;
}

CylinderVector cylinder_j(const EllipsoidModel& m, const Vec4& p, const CylinderVector& v) {
  const Vec4 r = reeb_field(m, p);
  const double k = contact_form(p, v.w);
  const Vec4 delta = v.w - k * r;
  const auto [e1, e2] = xi_frame(m, p);
  Eigen::Matrix<double, 4, 2> frame;
  frame << e1, e2;
  const Eigen::Vector2d ab = frame.colPivHouseholderQr().solve(delta);
  CylinderVector out;
  out.h = -k;
  out.w = v.h * r + ab(0) * e2 - ab(1) * e1;
  return out;
}

double q_phi(const EllipsoidModel& m, const ShiftFunction& f, double s, const Vec4& p,
             const CylinderVector& v) {
  return omega_phi(f, s, p, v, cylinder_j(m, p, v));
}

ContactReport model_contact_check(const EllipsoidModel& m, const ShiftFunction& f, int points,
                                  std::uint64_t seed) {
  validate(m);
  if (points < 1) throw ValidationError("model check needs at least one point");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0, 1);
  std::uniform_real_distribution<double> us(-2, 2);
  ContactReport rep;
  rep.points = points;
  rep.min_q = std::numeric_limits<double>::infinity();
  for (int i = 0; i < points; ++i) {
    const Vec4 p = sample_point(m, rng);
    const Vec4 r = reeb_field(m, p);
    rep.lambda_residual = std::max(rep.lambda_residual, std::abs(contact_form(p, r) - 1));
    const auto t = tangent_basis(m, p);
    for (int k = 0; k < 3; ++k)
      rep.dlambda_residual = std::max(rep.dlambda_residual, std::abs(dlambda(r, t.col(k))));
    CylinderVector v;
    v.h = n(rng);
    v.w = t * Eigen::Vector3d(n(rng), n(rng), n(rng));
    const double norm = std::sqrt(v.h * v.h + v.w.squaredNorm());
    v.h /= norm;
    v.w /= norm;
    rep.min_q = std::min(rep.min_q, q_phi(m, f, us(rng), p, v));
  }
  return rep;
}

double measure_period(const EllipsoidModel& m, int which, int steps) {
  validate(m);
  if (which != 1 && which != 2) throw ValidationError("orbit selector must be 1 or 2");
  const int c = 2 * (which - 1);
  Vec4 p = Vec4::Zero();
  p(c) = std::sqrt((which == 1 ? m.a1 : m.a2) / pi);
  // the Reeb speed bounds the step: one turn takes about 2 pi / |R| / |p|
  const double h = (which == 1 ? m.a1 : m.a2) / steps;
  auto rk4 = [&](const Vec4& x, double dt) {
    const Vec4 k1 = reeb_field(m, x);
    const Vec4 k2 = reeb_field(m, x + 0.5 * dt * k1);
    const Vec4 k3 = reeb_field(m, x + 0.5 * dt * k2);
    const Vec4 k4 = reeb_field(m, x + dt * k3);
    return Vec4(x + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4));
  };
  auto angle = [c](const Vec4& x) { return std::atan2(x(c + 1), x(c)); };
  double t = 0, lifted = 0;
  for (int guard = 0; guard < 100 * steps; ++guard) {
    const Vec4 next = rk4(p, h);
    const double step = std::remainder(angle(next) - angle(p), 2 * pi);
    if (lifted + step >= 2 * pi) {
      // secant on the sub-step length to land on the full turn
      double lo = 0, hi = h, glo = lifted - 2 * pi, ghi = lifted + step - 2 * pi;
      for (int it = 0; it < 60 && hi - lo > 1e-15; ++it) {
        const double mid = std::clamp(lo - glo * (hi - lo) / (ghi - glo), lo, hi);
        const Vec4 q = rk4(p, mid);
        const double g = lifted + std::remainder(angle(q) - angle(p), 2 * pi) - 2 * pi;
        if (g == 0) return t + mid;
        if (g < 0) lo = mid, glo = g;
        else hi = mid, ghi = g;
        if (std::abs(g) < 1e-15) return t + mid;
      }
      return t + 0.5 * (lo + hi);
    }
    lifted += step;
    p = next;
    t += h;
  }
  throw NumericalError("Reeb orbit did not close");
}

SymplecticPath linearized_return_path(const EllipsoidModel& m, int which, int intervals) {
  validate(m);
  if (which != 1 && which != 2) throw ValidationError("orbit selector must be 1 or 2");
  const double period = measure_period(m, which);
  // Along the orbit lambda(J0 grad H) = H = 1, so the Reeb flow is generated by
  // the linear field J0 grad H; its block on the complementary coordinate
  // is the linearization on xi.
  const int other = which == 1 ? 2 : 0;
  Eigen::Matrix4d g;
  for (int k = 0; k < 4; ++k) g.col(k) = j0(grad_h(m, Vec4::Unit(k)));
  const MatrixXd s = g.block(other, other, 2, 2);
  return flow_path([s](double) { return s; }, 2, period, intervals);
}

}  // namespace sft::spectral
