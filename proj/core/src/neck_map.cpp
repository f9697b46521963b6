#include <algorithm>
#include <cmath>

#include "sft/error.hpp"
#include "sft/glue.hpp"

namespace sft::glue {
namespace {

constexpr double kWindowSlack = 1e-12;
// Grid nodes reproduce the stored samples bit for bit.
constexpr double kNodeSnap = 1e-9;

std::vector<double> loop_average(const SampledNeckMap& u, double s, double t_offset) {
  std::vector<double> avg(u.target_dim, 0.0);
  for (std::size_t j = 0; j < u.t_samples; ++j) {
    const auto v = u.evaluate(s, u.t_at(j) + t_offset);
    for (std::size_t k = 0; k < u.target_dim; ++k) avg[k] += v[k];
  }
  for (auto& x : avg) x /= static_cast<double>(u.t_samples);
  return avg;
}

}  // namespace

void SampledNeckMap::validate() const {
  if (r_samples < 2 || t_samples < 2) throw ValidationError("neck map grid sizes must be >= 2");
  if (target_dim < 1) throw ValidationError("neck map target_dim must be >= 1");
  if (!(s_max > s_min)) throw ValidationError("neck map needs s_max > s_min");
  if (values.size() != r_samples * t_samples * target_dim)
    throw ValidationError("neck map values size != r_samples * t_samples * target_dim");
  for (double v : values)
    if (!std::isfinite(v)) throw ValidationError("neck map values must be finite");
  if (nodal_value && nodal_value->size() != target_dim)
    throw ValidationError("neck map nodal_value has the wrong dimension");
}

double SampledNeckMap::s_at(std::size_t i) const {
  if (i + 1 == r_samples) return s_max;
  return s_min + (s_max - s_min) * static_cast<double>(i) / static_cast<double>(r_samples - 1);
}

std::vector<double> SampledNeckMap::evaluate(double s, double t) const {
  const double span = s_max - s_min;
  if (s < s_min - kWindowSlack * std::max(1.0, span) ||
      s > s_max + kWindowSlack * std::max(1.0, span))
    throw DomainError("neck map evaluated outside its s-window");
  double x = (s - s_min) / span * static_cast<double>(r_samples - 1);
  x = std::clamp(x, 0.0, static_cast<double>(r_samples - 1));
  if (std::abs(x - std::round(x)) < kNodeSnap) x = std::round(x);
  auto i0 = std::min(static_cast<std::size_t>(x), r_samples - 2);
  const double alpha = x - static_cast<double>(i0);

  double y = reduce_turn(t) * static_cast<double>(t_samples);
  if (std::abs(y - std::round(y)) < kNodeSnap) y = std::round(y);
  auto j0 = static_cast<std::size_t>(y) % t_samples;
  const double beta = y - std::floor(y);
  const auto j1 = (j0 + 1) % t_samples;

  std::vector<double> out(target_dim);
  for (std::size_t k = 0; k < target_dim; ++k) {
    const double lo = (1.0 - beta) * at(i0, j0, k) + beta * at(i0, j1, k);
    const double hi = (1.0 - beta) * at(i0 + 1, j0, k) + beta * at(i0 + 1, j1, k);
    out[k] = (1.0 - alpha) * lo + alpha * hi;
  }
  return out;
}

std::variant<SampledNeckMap, UngluedPair> plus_glue(const SampledNeckMap& u_plus,
                                                    const SampledNeckMap& u_minus,
                                                    const GluingParameter& a,
                                                    const GluingProfile& p,
                                                    const CutoffFunction& beta) {
  u_plus.validate();
  u_minus.validate();
  if (u_plus.target_dim != u_minus.target_dim)
    throw ValidationError("plus_glue: target dimensions of u+ and u- differ");
  const auto neck = glue_neck(a, p);
  if (!neck) return UngluedPair{u_plus, u_minus};

  const double R = neck->length;
  const double slack = kWindowSlack * std::max(1.0, R);
  if (u_plus.s_min > slack || u_plus.s_max < R - slack)
    throw ValidationError("plus_glue: u+ window must cover [0, R]");
  if (u_minus.s_min > -R + slack || u_minus.s_max < -slack)
    throw ValidationError("plus_glue: u- window must cover [-R, 0]");

  return sample_map(0.0, R, u_plus.r_samples, u_plus.t_samples, u_plus.target_dim,
                    [&](double s, double t) {
                      const auto [sp, tp] = neck->to_negative_chart(s, t);
                      const double wp = beta(std::abs(s) - R / 2);
                      const double wm = beta(std::abs(sp) - R / 2);
                      auto up = u_plus.evaluate(s, t);
                      const auto um = u_minus.evaluate(sp, tp);
                      for (std::size_t k = 0; k < up.size(); ++k) up[k] = wp * up[k] + wm * um[k];
                      return up;
                    });
}

std::vector<double> middle_loop_average(const SampledNeckMap& u, const GluingParameter& a,
                                        const GluingProfile& p, Chart chart) {
  u.validate();
  const auto neck = glue_neck(a, p);
  if (!neck) {
    if (u.nodal_value) return *u.nodal_value;
    return loop_average(u, u.s_max, 0.0);
  }
  if (chart == Chart::positive) return loop_average(u, neck->length / 2, 0.0);
  // loop s' = -R/2 in the negative chart, read back through s = s' + R, t = t' + theta
  const auto [s, t0] = neck->to_positive_chart(-neck->length / 2, 0.0);
  return loop_average(u, s, t0);
}

}  // namespace sft::glue
