#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace sft::glue {

/// Reduce an angle measured in full turns to [0, 1).
double reduce_turn(double turns);

/// Signed distance between two angles on the circle, in turns, in [-1/2, 1/2).
double turn_distance(double a, double b);

enum class ProfileKind { exponential, classical };

/// Decreasing bijection converting a modulus |a| into a neck length R.
///   exponential: r -> e^{1/r} - e     on (0, 1]
///   classical:   r -> -(1/2pi) ln r   on (0, 1)
class GluingProfile {
 public:
  explicit GluingProfile(ProfileKind kind = ProfileKind::exponential) : kind_(kind) {}
  static GluingProfile exponential() { return GluingProfile(ProfileKind::exponential); }
  static GluingProfile classical() { return GluingProfile(ProfileKind::classical); }

  ProfileKind kind() const { return kind_; }
  double operator()(double r) const;
  double inverse(double R) const;

 private:
  ProfileKind kind_;
};

std::optional<ProfileKind> parse_profile_kind(const std::string& s);

/// Complex gluing parameter in polar form; angle in turns, reduced mod 1.
struct GluingParameter {
  double modulus = 0.0;
  double angle = 0.0;

  bool is_zero() const { return modulus == 0.0; }
  friend bool operator==(const GluingParameter&, const GluingParameter&) = default;
};

inline constexpr double kMaxModulus = 0.25;

/// Throws ValidationError unless |a| lies in [0, 1/4).
void validate_admissible_modulus(const GluingParameter& a);

/// Parses "0.5@0.3333" (modulus@turns) or a bare modulus.
GluingParameter parse_parameter(const std::string& text);

/// The glued neck Z_a: charts [0,R]xS^1 and [-R,0]xS^1 with s = s' + R,
/// t = t' + theta.
struct GluedNeck {
  double length = 0.0;  // R
  double angle = 0.0;   // theta, turns

  std::pair<double, double> to_negative_chart(double s, double t) const;
  std::pair<double, double> to_positive_chart(double s_prime, double t_prime) const;
};

/// Returns nullopt for a = 0 (the unglued nodal case). The modulus must lie
/// in the profile's domain.
std::optional<GluedNeck> glue_neck(const GluingParameter& a, const GluingProfile& p);

/// Compares pi_y^a o (pi_x^a)^{-1} with R_theta o pi_y^{a'} o (pi_x^{a'})^{-1}
/// on a sample grid. theta defaults to arg(a') - arg(a). Throws DomainError
/// when the moduli differ or vanish.
bool neck_rotation_identity_check(const GluingParameter& a, const GluingParameter& a_prime,
                                  const GluingProfile& p, std::optional<double> theta = {},
                                  double tolerance = 1e-12);

/// Smooth cutoff: 1 on (-inf,-1], 0 on [1,inf), strictly decreasing between,
/// beta(s) + beta(-s) = 1.
class CutoffFunction {
 public:
  double operator()(double s) const;
};

// ---------------------------------------------------------------------------
// Sampled maps on cylinder windows

/// Values of u: [s_min, s_max] x S^1 -> R^N on a uniform grid. The t-grid is
/// periodic: t_j = j / t_samples. Storage is row-major [s][t][component].
struct SampledNeckMap {
  double s_min = 0.0;
  double s_max = 1.0;
  std::size_t r_samples = 2;
  std::size_t t_samples = 2;
  std::size_t target_dim = 1;
  std::vector<double> values;
  /// u(x) for the unglued case, when known.
  std::optional<std::vector<double>> nodal_value;

  void validate() const;
  double s_at(std::size_t i) const;
  double t_at(std::size_t j) const { return static_cast<double>(j) / static_cast<double>(t_samples); }
  double& at(std::size_t i, std::size_t j, std::size_t k) {
    return values[(i * t_samples + j) * target_dim + k];
  }
  double at(std::size_t i, std::size_t j, std::size_t k) const {
    return values[(i * t_samples + j) * target_dim + k];
  }
  /// Linear in s, periodic linear in t. s outside the window is an error.
  std::vector<double> evaluate(double s, double t) const;

  friend bool operator==(const SampledNeckMap&, const SampledNeckMap&) = default;
};

template <class F>
SampledNeckMap sample_map(double s_min, double s_max, std::size_t r_samples,
                          std::size_t t_samples, std::size_t target_dim, F&& f) {
  SampledNeckMap u{s_min, s_max, r_samples, t_samples, target_dim,
                   std::vector<double>(r_samples * t_samples * target_dim), std::nullopt};
  for (std::size_t i = 0; i < r_samples; ++i)
    for (std::size_t j = 0; j < t_samples; ++j) {
      const std::vector<double> v = f(u.s_at(i), u.t_at(j));
      for (std::size_t k = 0; k < target_dim; ++k) u.at(i, j, k) = v[k];
    }
  return u;
}

struct UngluedPair {
  SampledNeckMap positive;
  SampledNeckMap negative;
};

/// Map gluing on the neck [0,R]xS^1:
///   beta(|s| - R/2) u+(s,t) + beta(|s'| - R/2) u-(s',t'),  s' = s - R, t' = t - theta.
/// u+ must cover [0,R], u- must cover [-R,0]. The output uses the s/t
/// resolution of u+. For a = 0 the pair is returned unchanged.
std::variant<SampledNeckMap, UngluedPair> plus_glue(const SampledNeckMap& u_plus,
                                                    const SampledNeckMap& u_minus,
                                                    const GluingParameter& a,
                                                    const GluingProfile& p,
                                                    const CutoffFunction& beta = {});

enum class Chart { positive, negative };

/// Average of u over the middle loop of the neck, by periodic trapezoidal
/// quadrature. `chart` picks the coordinates the loop is traversed in. For
/// a = 0 the nodal value is returned (u.nodal_value, or the far-end loop
/// average of the positive half-cylinder when none is recorded).
std::vector<double> middle_loop_average(const SampledNeckMap& u, const GluingParameter& a,
                                        const GluingProfile& p, Chart chart = Chart::positive);

// ---------------------------------------------------------------------------
// Penalizing weights

/// Real number or +infinity, carried explicitly.
class ExtendedReal {
 public:
  static ExtendedReal infinity() { return ExtendedReal(true, 0.0); }
  static ExtendedReal finite(double v) { return ExtendedReal(false, v); }

  bool is_infinite() const { return infinite_; }
  /// Throws DomainError when infinite.
  double value() const;

  friend ExtendedReal min(const ExtendedReal& a, const ExtendedReal& b);
  friend ExtendedReal operator*(const ExtendedReal& a, const ExtendedReal& b);
  friend bool operator==(const ExtendedReal&, const ExtendedReal&) = default;
  friend bool operator<(const ExtendedReal& a, const ExtendedReal& b);

 private:
  ExtendedReal(bool inf, double v) : infinite_(inf), value_(v) {}
  bool infinite_;
  double value_;
};

enum class RegionKind {
  core,
  unglued_trivial_cylinder,
  unglued_nodal_disk,
  glued_nodal_neck,
  outer_puncture_disk,
  unglued_puncture_pair,
  glued_puncture_pair,
  trivial_chain_closed,
  trivial_chain_negative_cap,
  trivial_chain_positive_cap,
  trivial_chain_two_caps,
};

std::optional<RegionKind> parse_region_kind(const std::string& s);

struct NeckWeightConfig {
  RegionKind region = RegionKind::core;
  double s = 0.0;
  double length = 0.0;  // R, used by the glued cases
  double delta = 1.0;   // delta_1 > 0
};

ExtendedReal neck_weight(const NeckWeightConfig& config);

}  // namespace sft::glue
