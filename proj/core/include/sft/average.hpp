#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace sft::average {

/// beta(s) = c exp(-1 / (1 - s^2)) on (-1, 1), zero outside; c makes the
/// integral 1.
class BumpWeight {
 public:
  BumpWeight();
  double operator()(double s) const;
  double normalization() const { return c_; }
  double peak() const;  // beta(0)
  /// Trapezoid integral over [-1, 1] with `intervals` cells.
  double integral(int intervals = 20000) const;
  /// One draw from the density beta by rejection from the uniform law.
  double sample(std::mt19937_64& rng) const;

 private:
  double c_;
};

/// tau^N = beta(s_1) ... beta(s_N) ds_1 ... ds_N.
struct TauForm {
  int n = 1;
  BumpWeight beta;
  double operator()(std::span<const double> s) const;
  std::vector<double> sample(std::mt19937_64& rng) const;
};

enum class Base { sphere, torus };
enum class Bundle { tangent, trivial };

std::string to_string(Base b);
std::string to_string(Bundle b);
Base parse_base(const std::string& s);
Bundle parse_bundle(const std::string& s);

inline constexpr std::uint64_t kDefaultFamilySeed = 0x5eedf00dULL;

/// Rank-2 bundle over a surface with section f~(s, .) = f + amplitude *
/// sum_{j < effective} s_j sigma_j. Base sections: rotation field e3 x p on
/// TS^2, (1, 0) on trivial bundles, (sin 2 pi u1, sin 2 pi u2) on TT^2. The
/// sigma_j are drawn once from `family_seed`.
struct BundleModel {
  Base base = Base::sphere;
  Bundle bundle = Bundle::tangent;
  int effective_parameters = 2;
  double amplitude = 0.3;
  std::uint64_t family_seed = kDefaultFamilySeed;
  int orientation = 1;  // +1 or -1; flips every zero's sign
};

void validate(const BundleModel& m);

/// Sphere charts: chart 0 is u = (x, -y) / (1 - z) owning |u| <= 1 (south),
/// chart 1 is u = (x, y) / (1 + z) owning |u| < 1 (north). Both are
/// orientation-positive for the outward normal. The torus has one chart
/// [0,1)^2.
Eigen::Vector3d chart_to_sphere(int chart, const Eigen::Vector2d& u);
Eigen::Vector2d sphere_to_chart(int chart, const Eigen::Vector3d& p);

/// The section in chart coordinates: for tangent bundles the chart push-
/// forward of f~, for trivial bundles f~ itself.
class SectionEvaluator {
 public:
  SectionEvaluator(const BundleModel& m, std::span<const double> s);
  Eigen::Vector2d operator()(int chart, const Eigen::Vector2d& u) const;
  int charts() const;
  bool owns(int chart, const Eigen::Vector2d& u) const;

 private:
  Eigen::Vector3d ambient(const Eigen::Vector3d& p) const;  // sphere models
  BundleModel m_;
  std::vector<double> coeff_;  // amplitude * s_j, effective ones only
  std::vector<Eigen::Vector3d> tangent_dirs_;
  std::vector<Eigen::Matrix<double, 2, 3>> linear_maps_;
  std::vector<Eigen::Vector4d> torus_modes_;  // rows of sin/cos coefficients
  std::vector<Eigen::Vector4d> torus_modes2_;
};

struct Zero {
  int chart = 0;
  Eigen::Vector2d u;
  double det = 0;
  int sign = 0;
};

struct ZeroCount {
  int signed_count = 0;
  std::vector<Zero> zeros;
  bool degenerate = false;
  std::string diagnostic;
};

inline constexpr double kDegenerateDet = 1e-6;

/// Zeros by cell winding numbers and local minima of |f| on a grid,
/// refined by damped Newton, deduplicated in the ambient space.
ZeroCount signed_zero_count(const BundleModel& m, std::span<const double> s, int grid = 40);

struct EulerEstimate {
  double estimate = 0;
  double stderr_ = 0;
  double degenerate_rate = 0;
  int samples = 0;      // requested
  int used = 0;         // non-degenerate
  std::uint64_t seed = 0;
};

/// Monte Carlo mean of signed_zero_count over s ~ tau^N. Sample i uses
/// mt19937_64(seed + i). Throws DomainError if more than 5% of samples are
/// degenerate.
EulerEstimate averaged_euler(const BundleModel& m, int n, int n_samples, std::uint64_t seed);

/// Family over I^N x [0,1] x T^2 (flat periodic chart).
struct TorusHomotopy {
  int n = 1;
  std::function<Eigen::Vector2d(std::span<const double> s, double t, const Eigen::Vector2d& u)> f;
};

struct SubmersionReport {
  bool submersive = true;
  bool inconclusive = false;
  int zeros_checked = 0;
  int failures = 0;
  std::string diagnostic;
};

/// At the zeros of f(s, t, .) for each given (s, t), the t-projection
/// restricted to the zero set is a submersion iff rank [D_s | D_u] equals
/// rank [D_s | D_t | D_u] = 2 (SVD threshold 1e-6). A full rank below 2 is
/// reported as inconclusive.
SubmersionReport submersion_check(const TorusHomotopy& h, const std::vector<double>& t_slices,
                                  const std::vector<std::vector<double>>& s_samples, int grid = 40);

}  // namespace sft::average
