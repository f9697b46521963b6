#include "sft/glue.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sft/error.hpp"

namespace sft::glue {

using std::numbers::e;
using std::numbers::pi;

double reduce_turn(double turns) {
  double r = turns - std::floor(turns);
  return r >= 1.0 ? 0.0 : r;
}

double turn_distance(double a, double b) {
  double d = reduce_turn(a - b);
  return d >= 0.5 ? d - 1.0 : d;
}

double GluingProfile::operator()(double r) const {
  if (!std::isfinite(r) || r <= 0.0) throw DomainError("gluing profile needs r > 0");
  switch (kind_) {
    case ProfileKind::exponential:
      if (r > 1.0) throw DomainError("exponential gluing profile is defined on (0, 1]");
      return std::exp(1.0 / r) - e;
    case ProfileKind::classical:
      if (r >= 1.0) throw DomainError("classical gluing profile is defined on (0, 1)");
      return -std::log(r) / (2.0 * pi);
  }
  return 0.0;
}

double GluingProfile::inverse(double R) const {
  if (!(R >= 0.0)) throw DomainError("gluing profile inverse needs R >= 0");
  switch (kind_) {
    case ProfileKind::exponential:
      return 1.0 / std::log(R + e);
    case ProfileKind::classical:
      return std::exp(-2.0 * pi * R);
  }
  return 0.0;
}

std::optional<ProfileKind> parse_profile_kind(const std::string& s) {
  if (s == "exp" || s == "exponential") return ProfileKind::exponential;
  if (s == "classical" || s == "log") return ProfileKind::classical;
  return std::nullopt;
}

void validate_admissible_modulus(const GluingParameter& a) {
  if (!(a.modulus >= 0.0 && a.modulus < kMaxModulus) || !std::isfinite(a.angle))
    throw ValidationError("gluing parameter modulus must lie in [0, 1/4)");
}

GluingParameter parse_parameter(const std::string& text) {
  auto at = text.find('@');
  try {
    std::size_t used = 0;
    GluingParameter a;
    a.modulus = std::stod(text.substr(0, at), &used);
    if (at == std::string::npos) {
      if (used != text.size()) throw std::invalid_argument(text);
    } else {
      a.angle = reduce_turn(std::stod(text.substr(at + 1)));
    }
    if (a.modulus < 0.0) throw ValidationError("gluing parameter modulus must be >= 0");
    return a;
  } catch (const std::logic_error&) {
    throw ValidationError("cannot parse gluing parameter '" + text +
                          "' (expected modulus@turns)");
  }
}

std::pair<double, double> GluedNeck::to_negative_chart(double s, double t) const {
  return {s - length, reduce_turn(t - angle)};
}

std::pair<double, double> GluedNeck::to_positive_chart(double s_prime, double t_prime) const {
  return {s_prime + length, reduce_turn(t_prime + angle)};
}

std::optional<GluedNeck> glue_neck(const GluingParameter& a, const GluingProfile& p) {
  if (a.modulus < 0.0) throw ValidationError("gluing parameter modulus must be >= 0");
  if (a.is_zero()) return std::nullopt;
  return GluedNeck{p(a.modulus), reduce_turn(a.angle)};
}

bool neck_rotation_identity_check(const GluingParameter& a, const GluingParameter& a_prime,
                                  const GluingProfile& p, std::optional<double> theta,
                                  double tolerance) {
  if (a.is_zero() || a_prime.is_zero())
    throw DomainError("rotation identity needs nonzero gluing parameters");
  if (a.modulus != a_prime.modulus)
    throw DomainError("rotation identity needs |a| == |a'|");
  const double rot = theta.value_or(a_prime.angle - a.angle);
  const auto neck = *glue_neck(a, p);
  const auto neck_prime = *glue_neck(a_prime, p);

  constexpr int kS = 17, kT = 32;
  for (int i = 0; i < kS; ++i) {
    const double s = neck.length * i / (kS - 1);
    for (int j = 0; j < kT; ++j) {
      const double t = static_cast<double>(j) / kT;
      const auto [ls, lt] = neck.to_negative_chart(s, t);
      auto [rs, rt] = neck_prime.to_negative_chart(s, t);
      rt = reduce_turn(rt + rot);
      if (std::abs(ls - rs) > tolerance * std::max(1.0, neck.length) ||
          std::abs(turn_distance(lt, rt)) > tolerance)
        return false;
    }
  }
  return true;
}

double CutoffFunction::operator()(double s) const {
  auto psi = [](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; };
  if (s <= -1.0) return 1.0;
  if (s >= 1.0) return 0.0;
  const double left = psi(1.0 - s);
  const double right = psi(1.0 + s);
  return left / (left + right);
}

double ExtendedReal::value() const {
  if (infinite_) throw DomainError("extended real is infinite");
  return value_;
}

ExtendedReal min(const ExtendedReal& a, const ExtendedReal& b) {
  if (a.infinite_) return b;
  if (b.infinite_) return a;
  return ExtendedReal::finite(std::min(a.value_, b.value_));
}

ExtendedReal operator*(const ExtendedReal& a, const ExtendedReal& b) {
  if (a.infinite_ || b.infinite_) return ExtendedReal::infinity();
  return ExtendedReal::finite(a.value_ * b.value_);
}

bool operator<(const ExtendedReal& a, const ExtendedReal& b) {
  if (a.infinite_) return false;
  if (b.infinite_) return true;
  return a.value_ < b.value_;
}

std::optional<RegionKind> parse_region_kind(const std::string& s) {
  static const std::pair<const char*, RegionKind> table[] = {
      {"core", RegionKind::core},
      {"unglued_trivial_cylinder", RegionKind::unglued_trivial_cylinder},
      {"unglued_nodal_disk", RegionKind::unglued_nodal_disk},
      {"glued_nodal_neck", RegionKind::glued_nodal_neck},
      {"outer_puncture_disk", RegionKind::outer_puncture_disk},
      {"unglued_puncture_pair", RegionKind::unglued_puncture_pair},
      {"glued_puncture_pair", RegionKind::glued_puncture_pair},
      {"trivial_chain_closed", RegionKind::trivial_chain_closed},
      {"trivial_chain_negative_cap", RegionKind::trivial_chain_negative_cap},
      {"trivial_chain_positive_cap", RegionKind::trivial_chain_positive_cap},
      {"trivial_chain_two_caps", RegionKind::trivial_chain_two_caps},
  };
  for (const auto& [name, kind] : table)
    if (s == name) return kind;
  return std::nullopt;
}

ExtendedReal neck_weight(const NeckWeightConfig& c) {
  if (!(c.delta > 0.0)) throw DomainError("neck weight needs delta_1 > 0");
  auto grow = [&](double x) { return ExtendedReal::finite(std::exp(c.delta * x)); };
  auto neck = [&] {
    if (!(c.length > 0.0)) throw DomainError("glued region needs R > 0");
    return min(grow(c.s), grow(c.length - c.s));
  };
  switch (c.region) {
    case RegionKind::core:
      return ExtendedReal::finite(1.0);
    case RegionKind::unglued_trivial_cylinder:
    case RegionKind::trivial_chain_closed:
      return ExtendedReal::infinity();
    case RegionKind::unglued_nodal_disk:
    case RegionKind::outer_puncture_disk:
    case RegionKind::unglued_puncture_pair:
    case RegionKind::trivial_chain_positive_cap:
      return grow(c.s);
    case RegionKind::trivial_chain_negative_cap:
      return grow(std::abs(c.s));
    case RegionKind::glued_nodal_neck:
    case RegionKind::glued_puncture_pair:
    case RegionKind::trivial_chain_two_caps:
      return neck();
  }
  throw DomainError("unknown region kind");
}

}  // namespace sft::glue
