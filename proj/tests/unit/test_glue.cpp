#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sft/error.hpp"
#include "sft/glue.hpp"

using namespace sft::glue;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

SampledNeckMap constant_map(double s_min, double s_max, double c) {
  return sample_map(s_min, s_max, 33, 16, 1, [c](double, double) { return std::vector<double>{c}; });
}

}  // namespace

TEST_CASE("profile values") {
  const auto exp_p = GluingProfile::exponential();
  CHECK(exp_p(1.0) == Approx(0.0).epsilon(1e-15));
  CHECK(exp_p(0.5) == Approx(std::exp(2.0) - std::exp(1.0)).epsilon(1e-14));
  const auto cl = GluingProfile::classical();
  CHECK(cl(std::exp(-2 * kPi)) == Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(exp_p(0.0), sft::DomainError);
  CHECK_THROWS_AS(exp_p(1.5), sft::DomainError);
  CHECK_THROWS_AS(cl(1.0), sft::DomainError);
  CHECK_THROWS_AS(exp_p.inverse(-1.0), sft::DomainError);
}

TEST_CASE("profile round trip and monotonicity") {
  for (const auto& p : {GluingProfile::exponential(), GluingProfile::classical()}) {
    double prev = INFINITY;
    // e^{1/r} overflows below r = 1/709
    for (int i = 2; i < 1000; ++i) {
      const double r = i / 1000.0;
      const double R = p(r);
      CHECK(R < prev);
      prev = R;
      CHECK(std::abs(p.inverse(R) - r) <= 1e-12 * r);
    }
  }
}

TEST_CASE("parameter parsing and neck charts") {
  const auto a = parse_parameter("0.5@0.3333");
  CHECK(a.modulus == 0.5);
  CHECK(a.angle == Approx(0.3333));
  CHECK(parse_parameter("0.1@1.25").angle == Approx(0.25));
  CHECK(parse_parameter("0.2").angle == 0.0);
  CHECK_THROWS_AS(parse_parameter("x@1"), sft::ValidationError);
  CHECK_THROWS_AS(parse_parameter("-0.1"), sft::ValidationError);
  CHECK_THROWS_AS(validate_admissible_modulus({0.25, 0}), sft::ValidationError);
  CHECK_NOTHROW(validate_admissible_modulus({0.0, 0}));

  const auto p = GluingProfile::exponential();
  const auto n = glue_neck({0.5, 0.0}, p);
  REQUIRE(n);
  CHECK(n->length == Approx(std::exp(2.0) - std::exp(1.0)));
  const auto [sp, tp] = n->to_negative_chart(1.0, 0.2);
  CHECK(sp == Approx(1.0 - n->length));
  CHECK(tp == Approx(0.2));

  const auto twisted = glue_neck({0.5, 1.0 / 3}, p);
  REQUIRE(twisted);
  CHECK(twisted->length == n->length);
  const auto [s2, t2] = twisted->to_negative_chart(0.5, 0.1);
  CHECK(s2 == Approx(0.5 - n->length));
  CHECK(t2 == Approx(reduce_turn(0.1 - 1.0 / 3)));
  const auto back = twisted->to_positive_chart(s2, t2);
  CHECK(back.first == Approx(0.5));
  CHECK(turn_distance(back.second, 0.1) == Approx(0.0).epsilon(1e-15));

  CHECK_FALSE(glue_neck({0.0, 0.4}, p));
}

TEST_CASE("neck rotation identity") {
  const auto p = GluingProfile::exponential();
  CHECK(neck_rotation_identity_check({0.2, 0.1}, {0.2, 0.1}, p));
  CHECK(neck_rotation_identity_check({0.2, 0.0}, {0.2, 0.5}, p, 0.5));
  CHECK_FALSE(neck_rotation_identity_check({0.2, 0.0}, {0.2, 0.5}, p, 0.25));
  CHECK_THROWS_AS(neck_rotation_identity_check({0.2, 0.0}, {0.1, 0.0}, p), sft::DomainError);
  CHECK_THROWS_AS(neck_rotation_identity_check({0.0, 0.0}, {0.0, 0.3}, p), sft::DomainError);
}

TEST_CASE("cutoff function") {
  const CutoffFunction beta;
  CHECK(beta(-1.0) == 1.0);
  CHECK(beta(0.0) == 0.5);
  CHECK(beta(2.0) == 0.0);
  CHECK(beta(-5.0) == 1.0);
  double prev = 1.0;
  for (int i = 1; i < 200; ++i) {
    const double s = -1.0 + i / 100.0;
    const double b = beta(s);
    // within 0.9 of +-1 the values round to 1 or 0
    CHECK(b <= prev);
    if (std::abs(s) < 0.9) CHECK(b < prev);
    CHECK(b > 0.0);
    prev = b;
    CHECK(beta(s) + beta(-s) == Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("plus_glue") {
  const auto p = GluingProfile::exponential();
  const GluingParameter a{0.2, 0.3};
  const double R = p(0.2);

  SUBCASE("constant maps stay constant") {
    const auto g = std::get<SampledNeckMap>(plus_glue(constant_map(0, R, 2.5), constant_map(-R, 0, 2.5), a, p));
    for (double v : g.values) CHECK(v == Approx(2.5).epsilon(1e-15));
  }
  SUBCASE("zero parameter returns the pair") {
    const auto up = constant_map(0, 1, 1.0);
    const auto um = constant_map(-1, 0, 2.0);
    const auto r = plus_glue(up, um, {0.0, 0.0}, p);
    REQUIRE(std::holds_alternative<UngluedPair>(r));
    CHECK(std::get<UngluedPair>(r).positive == up);
    CHECK(std::get<UngluedPair>(r).negative == um);
  }
  SUBCASE("core bands reproduce the halves") {
    auto fp = [](double s, double t) { return std::vector<double>{std::sin(2 * kPi * t) + s, s * s}; };
    auto fm = [](double s, double t) { return std::vector<double>{std::cos(2 * kPi * t) - s, 3.0}; };
    const auto up = sample_map(0, R, 129, 64, 2, fp);
    const auto um = sample_map(-R, 0, 97, 48, 2, fm);
    const auto g = std::get<SampledNeckMap>(plus_glue(up, um, a, p));
    const auto neck = *glue_neck(a, p);
    REQUIRE(R >= 4);
    for (std::size_t i = 0; i < g.r_samples; ++i) {
      const double s = g.s_at(i);
      for (std::size_t j = 0; j < g.t_samples; ++j) {
        if (s <= R / 2 - 1) {
          for (std::size_t k = 0; k < 2; ++k) CHECK(g.at(i, j, k) == up.at(i, j, k));
        } else if (s >= R / 2 + 1) {
          const auto [sp, tp] = neck.to_negative_chart(s, g.t_at(j));
          const auto v = um.evaluate(sp, tp);
          for (std::size_t k = 0; k < 2; ++k) CHECK(g.at(i, j, k) == v[k]);
        }
      }
    }
  }
  SUBCASE("mismatched targets and short windows") {
    const auto two = sample_map(-R, 0, 8, 8, 2, [](double, double) { return std::vector<double>{0, 0}; });
    CHECK_THROWS_AS(plus_glue(constant_map(0, R, 1), two, a, p), sft::ValidationError);
    CHECK_THROWS_AS(plus_glue(constant_map(0, R / 2, 1), constant_map(-R, 0, 1), a, p), sft::ValidationError);
  }
}

TEST_CASE("middle loop average") {
  const auto p = GluingProfile::exponential();
  const GluingParameter a{0.2, 0.37};
  const double R = p(0.2);

  CHECK(middle_loop_average(constant_map(0, R, 1.75), a, p)[0] == Approx(1.75).epsilon(1e-15));

  const auto sine = sample_map(0, R, 65, 64, 2, [](double s, double t) {
    return std::vector<double>{std::sin(2 * kPi * t), s + std::cos(2 * kPi * t)};
  });
  const auto pos = middle_loop_average(sine, a, p, Chart::positive);
  const auto neg = middle_loop_average(sine, a, p, Chart::negative);
  CHECK(std::abs(pos[0]) < 1e-10);
  CHECK(pos[1] == Approx(R / 2).epsilon(1e-10));
  for (std::size_t k = 0; k < 2; ++k) CHECK(std::abs(pos[k] - neg[k]) < 1e-10);

  // rotating the decoration only reparametrizes the loop
  for (double c : {0.1, 0.25, 0.8}) {
    const auto rotated = middle_loop_average(sine, {0.2, reduce_turn(0.37 + c)}, p, Chart::negative);
    for (std::size_t k = 0; k < 2; ++k) CHECK(std::abs(rotated[k] - pos[k]) < 1e-10);
  }

  auto nodal = constant_map(0, 1, 0.0);
  nodal.nodal_value = std::vector<double>{4.0};
  CHECK(middle_loop_average(nodal, {0.0, 0.0}, p)[0] == 4.0);
}

TEST_CASE("neck weights") {
  NeckWeightConfig c;
  c.delta = 0.7;
  CHECK(neck_weight(c) == ExtendedReal::finite(1.0));
  c.region = RegionKind::unglued_trivial_cylinder;
  CHECK(neck_weight(c).is_infinite());
  c.region = RegionKind::glued_nodal_neck;
  c.length = 10;
  c.s = 5;
  CHECK(neck_weight(c).value() == Approx(std::exp(0.7 * 5)));
  c.s = 2;
  CHECK(neck_weight(c).value() == Approx(std::exp(0.7 * 2)));
  c.s = 9;
  CHECK(neck_weight(c).value() == Approx(std::exp(0.7 * 1)));
  c.region = RegionKind::unglued_nodal_disk;
  c.s = 3;
  CHECK(neck_weight(c).value() == Approx(std::exp(2.1)));
  c.delta = 0;
  CHECK_THROWS_AS(neck_weight(c), sft::DomainError);
  CHECK_FALSE(parse_region_kind("nowhere"));
  CHECK(parse_region_kind("glued_puncture_pair") == RegionKind::glued_puncture_pair);

  const auto inf = ExtendedReal::infinity();
  const auto two = ExtendedReal::finite(2.0);
  CHECK(min(inf, two) == two);
  CHECK((inf * two).is_infinite());
  CHECK(two < inf);
  CHECK_FALSE(inf < two);
  CHECK_THROWS_AS(inf.value(), sft::DomainError);
}
