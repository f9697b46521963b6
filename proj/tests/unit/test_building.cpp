#include <doctest.h>

#include <cmath>
#include <random>

#include "generators.hpp"
#include "sft/building.hpp"
#include "sft/error.hpp"

using namespace sft::building;
using doctest::Approx;
using sft::glue::GluingParameter;
using sft::glue::GluingProfile;

namespace {

std::size_t marked_total(const Building& b) {
  std::size_t n = 0;
  for (const auto& f : b.floors) n += f.surface.marked.size();
  return n;
}

}  // namespace

TEST_CASE("degeneracy and faces") {
  gen::Rng rng(1);
  CHECK(degeneracy(gen::random_building(rng, 1)) == 0);
  CHECK(face_count(gen::random_building(rng, 1)) == 0);
  const auto b = gen::random_building(rng, 3);
  CHECK(degeneracy(b) == 2);
  const auto fs = faces(b);
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].lower.floors.size() == 1);
  CHECK(fs[0].upper.floors.size() == 2);
  CHECK(fs[1].lower.floors.size() == 2);
  CHECK(fs[1].upper.floors.size() == 1);
  for (const auto& s : fs) CHECK(degeneracy(s.lower) + degeneracy(s.upper) == degeneracy(b) - 1);
}

TEST_CASE("face count equals degeneracy on random buildings") {
  gen::Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const auto b = gen::random_building(rng, gen::uniform_int(rng, 1, 6));
    CHECK(face_count(b) == degeneracy(b));
  }
}

TEST_CASE("building validation") {
  gen::Rng rng(3);
  auto b = gen::random_building(rng, 2);
  CHECK_NOTHROW(validate(b));
  auto bad = b;
  bad.interfaces[0].pairs[0].period = 0.0;
  CHECK_THROWS_AS(validate(bad), sft::ValidationError);
  bad = b;
  bad.interfaces[0].pairs.pop_back();
  CHECK_THROWS_AS(validate(bad), sft::ValidationError);
  bad = b;
  bad.floors[1].puncture_orbits[b.interfaces[0].pairs[0].upper] = "elsewhere";
  CHECK_THROWS_WITH_AS(validate(bad), doctest::Contains("orbit labels"), sft::ValidationError);
  bad = b;
  bad.interfaces.clear();
  CHECK_THROWS_AS(validate(bad), sft::ValidationError);
  CHECK_THROWS_AS(validate(Building{}), sft::ValidationError);
}

TEST_CASE("admissibility and nontrivial interfaces") {
  gen::Rng rng(4);
  const auto b = gen::random_building(rng, 4);
  auto p = zero_parameter(b);
  CHECK(is_admissible(b, p));
  CHECK(nontrivial_interfaces(b, p) == std::vector<std::size_t>{1, 2, 3});

  for (auto& a : p.interfaces[0]) a = {0.1, 0.2};
  CHECK(nontrivial_interfaces(b, p) == std::vector<std::size_t>{2, 3});

  for (auto& side : p.interfaces)
    for (auto& a : side) a = {0.1, 0.0};
  CHECK(nontrivial_interfaces(b, p).empty());

  if (b.interfaces[1].pairs.size() >= 2) {
    p.interfaces[1][0] = {0.0, 0.0};
    CHECK_FALSE(is_admissible(b, p));
    CHECK_THROWS_AS(nontrivial_interfaces(b, p), sft::DomainError);
  }

  auto q = zero_parameter(b);
  for (std::size_t f = 0; f < q.floors.size(); ++f)
    for (std::size_t j = 0; j < q.floors[f].size(); j += 2) q.floors[f][j] = {0.2, 0.5};
  CHECK(is_admissible(b, q));

  auto shape = zero_parameter(b);
  shape.floors.pop_back();
  CHECK_THROWS_AS(is_admissible(b, shape), sft::ValidationError);
  auto big = zero_parameter(b);
  big.interfaces[0][0] = {0.3, 0.0};
  CHECK_THROWS_AS(is_admissible(b, big), sft::ValidationError);
}

TEST_CASE("glue_building") {
  gen::Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto b = gen::random_building(rng, gen::uniform_int(rng, 1, 5));
    CHECK(glue_building(b, zero_parameter(b)) == b);

    const auto p = gen::random_admissible_parameter(rng, b);
    const auto g = glue_building(b, p);
    CHECK_NOTHROW(validate(g));
    CHECK(static_cast<std::size_t>(degeneracy(g)) == nontrivial_interfaces(b, p).size());
    CHECK(gen::total_arithmetic_genus(g) == gen::total_arithmetic_genus(b));
    CHECK(marked_total(g) == marked_total(b));
    CHECK(g.floors.front().surface.punctures_neg.size() == b.floors.front().surface.punctures_neg.size());
    CHECK(g.floors.back().surface.punctures_pos.size() == b.floors.back().surface.punctures_pos.size());
    std::size_t zero_nodes = 0, nodes_after = 0;
    for (const auto& f : p.floors)
      for (const auto& a : f) zero_nodes += a.is_zero();
    for (const auto& f : g.floors) nodes_after += f.surface.nodal_pairs.size();
    CHECK(nodes_after == zero_nodes);
  }
}

TEST_CASE("gluing everything leaves one floor without nodes") {
  gen::Rng rng(6);
  const auto b = gen::random_building(rng, 3);
  auto p = zero_parameter(b);
  for (auto& f : p.floors)
    for (auto& a : f) a = {0.1, 0.0};
  for (auto& side : p.interfaces)
    for (auto& a : side) a = {0.1, 0.0};
  const auto g = glue_building(b, p);
  REQUIRE(g.floors.size() == 1);
  CHECK(g.floors[0].surface.nodal_pairs.empty());
  CHECK(degeneracy(g) == 0);
}

TEST_CASE("interface gluing parameter") {
  const auto p = GluingProfile::exponential();
  CHECK(interface_gluing_parameter(0.0, 1.0, 2.0, 1.0, p).is_zero());
  // phi(r) = 5 inverts to 1 / ln(5 + e) > 1/4
  CHECK_THROWS_AS(interface_gluing_parameter(p.inverse(5.0), 0.0, 0.0, 1.0, p), sft::DomainError);
  CHECK(1.0 / std::log(5.0 + std::exp(1.0)) == Approx(0.48929).epsilon(1e-4));
  const auto a = interface_gluing_parameter(0.2, 0.0, 0.0, 1.0, p, 0.3);
  CHECK(a.modulus == Approx(0.2).epsilon(1e-12));
  CHECK(a.angle == Approx(0.3));
  // T phi(|a|) = phi(r) + c_high - c_low
  const auto b = interface_gluing_parameter(0.15, 1.5, 4.0, 2.0, p);
  CHECK(2.0 * p(b.modulus) == Approx(p(0.15) + 4.0 - 1.5).epsilon(1e-12));
  CHECK_THROWS_AS(interface_gluing_parameter(0.2, 1e6, 0.0, 1.0, p), sft::DomainError);
}

TEST_CASE("admissible region check agrees with the shift formula") {
  gen::Rng rng(7);
  const auto p = GluingProfile::exponential();
  for (int trial = 0; trial < 300; ++trial) {
    const auto b = gen::random_building(rng, 2);
    AsymptoticConstants c;
    for (const auto& pr : b.interfaces[0].pairs) {
      c.constants[pr.lower] = gen::uniform(rng, -40.0, 40.0);
      c.constants[pr.upper] = gen::uniform(rng, -40.0, 40.0);
    }
    const double r = trial % 10 == 0 ? 0.0 : gen::uniform(rng, 0.01, 0.3);
    bool all_ok = true;
    for (const auto& pr : b.interfaces[0].pairs) {
      try {
        interface_gluing_parameter(r, c.constants[pr.lower], c.constants[pr.upper], pr.period, p);
      } catch (const sft::DomainError&) {
        all_ok = false;
      }
    }
    CHECK(admissible_region_check(r, c, b, 1, p) == all_ok);
  }
  const auto b = gen::random_building(rng, 2);
  AsymptoticConstants zero;
  for (const auto& pr : b.interfaces[0].pairs) zero.constants[pr.lower] = zero.constants[pr.upper] = 0.0;
  CHECK(admissible_region_check(0.0, zero, b, 1, p));
  CHECK(admissible_region_check(0.05, {zero.constants, {{b.interfaces[0].pairs[0].lower, 1.0}}}, b, 1, p));
}

TEST_CASE("anchors") {
  AnchorData d;
  d.floors = {{{"a", "b"}, {1.0, -1.0}}, {{"c", "d", "e"}, {2.0, 4.0, 6.0}}, {{"f"}, {-1.0}}};
  CHECK(anchor_average(d, 0) == 0.0);
  CHECK(anchor_average(d, 1) == 4.0);
  CHECK(check_anchor_constraints({{{{}, {0.0}}, {{}, {1.0}}, {{}, {3.0}}}}, {}).ok);

  // virtual averages (0, -1, 3) on one block fail between floors 0 and 1
  AnchorData chain{{{{}, {0.0}}, {{}, {-1.0}}, {{}, {3.0}}}};
  const auto r = check_anchor_constraints(chain, {});
  CHECK_FALSE(r.ok);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].find("floors 0,1") != std::string::npos);
  // a cut at interface 2 restarts the chain at floor 2, whose average must vanish
  CHECK_FALSE(check_anchor_constraints(chain, {2}).ok);
  AnchorData cut{{{{}, {0.0}}, {{}, {1.0}}, {{}, {0.0}}}};
  CHECK(check_anchor_constraints(cut, {2}).ok);
  CHECK_THROWS_AS(anchor_average(AnchorData{{{{}, {}}}}, 0), sft::DomainError);
  CHECK_THROWS_AS(check_anchor_constraints(cut, {5}), sft::ValidationError);
}

TEST_CASE("parameter transport is functorial") {
  using sft::surface::NodalPair;
  Building b;
  Floor f;
  f.surface.components = {{"A", 0}, {"B", 0}};
  f.surface.nodal_pairs = {NodalPair{{"x1", "A"}, {"y1", "B"}}, NodalPair{{"x2", "A"}, {"y2", "B"}},
                           NodalPair{{"x3", "A"}, {"y3", "B"}}};
  b.floors.push_back(f);
  const BuildingAutomorphism id{{"x1", "x1"}, {"y1", "y1"}, {"x2", "x2"}, {"y2", "y2"}, {"x3", "x3"}, {"y3", "y3"}};
  const BuildingAutomorphism g{{"x1", "x2"}, {"y1", "y2"}, {"x2", "x3"}, {"y2", "y3"}, {"x3", "x1"}, {"y3", "y1"}};
  const BuildingAutomorphism h{{"x1", "x2"}, {"y1", "y2"}, {"x2", "x1"}, {"y2", "y1"}, {"x3", "x3"}, {"y3", "y3"}};
  TotalGluingParameter p{{{GluingParameter{0.1, 0.0}, GluingParameter{0.0, 0.0}, GluingParameter{0.2, 0.5}}}, {}};

  CHECK(transport(b, p, id) == p);
  const auto gp = transport(b, p, g);
  CHECK(gp.floors[0][1] == p.floors[0][0]);
  CHECK(gp.floors[0][2] == p.floors[0][1]);
  CHECK(gp.floors[0][0] == p.floors[0][2]);
  CHECK(transport(b, gp, h) == transport(b, p, compose(h, g)));

  BuildingAutomorphism broken = id;
  broken["x1"] = "y2";
  broken["y2"] = "x1";
  CHECK_THROWS_AS(transport(b, p, broken), sft::ValidationError);
}
