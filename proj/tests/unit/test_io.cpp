#include <doctest.h>

#include <string>

#include "generators.hpp"
#include "sft/error.hpp"
#include "sft/io.hpp"
#include "sft/linalg.hpp"

using namespace sft;
using nlohmann::json;

namespace {

std::string data(const char* name) { return std::string(SFT_TEST_DATA_DIR) + "/" + name; }

// Files may spell numbers loosely, so compare after one normalizing pass.
template <class Parse>
void round_trips(const json& j, Parse parse) {
  const json canonical = io::to_json(parse(j));
  CHECK(io::to_json(parse(canonical)) == canonical);
}

}  // namespace

TEST_CASE("random buildings and parameters round trip") {
  gen::Rng rng(1);
  for (int trial = 0; trial < 30; ++trial) {
    const auto b = gen::random_building(rng, gen::uniform_int(rng, 1, 4));
    CHECK(io::parse_building(io::to_json(b)) == b);
    const auto p = gen::random_admissible_parameter(rng, b);
    CHECK(io::parse_total_parameter(io::to_json(p)) == p);
    for (const auto& f : b.floors) CHECK(io::parse_surface(io::to_json(f.surface)) == f.surface);
  }
}

TEST_CASE("universes and multisections round trip") {
  gen::Rng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto u = gen::lawful_universe(rng, 3);
    round_trips(io::to_json(u), io::parse_universe);
  }
  const auto ms = io::parse_multisection(io::read_file(data("ms_b.json")));
  round_trips(io::to_json(ms), io::parse_multisection);
  CHECK(io::rational_json(io::parse_rational_field(json("6/4"))) == json("3/2"));
  CHECK(io::parse_rational_field(json(3)) == Rational(3));
}

TEST_CASE("spectral records round trip") {
  round_trips(io::read_file(data("op_j0.json")), io::parse_operator);
  round_trips(io::read_file(data("ellipsoid.json")), io::parse_ellipsoid);
  round_trips(io::read_file(data("orbit_bad.json")), io::parse_orbit);
  const auto path = io::parse_path(io::read_file(data("halfturn.json")));
  CHECK(path.samples.size() == 257);
  round_trips(io::to_json(path), io::parse_path);
  round_trips(io::to_json(average::BundleModel{}), io::parse_bundle_model);

  const Eigen::MatrixXd j0 = linalg::J0(4);
  CHECK(io::parse_matrix(io::matrix_json(j0), 4) == j0);
  CHECK_THROWS_AS(io::parse_matrix(json::array({1, 2, 3}), 2), ValidationError);
}

TEST_CASE("parse errors name the field") {
  CHECK_THROWS_WITH_AS(io::parse_surface(io::read_file(data("malformed.json"))),
                       doctest::Contains("components[0].genus"), ValidationError);
  CHECK_THROWS_WITH_AS(io::parse_text("{\"a\": "), doctest::Contains("malformed JSON"), ValidationError);
  CHECK_THROWS_WITH_AS(io::read_file(data("does_not_exist.json")), doctest::Contains("cannot read"), ValidationError);

  auto b = io::read_file(data("building.json"));
  b["interfaces"][0]["pairs"][0]["period"] = "long";
  CHECK_THROWS_WITH_AS(io::parse_building(b), doctest::Contains("interfaces[0].pairs[0].period"), ValidationError);
  CHECK_THROWS_WITH_AS(io::parse_rational_field(json("1/0")), doctest::Contains("1/0"), ValidationError);
}

TEST_CASE("data files describe what the CLI tests expect") {
  const auto stable = io::parse_surface(io::read_file(data("stable.json")));
  CHECK(surface::check_stability(stable).stable);
  const auto unstable = io::parse_surface(io::read_file(data("unstable.json")));
  CHECK_FALSE(surface::check_stability(unstable).stable);
  const auto nodal = io::parse_surface(io::read_file(data("nodal.json")));
  CHECK(surface::arithmetic_genus(nodal) == 1);
  CHECK(surface::deformation_dimension(nodal) == 1);
}
