#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "sft/error.hpp"
#include "sft/surface.hpp"
#include "support.hpp"

using namespace sft::surface;
using testing::node;
using testing::on;
using testing::single;
using testing::two_spheres;

namespace {

// Brute force: try every vertex permutation.
bool brute_isomorphic(const DecoratedGraph& g1, const DecoratedGraph& g2) {
  const auto n = g1.vertices.size();
  if (n != g2.vertices.size() || g1.edges.size() != g2.edges.size()) return false;
  auto edge_multiset = [](const DecoratedGraph& g, const std::vector<std::size_t>& w) {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (auto [a, b] : g.edges) e.emplace_back(std::min(w[a], w[b]), std::max(w[a], w[b]));
    std::sort(e.begin(), e.end());
    return e;
  };
  std::vector<std::size_t> id(n);
  std::iota(id.begin(), id.end(), 0);
  const auto target = edge_multiset(g2, id);
  std::vector<std::size_t> perm = id;
  do {
    bool labels = true;
    for (std::size_t v = 0; v < n && labels; ++v)
      labels = g1.vertices[v].genus == g2.vertices[perm[v]].genus &&
               g1.vertices[v].marked == g2.vertices[perm[v]].marked;
    if (labels && edge_multiset(g1, perm) == target) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

DecoratedGraph random_graph(std::mt19937_64& rng, std::size_t n) {
  DecoratedGraph g;
  std::uniform_int_distribution<int> genus(0, 1), marked(0, 2), edges(0, static_cast<int>(n + 2));
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t v = 0; v < n; ++v) g.vertices.push_back({"v" + std::to_string(v), genus(rng), marked(rng)});
  const int e = edges(rng);
  for (int i = 0; i < e; ++i) {
    auto a = pick(rng), b = pick(rng);
    g.edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  return g;
}

DecoratedGraph shuffled(const DecoratedGraph& g, std::mt19937_64& rng) {
  std::vector<std::size_t> w(g.vertices.size());
  std::iota(w.begin(), w.end(), 0);
  std::shuffle(w.begin(), w.end(), rng);
  DecoratedGraph h;
  h.vertices.resize(g.vertices.size());
  for (std::size_t v = 0; v < w.size(); ++v) h.vertices[w[v]] = g.vertices[v];
  for (auto [a, b] : g.edges) h.edges.emplace_back(std::min(w[a], w[b]), std::max(w[a], w[b]));
  std::shuffle(h.edges.begin(), h.edges.end(), rng);
  return h;
}

bool witness_ok(const DecoratedGraph& g1, const DecoratedGraph& g2, const std::vector<std::size_t>& w) {
  for (std::size_t v = 0; v < w.size(); ++v)
    if (g1.vertices[v].genus != g2.vertices[w[v]].genus || g1.vertices[v].marked != g2.vertices[w[v]].marked)
      return false;
  std::vector<std::pair<std::size_t, std::size_t>> a, b;
  for (auto [x, y] : g1.edges) a.emplace_back(std::min(w[x], w[y]), std::max(w[x], w[y]));
  for (auto [x, y] : g2.edges) b.emplace_back(std::min(x, y), std::max(x, y));
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace

TEST_CASE("stability inequality") {
  CHECK(check_stability(single(0, 3)).stable);
  CHECK_FALSE(check_stability(single(1, 0)).stable);
  CHECK(check_stability(single(1, 1)).stable);
  CHECK_FALSE(check_stability(single(0, 2)).stable);
  const auto r = check_stability(two_spheres(2, 2));
  CHECK(r.stable);
  CHECK(r.components.size() == 2);

  // punctures count under the default convention, not under the marked-only one
  auto s = single(0, 2);
  s.punctures_pos = on("C", {"z"});
  CHECK(check_stability(s).stable);
  CHECK_FALSE(check_stability(s, PointConvention::marked_and_nodal).stable);
}

TEST_CASE("stability is monotone in added marked points") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    auto s = two_spheres(static_cast<int>(rng() % 3), static_cast<int>(rng() % 3));
    const bool before = check_stability(s).stable;
    s.marked.push_back({"extra", rng() % 2 ? "A" : "B"});
    if (before) CHECK(check_stability(s).stable);
  }
}

TEST_CASE("arithmetic genus") {
  CHECK(arithmetic_genus(single(0, 0)) == 0);
  CHECK(arithmetic_genus(single(1, 0)) == 1);
  CHECK(arithmetic_genus(two_spheres(0, 0)) == 0);
  auto self = single(0, 1);
  self.nodal_pairs.push_back(node("p", "C", "q", "C"));
  CHECK(arithmetic_genus(self) == 1);
}

TEST_CASE("deformation dimension") {
  CHECK(deformation_dimension(single(0, 4)) == 1);
  CHECK(deformation_dimension(single(0, 3)) == 0);
  CHECK(deformation_dimension(two_spheres(3, 3)) == 2);
  CHECK_THROWS_AS(deformation_dimension(single(0, 2)), sft::DomainError);

  // independent recount from the raw fields
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    NodalSurface s;
    const int k = 1 + static_cast<int>(rng() % 3);
    int total_genus = 0;
    for (int c = 0; c < k; ++c) {
      const int g = static_cast<int>(rng() % 2);
      total_genus += g;
      s.components.push_back({"c" + std::to_string(c), g});
      for (int m = 0; m < 3; ++m) s.marked.push_back({"m" + std::to_string(c) + std::to_string(m), s.components.back().id});
    }
    const int nodes = static_cast<int>(rng() % 3);
    for (int d = 0; d < nodes; ++d)
      s.nodal_pairs.push_back(node("x" + std::to_string(d), "c" + std::to_string(rng() % k),
                                   "y" + std::to_string(d), "c" + std::to_string(rng() % k)));
    const int ga = 1 + nodes + total_genus - k;
    CHECK(arithmetic_genus(s) == ga);
    CHECK(deformation_dimension(s) == 3 * ga - 3 + 3 * k - nodes);
  }
}

TEST_CASE("validation names the invariant") {
  auto s = single(0, 3);
  s.marked.push_back({"Cm0", "C"});
  CHECK_THROWS_WITH_AS(validate(s), doctest::Contains("distinct"), sft::ValidationError);
  s = single(0, 3);
  s.marked.push_back({"q", "nowhere"});
  CHECK_THROWS_WITH_AS(validate(s), doctest::Contains("unknown component"), sft::ValidationError);
  s = single(0, 3);
  s.nodal_pairs.push_back(node("p", "C", "p", "C"));
  CHECK_THROWS_AS(validate(s), sft::ValidationError);
  s = single(-1, 3);
  CHECK_THROWS_AS(validate(s), sft::ValidationError);
}

TEST_CASE("nodal type") {
  const auto t = nodal_type(single(1, 1));
  REQUIRE(t.vertices.size() == 1);
  CHECK(t.vertices[0].genus == 1);
  CHECK(t.vertices[0].marked == 1);
  CHECK(t.edges.empty());

  const auto two = nodal_type(two_spheres(1, 2));
  CHECK(two.vertices.size() == 2);
  CHECK(two.edges.size() == 1);

  auto self = single(0, 1);
  self.nodal_pairs.push_back(node("p", "C", "q", "C"));
  const auto loop = nodal_type(self);
  REQUIRE(loop.edges.size() == 1);
  CHECK(loop.edges[0].first == loop.edges[0].second);
  CHECK(loop.edge_number(0) == 2);
  CHECK(loop.stable());
}

TEST_CASE("graph isomorphism examples") {
  const auto g = nodal_type(two_spheres(3, 3));
  const auto w = graphs_isomorphic(g, g);
  REQUIRE(w);
  CHECK(*w == std::vector<std::size_t>{0, 1});

  DecoratedGraph a{{{"a", 0, 3}, {"b", 0, 3}}, {{0, 1}}};
  DecoratedGraph b{{{"a", 0, 3}, {"b", 1, 3}}, {{0, 1}}};
  CHECK_FALSE(graphs_isomorphic(a, b));

  DecoratedGraph path{{{"A", 0, 2}, {"B", 1, 0}, {"C", 0, 1}}, {{0, 1}, {1, 2}}};
  DecoratedGraph rev{{{"C", 0, 1}, {"B", 1, 0}, {"A", 0, 2}}, {{0, 1}, {1, 2}}};
  const auto pw = graphs_isomorphic(path, rev);
  REQUIRE(pw);
  CHECK(*pw == std::vector<std::size_t>{2, 1, 0});
}

TEST_CASE("graph isomorphism agrees with brute force") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 7;
    const auto g1 = random_graph(rng, n);
    const auto g2 = trial % 2 ? shuffled(g1, rng) : random_graph(rng, n);
    const auto w = graphs_isomorphic(g1, g2);
    CHECK(w.has_value() == brute_isomorphic(g1, g2));
    if (w) CHECK(witness_ok(g1, g2, *w));
  }
}

TEST_CASE("graph isomorphism is an equivalence relation") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g1 = random_graph(rng, 1 + rng() % 6);
    const auto g2 = shuffled(g1, rng);
    const auto g3 = shuffled(g2, rng);
    CHECK(graphs_isomorphic(g1, g1));
    CHECK(graphs_isomorphic(g1, g2).has_value() == graphs_isomorphic(g2, g1).has_value());
    CHECK(graphs_isomorphic(g1, g3));
  }
}

TEST_CASE("automorphisms") {
  const auto s = two_spheres(1, 1);
  CHECK(validate_automorphism(s, identity_automorphism(s)));

  SurfaceAutomorphism swap;
  swap.components = {{"A", "B"}, {"B", "A"}};
  swap.points = {{"a0", "b0"}, {"b0", "a0"}, {"x", "y"}, {"y", "x"}};
  CHECK(validate_automorphism(s, swap));
  CHECK(compose(swap, swap) == identity_automorphism(s));
  CHECK(invert(swap) == swap);
  CHECK(orbit_of("x", {swap}) == std::vector<std::string>{"x", "y"});
  CHECK(arithmetic_genus(apply(swap, s)) == arithmetic_genus(s));
  CHECK(graphs_isomorphic(nodal_type(s), nodal_type(apply(swap, s))));

  SurfaceAutomorphism bad = identity_automorphism(s);
  bad.points["a0"] = "x";
  bad.points["x"] = "a0";
  CHECK_FALSE(validate_automorphism(s, bad));

  SurfaceAutomorphism partial = identity_automorphism(s);
  partial.points.erase("a0");
  CHECK_THROWS_AS(validate_automorphism(s, partial), sft::ValidationError);
}

TEST_CASE("composition is associative") {
  NodalSurface s;
  s.components = {{"C", 0}};
  s.marked = on("C", {"p0", "p1", "p2", "p3"});
  std::mt19937_64 rng(5);
  std::vector<std::string> pts{"p0", "p1", "p2", "p3"};
  auto random_perm = [&] {
    auto img = pts;
    std::shuffle(img.begin(), img.end(), rng);
    SurfaceAutomorphism f;
    f.components = {{"C", "C"}};
    for (std::size_t i = 0; i < pts.size(); ++i) f.points[pts[i]] = img[i];
    return f;
  };
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_perm(), g = random_perm(), h = random_perm();
    CHECK(validate_automorphism(s, f));
    CHECK(compose(f, compose(g, h)) == compose(compose(f, g), h));
    CHECK(compose(f, invert(f)) == identity_automorphism(s));
  }
}

TEST_CASE("small disk structures") {
  const auto s = two_spheres(1, 1);
  SmallDiskStructure d;
  d.disks = {{"x", "Dx"}, {"y", "Dy"}};
  SurfaceAutomorphism swap;
  swap.components = {{"A", "B"}, {"B", "A"}};
  swap.points = {{"a0", "b0"}, {"b0", "a0"}, {"x", "y"}, {"y", "x"}};
  CHECK(validate_small_disk_structure(s, d, {identity_automorphism(s), swap}));

  auto shared = d;
  shared.disks["y"] = "Dx";
  CHECK_FALSE(validate_small_disk_structure(s, shared, {}));
  auto holds_marked = d;
  holds_marked.contents["Dx"] = {"a0"};
  CHECK_FALSE(validate_small_disk_structure(s, holds_marked, {}));
  auto overlapping = d;
  overlapping.overlaps.emplace_back("Dx", "Dy");
  CHECK_FALSE(validate_small_disk_structure(s, overlapping, {}));
  auto missing = d;
  missing.disks.erase("y");
  CHECK_FALSE(validate_small_disk_structure(s, missing, {}));
}
