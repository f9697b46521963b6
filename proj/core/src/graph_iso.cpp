// Exact isomorphism test for small decorated multigraphs.
//
// Vertices are first partitioned by (genus, marked, edge number, loops) and
// refined by neighbourhood multisets on both graphs with a shared colour
// table. A backtracking search then matches colour classes, smallest first,
// checking edge multiplicities against every already-placed vertex.

#include <algorithm>
#include <map>
#include <numeric>

#include "sft/surface.hpp"

namespace sft::surface {
namespace {

using Multiplicity = std::vector<std::vector<int>>;

Multiplicity multiplicities(const DecoratedGraph& g) {
  const auto n = g.vertices.size();
  Multiplicity m(n, std::vector<int>(n, 0));
  for (const auto& [a, b] : g.edges) {
    ++m[a][b];
    if (a != b) ++m[b][a];
  }
  return m;
}

using Signature = std::vector<long>;

// Colour refinement run on both graphs at once so colour ids are comparable.
std::pair<std::vector<int>, std::vector<int>> refine(const DecoratedGraph& g1,
                                                     const Multiplicity& m1,
                                                     const DecoratedGraph& g2,
                                                     const Multiplicity& m2) {
  std::map<Signature, int> table;
  auto intern = [&](Signature sig) {
    auto [it, inserted] = table.try_emplace(std::move(sig), static_cast<int>(table.size()));
    return it->second;
  };
  auto initial = [&](const DecoratedGraph& g, const Multiplicity& m) {
    std::vector<int> colour(g.vertices.size());
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
      colour[v] = intern({g.vertices[v].genus, g.vertices[v].marked, g.edge_number(v), m[v][v]});
    return colour;
  };
  auto c1 = initial(g1, m1);
  auto c2 = initial(g2, m2);

  auto count_classes = [](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> all(a);
    all.insert(all.end(), b.begin(), b.end());
    std::sort(all.begin(), all.end());
    return std::unique(all.begin(), all.end()) - all.begin();
  };

  auto classes = count_classes(c1, c2);
  for (std::size_t round = 0; round < g1.vertices.size() + g2.vertices.size(); ++round) {
    table.clear();
    auto step = [&](const std::vector<int>& colour, const Multiplicity& m) {
      std::vector<int> next(colour.size());
      for (std::size_t v = 0; v < colour.size(); ++v) {
        std::vector<std::pair<int, int>> nbrs;
        for (std::size_t w = 0; w < colour.size(); ++w)
          if (w != v && m[v][w] > 0) nbrs.emplace_back(colour[w], m[v][w]);
        std::sort(nbrs.begin(), nbrs.end());
        Signature sig{colour[v]};
        for (auto [c, k] : nbrs) {
          sig.push_back(c);
          sig.push_back(k);
        }
        next[v] = intern(std::move(sig));
      }
      return next;
    };
    auto n1 = step(c1, m1);
    auto n2 = step(c2, m2);
    c1 = std::move(n1);
    c2 = std::move(n2);
    auto now = count_classes(c1, c2);
    if (now == classes) break;
    classes = now;
  }
  return {c1, c2};
}

struct Search {
  const Multiplicity& m1;
  const Multiplicity& m2;
  const std::vector<int>& c1;
  const std::vector<int>& c2;
  std::vector<std::size_t> order;
  std::vector<std::size_t> image;
  std::vector<bool> used;

  bool consistent(std::size_t depth, std::size_t candidate) const {
    const auto v = order[depth];
    if (m1[v][v] != m2[candidate][candidate]) return false;
    for (std::size_t d = 0; d < depth; ++d) {
      const auto u = order[d];
      if (m1[v][u] != m2[candidate][image[u]]) return false;
    }
    return true;
  }

  bool run(std::size_t depth) {
    if (depth == order.size()) return true;
    const auto v = order[depth];
    for (std::size_t w = 0; w < c2.size(); ++w) {
      if (used[w] || c2[w] != c1[v] || !consistent(depth, w)) continue;
      used[w] = true;
      image[v] = w;
      if (run(depth + 1)) return true;
      used[w] = false;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<std::size_t>> graphs_isomorphic(const DecoratedGraph& g1,
                                                          const DecoratedGraph& g2) {
  g1.validate();
  g2.validate();
  const auto n = g1.vertices.size();
  if (n != g2.vertices.size() || g1.edges.size() != g2.edges.size()) return std::nullopt;

  const auto m1 = multiplicities(g1);
  const auto m2 = multiplicities(g2);
  const auto [c1, c2] = refine(g1, m1, g2, m2);

  auto s1 = c1, s2 = c2;
  std::sort(s1.begin(), s1.end());
  std::sort(s2.begin(), s2.end());
  if (s1 != s2) return std::nullopt;

  std::map<int, int> class_size;
  for (int c : c1) ++class_size[c];

  Search search{m1, m2, c1, c2, {}, std::vector<std::size_t>(n), std::vector<bool>(n, false)};
  search.order.resize(n);
  std::iota(search.order.begin(), search.order.end(), std::size_t{0});
  std::stable_sort(search.order.begin(), search.order.end(), [&](auto a, auto b) {
    return std::pair(class_size[c1[a]], c1[a]) < std::pair(class_size[c1[b]], c1[b]);
  });
  if (!search.run(0)) return std::nullopt;
  return search.image;
}

}  // namespace sft::surface
