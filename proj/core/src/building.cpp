#include "sft/building.hpp"

#include <algorithm>
#include <numeric>

#include "sft/error.hpp"

namespace sft::building {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError("invalid building: " + what);
}

std::set<std::string> point_set(const std::vector<surface::PointRef>& refs) {
  std::set<std::string> out;
  for (const auto& r : refs) out.insert(r.point);
  return out;
}

// Small union-find over component indices.
struct Partition {
  std::vector<std::size_t> parent;
  explicit Partition(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void join(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

Building sub_building(const Building& b, std::size_t first, std::size_t last) {
  Building out;
  out.floors.assign(b.floors.begin() + static_cast<long>(first),
                    b.floors.begin() + static_cast<long>(last) + 1);
  out.interfaces.assign(b.interfaces.begin() + static_cast<long>(first),
                        b.interfaces.begin() + static_cast<long>(last));
  return out;
}

Floor glue_block(const Building& b, const TotalGluingParameter& p, std::size_t first,
                 std::size_t last) {
  std::vector<std::pair<std::size_t, const surface::Component*>> nodes;
  std::map<std::string, std::size_t> index;
  for (std::size_t f = first; f <= last; ++f)
    for (const auto& c : b.floors[f].surface.components) {
      index[c.id] = nodes.size();
      nodes.emplace_back(f, &c);
    }

  Partition part(nodes.size());
  std::vector<std::pair<std::size_t, std::size_t>> glued_edges;
  for (std::size_t f = first; f <= last; ++f) {
    const auto& pairs = b.floors[f].surface.nodal_pairs;
    for (std::size_t j = 0; j < pairs.size(); ++j)
      if (!p.floors[f][j].is_zero())
        glued_edges.emplace_back(index.at(pairs[j].x.component), index.at(pairs[j].y.component));
  }
  std::map<std::string, std::string> component_of;
  for (std::size_t f = first; f <= last; ++f) {
    const auto& s = b.floors[f].surface;
    for (const auto& r : s.punctures_neg) component_of[r.point] = r.component;
    for (const auto& r : s.punctures_pos) component_of[r.point] = r.component;
  }
  for (std::size_t i = first + 1; i <= last; ++i)
    for (const auto& pair : b.interfaces[i - 1].pairs)
      glued_edges.emplace_back(index.at(component_of.at(pair.lower)),
                               index.at(component_of.at(pair.upper)));
  for (auto [u, v] : glued_edges) part.join(u, v);

  std::vector<int> genus(nodes.size(), 0), vertices(nodes.size(), 0), edges(nodes.size(), 0);
  std::vector<bool> trivial(nodes.size(), true);
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    const auto root = part.find(n);
    genus[root] += nodes[n].second->genus;
    ++vertices[root];
    trivial[root] = trivial[root] && b.floors[nodes[n].first].trivial_cylinders.count(
                                         nodes[n].second->id) == 1;
  }
  for (auto [u, v] : glued_edges) ++edges[part.find(u)];

  Floor out;
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    if (part.find(n) != n) continue;
    const auto& id = nodes[n].second->id;
    out.surface.components.push_back({id, genus[n] + edges[n] - vertices[n] + 1});
    if (trivial[n]) out.trivial_cylinders.insert(id);
  }
  auto remap = [&](surface::PointRef r) {
    r.component = nodes[part.find(index.at(r.component))].second->id;
    return r;
  };
  for (std::size_t f = first; f <= last; ++f) {
    const auto& s = b.floors[f].surface;
    for (const auto& m : s.marked) out.surface.marked.push_back(remap(m));
    for (std::size_t j = 0; j < s.nodal_pairs.size(); ++j)
      if (p.floors[f][j].is_zero())
        out.surface.nodal_pairs.push_back({remap(s.nodal_pairs[j].x), remap(s.nodal_pairs[j].y)});
  }
  for (const auto& r : b.floors[first].surface.punctures_neg)
    out.surface.punctures_neg.push_back(remap(r));
  for (const auto& r : b.floors[last].surface.punctures_pos)
    out.surface.punctures_pos.push_back(remap(r));

  const auto survivors = [&] {
    auto s = point_set(out.surface.punctures_neg);
    s.merge(point_set(out.surface.punctures_pos));
    return s;
  }();
  for (std::size_t f = first; f <= last; ++f)
    for (const auto& [pt, label] : b.floors[f].puncture_orbits)
      if (survivors.count(pt)) out.puncture_orbits[pt] = label;
  return out;
}

std::size_t find_pair(const std::vector<surface::NodalPair>& pairs, const std::string& x,
                      const std::string& y) {
  for (std::size_t j = 0; j < pairs.size(); ++j)
    if ((pairs[j].x.point == x && pairs[j].y.point == y) ||
        (pairs[j].x.point == y && pairs[j].y.point == x))
      return j;
  return pairs.size();
}

std::size_t find_pair(const std::vector<InterfacePair>& pairs, const std::string& lower,
                      const std::string& upper) {
  for (std::size_t j = 0; j < pairs.size(); ++j)
    if (pairs[j].lower == lower && pairs[j].upper == upper) return j;
  return pairs.size();
}

const std::string& image(const BuildingAutomorphism& g, const std::string& p) {
  auto it = g.find(p);
  if (it == g.end()) throw ValidationError("building automorphism has no image for '" + p + "'");
  return it->second;
}

}  // namespace

void validate(const Building& b) {
  require(!b.floors.empty(), "at least one floor is required");
  require(b.interfaces.size() + 1 == b.floors.size(),
          "need exactly one interface between consecutive floors");
  std::set<std::string> components, points;
  for (std::size_t f = 0; f < b.floors.size(); ++f) {
    const auto& fl = b.floors[f];
    surface::validate(fl.surface);
    std::set<std::string> local;
    for (const auto& c : fl.surface.components) {
      local.insert(c.id);
      require(components.insert(c.id).second, "component id '" + c.id + "' used on two floors");
    }
    for (const auto& t : fl.trivial_cylinders)
      require(local.count(t) == 1, "trivial cylinder flag on unknown component '" + t + "'");
    auto add = [&](const std::vector<surface::PointRef>& refs) {
      for (const auto& r : refs)
        require(points.insert(r.point).second, "point id '" + r.point + "' used on two floors");
    };
    add(fl.surface.marked);
    add(fl.surface.punctures_neg);
    add(fl.surface.punctures_pos);
    for (const auto& pr : fl.surface.nodal_pairs) add({pr.x, pr.y});
  }
  for (std::size_t i = 1; i < b.floors.size(); ++i) {
    const auto& lower = b.floors[i - 1];
    const auto& upper = b.floors[i];
    const auto want_lower = point_set(lower.surface.punctures_pos);
    const auto want_upper = point_set(upper.surface.punctures_neg);
    std::set<std::string> got_lower, got_upper;
    const auto tag = "interface " + std::to_string(i);
    for (const auto& pr : b.interfaces[i - 1].pairs) {
      require(got_lower.insert(pr.lower).second, tag + ": '" + pr.lower + "' matched twice");
      require(got_upper.insert(pr.upper).second, tag + ": '" + pr.upper + "' matched twice");
      require(pr.period > 0.0, tag + ": period must be positive");
      auto lo = lower.puncture_orbits.find(pr.lower);
      auto hi = upper.puncture_orbits.find(pr.upper);
      if (lo != lower.puncture_orbits.end() && hi != upper.puncture_orbits.end())
        require(lo->second == hi->second, tag + ": orbit labels of '" + pr.lower + "' and '" +
                                              pr.upper + "' differ");
      if (!pr.orbit.empty() && lo != lower.puncture_orbits.end())
        require(lo->second == pr.orbit, tag + ": pair orbit label disagrees with puncture");
    }
    require(got_lower == want_lower, tag + ": lower side is not the positive punctures of floor " +
                                         std::to_string(i - 1));
    require(got_upper == want_upper,
            tag + ": upper side is not the negative punctures of floor " + std::to_string(i));
  }
}

TotalGluingParameter zero_parameter(const Building& b) {
  TotalGluingParameter p;
  for (const auto& f : b.floors) p.floors.emplace_back(f.surface.nodal_pairs.size());
  for (const auto& i : b.interfaces) p.interfaces.emplace_back(i.pairs.size());
  return p;
}

void validate_shape(const Building& b, const TotalGluingParameter& p) {
  validate(b);
  if (p.floors.size() != b.floors.size() || p.interfaces.size() != b.interfaces.size())
    throw ValidationError("gluing parameter shape does not match the building");
  for (std::size_t f = 0; f < b.floors.size(); ++f) {
    if (p.floors[f].size() != b.floors[f].surface.nodal_pairs.size())
      throw ValidationError("floor " + std::to_string(f) +
                            ": parameter count != number of nodal pairs");
    for (const auto& a : p.floors[f]) glue::validate_admissible_modulus(a);
  }
  for (std::size_t i = 0; i < b.interfaces.size(); ++i) {
    if (p.interfaces[i].size() != b.interfaces[i].pairs.size())
      throw ValidationError("interface " + std::to_string(i + 1) +
                            ": parameter count != number of pairs");
    for (const auto& a : p.interfaces[i]) glue::validate_admissible_modulus(a);
  }
}

int degeneracy(const Building& b) {
  validate(b);
  return static_cast<int>(b.floors.size()) - 1;
}

std::vector<Splitting> faces(const Building& b) {
  validate(b);
  std::vector<Splitting> out;
  const auto k = b.floors.size() - 1;
  for (std::size_t i = 1; i <= k; ++i)
    out.push_back({i, sub_building(b, 0, i - 1), sub_building(b, i, k)});
  return out;
}

int face_count(const Building& b) { return static_cast<int>(faces(b).size()); }

bool is_admissible(const Building& b, const TotalGluingParameter& p) {
  validate_shape(b, p);
  for (const auto& side : p.interfaces) {
    const auto zeros = std::count_if(side.begin(), side.end(), [](auto& a) { return a.is_zero(); });
    if (zeros != 0 && zeros != static_cast<long>(side.size())) return false;
  }
  return true;
}

std::vector<std::size_t> nontrivial_interfaces(const Building& b, const TotalGluingParameter& p) {
  if (!is_admissible(b, p))
    throw DomainError("gluing parameter is not admissible (an interface mixes zero and nonzero)");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.interfaces.size(); ++i)
    if (std::all_of(p.interfaces[i].begin(), p.interfaces[i].end(),
                    [](auto& a) { return a.is_zero(); }))
      out.push_back(i + 1);
  return out;
}

Building glue_building(const Building& b, const TotalGluingParameter& p) {
  const auto cuts = nontrivial_interfaces(b, p);
  std::vector<std::size_t> starts{0};
  starts.insert(starts.end(), cuts.begin(), cuts.end());

  Building out;
  for (std::size_t e = 0; e < starts.size(); ++e) {
    const auto last = e + 1 < starts.size() ? starts[e + 1] - 1 : b.floors.size() - 1;
    out.floors.push_back(glue_block(b, p, starts[e], last));
  }
  for (auto i : cuts) out.interfaces.push_back(b.interfaces[i - 1]);
  return out;
}

glue::GluingParameter interface_gluing_parameter(double r, double c_low, double c_high,
                                                 double period, const glue::GluingProfile& p,
                                                 double angle) {
  if (!(period > 0.0)) throw ValidationError("interface period must be positive");
  if (r == 0.0) return {0.0, glue::reduce_turn(angle)};
  if (!(r > 0.0 && r < 1.0)) throw DomainError("interface parameter r must lie in [0, 1)");
  const double shifted = p(r) + c_high - c_low;
  if (!(shifted > 0.0))
    throw DomainError("outside admissible region: phi(r) - c^z + c^{b(z)} must be positive");
  const double modulus = p.inverse(shifted / period);
  if (!(modulus > 0.0 && modulus < glue::kMaxModulus))
    throw DomainError("outside admissible region: resulting |a| = " + std::to_string(modulus) +
                      " is not in (0, 1/4)");
  return {modulus, glue::reduce_turn(angle)};
}

bool admissible_region_check(double r, const AsymptoticConstants& constants, const Building& b,
                             std::size_t interface, const glue::GluingProfile& p) {
  validate(b);
  if (interface < 1 || interface > b.interfaces.size())
    throw ValidationError("interface index out of range");
  if (r == 0.0) return true;
  if (!(r > 0.0 && r < 1.0)) return false;
  auto constant = [&](const std::string& z) {
    auto it = constants.constants.find(z);
    if (it == constants.constants.end())
      throw ValidationError("missing asymptotic constant for '" + z + "'");
    return it->second;
  };
  for (const auto& pair : b.interfaces[interface - 1].pairs) {
    auto override_it = constants.periods.find(pair.lower);
    const double period = override_it != constants.periods.end() ? override_it->second : pair.period;
    if (!(period > 0.0)) throw ValidationError("interface period must be positive");
    const double shifted = p(r) - constant(pair.lower) + constant(pair.upper);
    if (!(shifted > 0.0)) return false;
    const double modulus = p.inverse(shifted / period);
    if (!(modulus > 0.0 && modulus < glue::kMaxModulus)) return false;
  }
  return true;
}

double anchor_average(const AnchorData& data, std::size_t floor) {
  if (floor >= data.floors.size()) throw ValidationError("anchor data has no floor " + std::to_string(floor));
  const auto& set = data.floors[floor];
  if (set.values.empty()) throw DomainError("anchor set on floor " + std::to_string(floor) + " is empty");
  if (!set.points.empty() && set.points.size() != set.values.size())
    throw ValidationError("anchor points and values differ in length");
  return std::accumulate(set.values.begin(), set.values.end(), 0.0) /
         static_cast<double>(set.values.size());
}

AnchorCheck check_anchor_constraints(const AnchorData& data,
                                     const std::vector<std::size_t>& nontrivial,
                                     double tolerance) {
  std::vector<std::size_t> starts{0};
  for (auto i : nontrivial) {
    if (i == 0 || i >= data.floors.size() || i <= starts.back())
      throw ValidationError("nontrivial interfaces must be ascending and inside the building");
    starts.push_back(i);
  }
  AnchorCheck check;
  for (std::size_t e = 0; e < starts.size(); ++e) {
    const auto first = starts[e];
    const auto end = e + 1 < starts.size() ? starts[e + 1] : data.floors.size();
    const double av = anchor_average(data, first);
    if (std::abs(av) > tolerance) {
      check.ok = false;
      check.violations.push_back("floor " + std::to_string(first) + ": average " +
                                 std::to_string(av) + " is not zero");
    }
    for (auto i = first + 1; i < end; ++i) {
      const double lo = anchor_average(data, i - 1);
      const double hi = anchor_average(data, i);
      if (!(lo < hi)) {
        check.ok = false;
        check.violations.push_back("floors " + std::to_string(i - 1) + "," + std::to_string(i) +
                                   ": averages not strictly increasing");
      }
    }
  }
  return check;
}

void validate_automorphism(const Building& b, const BuildingAutomorphism& g) {
  validate(b);
  std::set<std::string> keys, values;
  for (const auto& [k, v] : g) {
    keys.insert(k);
    values.insert(v);
  }
  if (keys != values) throw ValidationError("building automorphism is not a permutation");
  for (const auto& f : b.floors)
    for (const auto& pr : f.surface.nodal_pairs)
      if (find_pair(f.surface.nodal_pairs, image(g, pr.x.point), image(g, pr.y.point)) ==
          f.surface.nodal_pairs.size())
        throw ValidationError("automorphism does not preserve nodal pairs");
  for (const auto& i : b.interfaces)
    for (const auto& pr : i.pairs)
      if (find_pair(i.pairs, image(g, pr.lower), image(g, pr.upper)) == i.pairs.size())
        throw ValidationError("automorphism does not preserve interface pairs");
}

TotalGluingParameter transport(const Building& b, const TotalGluingParameter& p,
                               const BuildingAutomorphism& g) {
  validate_shape(b, p);
  validate_automorphism(b, g);
  TotalGluingParameter out = p;
  for (std::size_t f = 0; f < b.floors.size(); ++f) {
    const auto& pairs = b.floors[f].surface.nodal_pairs;
    for (std::size_t j = 0; j < pairs.size(); ++j)
      out.floors[f][find_pair(pairs, image(g, pairs[j].x.point), image(g, pairs[j].y.point))] =
          p.floors[f][j];
  }
  for (std::size_t i = 0; i < b.interfaces.size(); ++i) {
    const auto& pairs = b.interfaces[i].pairs;
    for (std::size_t j = 0; j < pairs.size(); ++j)
      out.interfaces[i][find_pair(pairs, image(g, pairs[j].lower), image(g, pairs[j].upper))] =
          p.interfaces[i][j];
  }
  return out;
}

BuildingAutomorphism compose(const BuildingAutomorphism& outer, const BuildingAutomorphism& inner) {
  BuildingAutomorphism out;
  for (const auto& [k, v] : inner) out[k] = image(outer, v);
  return out;
}

}  // namespace sft::building
