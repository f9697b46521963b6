#include "sft/surface.hpp"

#include <set>
#include <unordered_map>

#include "sft/error.hpp"

namespace sft::surface {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError("invalid nodal surface: " + what);
}

std::map<std::string, int> special_counts(const NodalSurface& s, PointConvention convention) {
  std::map<std::string, int> count;
  for (const auto& c : s.components) count[c.id] = 0;
  for (const auto& m : s.marked) ++count[m.component];
  for (const auto& p : s.nodal_pairs) {
    ++count[p.x.component];
    ++count[p.y.component];
  }
  if (convention == PointConvention::dm_data) {
    for (const auto& p : s.punctures_neg) ++count[p.component];
    for (const auto& p : s.punctures_pos) ++count[p.component];
  }
  return count;
}

int marked_count(const NodalSurface& s, PointConvention convention) {
  int n = static_cast<int>(s.marked.size());
  if (convention == PointConvention::dm_data)
    n += static_cast<int>(s.punctures_neg.size() + s.punctures_pos.size());
  return n;
}

}  // namespace

void validate(const NodalSurface& s) {
  std::set<std::string> components;
  for (const auto& c : s.components) {
    require(!c.id.empty(), "component id must be nonempty");
    require(components.insert(c.id).second, "duplicate component id '" + c.id + "'");
    require(c.genus >= 0, "component '" + c.id + "' has negative genus");
  }
  std::set<std::string> points;
  auto add_point = [&](const PointRef& p, const char* role) {
    require(!p.point.empty(), std::string(role) + " point id must be nonempty");
    require(components.count(p.component) == 1,
            std::string(role) + " point '" + p.point + "' references unknown component '" +
                p.component + "'");
    require(points.insert(p.point).second, "point ids must be distinct ('" + p.point +
                                               "' appears twice; marked and nodal "
                                               "points must be disjoint)");
  };
  for (const auto& m : s.marked) add_point(m, "marked");
  for (const auto& p : s.nodal_pairs) {
    require(p.x.point != p.y.point, "nodal pair with x == y ('" + p.x.point + "')");
    add_point(p.x, "nodal");
    add_point(p.y, "nodal");
  }
  for (const auto& p : s.punctures_neg) add_point(p, "negative puncture");
  for (const auto& p : s.punctures_pos) add_point(p, "positive puncture");
}

StabilityReport check_stability(const NodalSurface& s, PointConvention convention) {
  validate(s);
  const auto count = special_counts(s, convention);
  StabilityReport report;
  for (const auto& c : s.components) {
    const bool ok = 2 * c.genus + count.at(c.id) >= 3;
    report.components.emplace_back(c.id, ok);
    report.stable = report.stable && ok;
  }
  return report;
}

int arithmetic_genus(const NodalSurface& s) {
  validate(s);
  int g = 1 + static_cast<int>(s.nodal_pairs.size());
  for (const auto& c : s.components) g += c.genus - 1;
  return g;
}

int deformation_dimension(const NodalSurface& s, PointConvention convention) {
  if (!check_stability(s, convention).stable)
    throw DomainError("deformation dimension is only defined for stable surfaces");
  return 3 * arithmetic_genus(s) - 3 + marked_count(s, convention) -
         static_cast<int>(s.nodal_pairs.size());
}

int DecoratedGraph::edge_number(std::size_t v) const {
  int e = 0;
  for (const auto& [a, b] : edges) {
    if (a == v) ++e;
    if (b == v) ++e;
  }
  return e;
}

bool DecoratedGraph::vertex_stable(std::size_t v) const {
  return 2 * vertices.at(v).genus + vertices.at(v).marked + edge_number(v) >= 3;
}

bool DecoratedGraph::stable() const {
  for (std::size_t v = 0; v < vertices.size(); ++v)
    if (!vertex_stable(v)) return false;
  return true;
}

void DecoratedGraph::validate() const {
  for (const auto& v : vertices)
    if (v.genus < 0 || v.marked < 0)
      throw ValidationError("graph vertex '" + v.id + "' has a negative label");
  for (const auto& [a, b] : edges)
    if (a >= vertices.size() || b >= vertices.size())
      throw ValidationError("graph edge references a missing vertex");
}

DecoratedGraph nodal_type(const NodalSurface& s, PointConvention convention) {
  validate(s);
  DecoratedGraph g;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& c : s.components) {
    index[c.id] = g.vertices.size();
    g.vertices.push_back({c.id, c.genus, 0});
  }
  for (const auto& m : s.marked) ++g.vertices[index[m.component]].marked;
  if (convention == PointConvention::dm_data) {
    for (const auto& p : s.punctures_neg) ++g.vertices[index[p.component]].marked;
    for (const auto& p : s.punctures_pos) ++g.vertices[index[p.component]].marked;
  }
  for (const auto& p : s.nodal_pairs) {
    auto a = index[p.x.component];
    auto b = index[p.y.component];
    g.edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  return g;
}

}  // namespace sft::surface
