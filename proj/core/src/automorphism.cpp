#include <algorithm>
#include <deque>
#include <set>

#include "sft/error.hpp"
#include "sft/surface.hpp"

namespace sft::surface {
namespace {

std::set<std::string> all_points(const NodalSurface& s) {
  std::set<std::string> out;
  for (const auto& m : s.marked) out.insert(m.point);
  for (const auto& p : s.nodal_pairs) {
    out.insert(p.x.point);
    out.insert(p.y.point);
  }
  for (const auto& p : s.punctures_neg) out.insert(p.point);
  for (const auto& p : s.punctures_pos) out.insert(p.point);
  return out;
}

void require_bijection(const std::map<std::string, std::string>& f,
                       const std::set<std::string>& domain, const char* what) {
  std::set<std::string> keys, values;
  for (const auto& [k, v] : f) {
    keys.insert(k);
    values.insert(v);
  }
  if (keys != domain || values != domain)
    throw ValidationError(std::string("automorphism is not a bijection on ") + what);
}

std::string lookup(const std::map<std::string, std::string>& f, const std::string& key) {
  auto it = f.find(key);
  if (it == f.end()) throw ValidationError("automorphism has no image for '" + key + "'");
  return it->second;
}

PointRef image(const SurfaceAutomorphism& phi, const PointRef& p) {
  return {lookup(phi.points, p.point), lookup(phi.components, p.component)};
}

std::set<std::pair<std::string, std::string>> pair_set(const std::vector<NodalPair>& pairs) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& p : pairs) out.insert(std::minmax(p.x.point, p.y.point));
  return out;
}

std::set<std::pair<std::string, std::string>> ref_set(const std::vector<PointRef>& refs) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& r : refs) out.insert({r.point, r.component});
  return out;
}

}  // namespace

SurfaceAutomorphism identity_automorphism(const NodalSurface& s) {
  SurfaceAutomorphism id;
  for (const auto& c : s.components) id.components[c.id] = c.id;
  for (const auto& p : all_points(s)) id.points[p] = p;
  return id;
}

NodalSurface apply(const SurfaceAutomorphism& phi, const NodalSurface& s) {
  NodalSurface out;
  for (const auto& c : s.components) out.components.push_back({lookup(phi.components, c.id), c.genus});
  for (const auto& m : s.marked) out.marked.push_back(image(phi, m));
  for (const auto& p : s.nodal_pairs) out.nodal_pairs.push_back({image(phi, p.x), image(phi, p.y)});
  for (const auto& p : s.punctures_neg) out.punctures_neg.push_back(image(phi, p));
  for (const auto& p : s.punctures_pos) out.punctures_pos.push_back(image(phi, p));
  return out;
}

bool validate_automorphism(const NodalSurface& s, const SurfaceAutomorphism& phi) {
  validate(s);
  std::set<std::string> comps;
  for (const auto& c : s.components) comps.insert(c.id);
  require_bijection(phi.components, comps, "components");
  require_bijection(phi.points, all_points(s), "points");

  const auto img = apply(phi, s);

  std::map<std::string, int> genus;
  for (const auto& c : s.components) genus[c.id] = c.genus;
  for (const auto& c : img.components)
    if (genus.at(c.id) != c.genus) return false;

  return ref_set(img.marked) == ref_set(s.marked) &&
         pair_set(img.nodal_pairs) == pair_set(s.nodal_pairs) &&
         ref_set(img.punctures_neg) == ref_set(s.punctures_neg) &&
         ref_set(img.punctures_pos) == ref_set(s.punctures_pos) && [&] {
           // nodal attribution: each image nodal point lands on the component
           // the target surface assigns to it
           std::map<std::string, std::string> where;
           for (const auto& p : s.nodal_pairs) {
             where[p.x.point] = p.x.component;
             where[p.y.point] = p.y.component;
           }
           for (const auto& p : img.nodal_pairs)
             if (where.at(p.x.point) != p.x.component || where.at(p.y.point) != p.y.component)
               return false;
           return true;
         }();
}

SurfaceAutomorphism compose(const SurfaceAutomorphism& outer, const SurfaceAutomorphism& inner) {
  SurfaceAutomorphism out;
  for (const auto& [k, v] : inner.components) out.components[k] = lookup(outer.components, v);
  for (const auto& [k, v] : inner.points) out.points[k] = lookup(outer.points, v);
  return out;
}

SurfaceAutomorphism invert(const SurfaceAutomorphism& phi) {
  SurfaceAutomorphism out;
  for (const auto& [k, v] : phi.components)
    if (!out.components.emplace(v, k).second)
      throw ValidationError("automorphism is not injective on components");
  for (const auto& [k, v] : phi.points)
    if (!out.points.emplace(v, k).second)
      throw ValidationError("automorphism is not injective on points");
  return out;
}

std::vector<std::string> orbit_of(const std::string& point,
                                  const std::vector<SurfaceAutomorphism>& generators) {
  std::set<std::string> seen{point};
  std::deque<std::string> queue{point};
  while (!queue.empty()) {
    auto p = queue.front();
    queue.pop_front();
    for (const auto& g : generators) {
      auto q = lookup(g.points, p);
      if (seen.insert(q).second) queue.push_back(q);
    }
  }
  return {seen.begin(), seen.end()};
}

bool validate_small_disk_structure(const NodalSurface& s, const SmallDiskStructure& d,
                                   const std::vector<SurfaceAutomorphism>& group) {
  validate(s);
  std::set<std::string> nodal;
  for (const auto& p : s.nodal_pairs) {
    nodal.insert(p.x.point);
    nodal.insert(p.y.point);
  }
  std::set<std::string> centers, ids;
  for (const auto& [center, disk] : d.disks) {
    centers.insert(center);
    if (!ids.insert(disk).second) return false;  // one disk serving two points
  }
  if (centers != nodal) return false;
  if (!d.overlaps.empty()) return false;

  std::set<std::string> forbidden;
  for (const auto& m : s.marked) forbidden.insert(m.point);
  for (const auto& p : s.punctures_neg) forbidden.insert(p.point);
  for (const auto& p : s.punctures_pos) forbidden.insert(p.point);
  for (const auto& [disk, inside] : d.contents)
    for (const auto& p : inside)
      if (forbidden.count(p) || nodal.count(p)) return false;

  for (const auto& g : group) {
    if (!validate_automorphism(s, g)) return false;
    for (const auto& c : centers)
      if (!centers.count(lookup(g.points, c))) return false;
  }
  return true;
}

}  // namespace sft::surface
