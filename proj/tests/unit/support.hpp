#pragma once

#include <string>
#include <vector>

#include "sft/surface.hpp"

namespace testing {

inline std::vector<sft::surface::PointRef> on(const std::string& component,
                                              const std::vector<std::string>& points) {
  std::vector<sft::surface::PointRef> out;
  for (const auto& p : points) out.push_back({p, component});
  return out;
}

inline sft::surface::NodalPair node(const std::string& x, const std::string& cx, const std::string& y,
                                    const std::string& cy) {
  return {{x, cx}, {y, cy}};
}

/// Single component of genus g with `marked` marked points m0, m1, ...
inline sft::surface::NodalSurface single(int genus, int marked, const std::string& id = "C") {
  sft::surface::NodalSurface s;
  s.components.push_back({id, genus});
  for (int i = 0; i < marked; ++i) s.marked.push_back({id + "m" + std::to_string(i), id});
  return s;
}

/// Two spheres A, B joined by one nodal pair, with the given marked counts.
inline sft::surface::NodalSurface two_spheres(int marked_a, int marked_b) {
  sft::surface::NodalSurface s;
  s.components = {{"A", 0}, {"B", 0}};
  for (int i = 0; i < marked_a; ++i) s.marked.push_back({"a" + std::to_string(i), "A"});
  for (int i = 0; i < marked_b; ++i) s.marked.push_back({"b" + std::to_string(i), "B"});
  s.nodal_pairs.push_back(node("x", "A", "y", "B"));
  return s;
}

}  // namespace testing
