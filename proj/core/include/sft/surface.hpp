#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sft::surface {

struct Component {
  std::string id;
  int genus = 0;
  friend bool operator==(const Component&, const Component&) = default;
};

/// A special point and the component carrying it.
struct PointRef {
  std::string point;
  std::string component;
  friend bool operator==(const PointRef&, const PointRef&) = default;
};

/// Unordered pair {x, y}; x and y may sit on the same component (self-node).
struct NodalPair {
  PointRef x;
  PointRef y;
  friend bool operator==(const NodalPair&, const NodalPair&) = default;
};

/// Combinatorial shadow of a nodal Riemann surface (S, j, M, D) with
/// signed punctures. Point ids are opaque; no geometric data is carried.
struct NodalSurface {
  std::vector<Component> components;
  std::vector<PointRef> marked;
  std::vector<NodalPair> nodal_pairs;
  std::vector<PointRef> punctures_neg;
  std::vector<PointRef> punctures_pos;
  friend bool operator==(const NodalSurface&, const NodalSurface&) = default;
};

/// Which special points enter the stability count and the marked count.
/// `marked_and_nodal` counts M and |D|; `dm_data` also folds the punctures
/// into the marked set.
enum class PointConvention { marked_and_nodal, dm_data };

/// Throws ValidationError naming the first violated invariant.
void validate(const NodalSurface& s);

struct StabilityReport {
  std::vector<std::pair<std::string, bool>> components;
  bool stable = true;
};

StabilityReport check_stability(const NodalSurface& s,
                                PointConvention convention = PointConvention::dm_data);

/// g_a = 1 + #D + sum_C (g(C) - 1)
int arithmetic_genus(const NodalSurface& s);

/// 3 g_a - 3 + #M - #D. Throws DomainError for unstable surfaces.
int deformation_dimension(const NodalSurface& s,
                          PointConvention convention = PointConvention::marked_and_nodal);

// ---------------------------------------------------------------------------
// Decorated graphs (nodal types)

struct DecoratedGraph {
  struct Vertex {
    std::string id;
    int genus = 0;
    int marked = 0;
    friend bool operator==(const Vertex&, const Vertex&) = default;
  };
  std::vector<Vertex> vertices;
  /// Unordered vertex-index pairs; a loop is (v, v). Multi-edges allowed.
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  /// Edge number e(v); a loop contributes 2.
  int edge_number(std::size_t v) const;
  bool vertex_stable(std::size_t v) const;
  bool stable() const;
  void validate() const;
};

DecoratedGraph nodal_type(const NodalSurface& s,
                          PointConvention convention = PointConvention::marked_and_nodal);

/// Label- and multiplicity-preserving isomorphism. On success returns the
/// witness w with w[i] = image in g2 of vertex i of g1.
std::optional<std::vector<std::size_t>> graphs_isomorphic(const DecoratedGraph& g1,
                                                          const DecoratedGraph& g2);

// ---------------------------------------------------------------------------
// Automorphisms

struct SurfaceAutomorphism {
  std::map<std::string, std::string> components;
  std::map<std::string, std::string> points;
  friend bool operator==(const SurfaceAutomorphism&, const SurfaceAutomorphism&) = default;
};

SurfaceAutomorphism identity_automorphism(const NodalSurface& s);

/// True iff phi is a bijection on components and points that preserves
/// attribution, genus, marked points, nodal pairs and signed punctures.
/// Throws ValidationError when phi is not a bijection of the right sets.
bool validate_automorphism(const NodalSurface& s, const SurfaceAutomorphism& phi);

/// (outer o inner)(p) = outer(inner(p)).
SurfaceAutomorphism compose(const SurfaceAutomorphism& outer, const SurfaceAutomorphism& inner);
SurfaceAutomorphism invert(const SurfaceAutomorphism& phi);

/// Orbit of a point under the group generated by `generators`; sorted.
std::vector<std::string> orbit_of(const std::string& point,
                                  const std::vector<SurfaceAutomorphism>& generators);

/// Image surface phi(s): every id replaced by its image.
NodalSurface apply(const SurfaceAutomorphism& phi, const NodalSurface& s);

// ---------------------------------------------------------------------------
// Small disk structures

struct SmallDiskStructure {
  /// nodal point id -> disk id
  std::map<std::string, std::string> disks;
  /// declared non-center special points lying inside a disk (must be empty)
  std::map<std::string, std::vector<std::string>> contents;
  /// declared pairs of disks that intersect (must be empty)
  std::vector<std::pair<std::string, std::string>> overlaps;
};

/// Checks: every nodal point carries exactly one disk, disks are distinct and
/// declared disjoint, no disk contains a marked point or puncture, and the
/// disk family is carried to itself by every group element.
bool validate_small_disk_structure(const NodalSurface& s, const SmallDiskStructure& d,
                                   const std::vector<SurfaceAutomorphism>& group);

}  // namespace sft::surface
