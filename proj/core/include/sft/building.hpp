#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "sft/glue.hpp"
#include "sft/surface.hpp"

namespace sft::building {

/// One floor: a punctured nodal surface (Gamma^-_i, S_i, Gamma^+_i) together
/// with the components flagged as trivial cylinders. The flags are input
/// data; nothing here can detect them.
struct Floor {
  surface::NodalSurface surface;
  std::set<std::string> trivial_cylinders;
  /// Optional orbit label per puncture; an interface pair must join
  /// punctures with equal labels.
  std::map<std::string, std::string> puncture_orbits;
  friend bool operator==(const Floor&, const Floor&) = default;
};

/// z in Gamma^+_{i-1} matched with b_i(z) in Gamma^-_i.
struct InterfacePair {
  std::string lower;
  std::string upper;
  double period = 1.0;  // T_z
  std::string orbit;
  friend bool operator==(const InterfacePair&, const InterfacePair&) = default;
};

struct Interface {
  std::vector<InterfacePair> pairs;
  friend bool operator==(const Interface&, const Interface&) = default;
};

/// Floors 0..k and interfaces 1..k; interfaces[i-1] joins floors i-1 and i.
/// Point ids are unique across the whole building.
struct Building {
  std::vector<Floor> floors;
  std::vector<Interface> interfaces;
  friend bool operator==(const Building&, const Building&) = default;
};

void validate(const Building& b);

/// Parameters aligned with the building: floors[i][j] glues
/// floors[i].surface.nodal_pairs[j], interfaces[i-1][j] glues
/// interfaces[i-1].pairs[j].
struct TotalGluingParameter {
  std::vector<std::vector<glue::GluingParameter>> floors;
  std::vector<std::vector<glue::GluingParameter>> interfaces;
  friend bool operator==(const TotalGluingParameter&, const TotalGluingParameter&) = default;
};

TotalGluingParameter zero_parameter(const Building& b);

/// Shape match plus |a| < 1/4 on every entry; throws ValidationError.
void validate_shape(const Building& b, const TotalGluingParameter& p);

/// Number of floors minus one.
int degeneracy(const Building& b);

struct Splitting {
  std::size_t interface = 0;  // i: splits floors {0..i-1} | {i..k}
  Building lower;
  Building upper;
};

std::vector<Splitting> faces(const Building& b);
int face_count(const Building& b);

/// Every interface is either identically zero or nowhere zero.
bool is_admissible(const Building& b, const TotalGluingParameter& p);

/// Interfaces i (1-based) whose parameters vanish identically, ascending.
/// An interface without pairs counts as identically zero.
std::vector<std::size_t> nontrivial_interfaces(const Building& b, const TotalGluingParameter& p);

/// Glued building: one floor per block between consecutive nontrivial
/// interfaces. Components joined by nonzero nodal or interface parameters
/// are merged (genus = sum g + E - V + 1); surviving nodal pairs are those
/// with zero parameter.
Building glue_building(const Building& b, const TotalGluingParameter& p);

// ---------------------------------------------------------------------------
// Interface shift formula and the admissibility region

struct AsymptoticConstants {
  std::map<std::string, double> constants;  // c^z per interface puncture
  std::map<std::string, double> periods;    // optional T_z overrides
};

/// |a| = phi^{-1}((phi(r) + c_high - c_low) / T), angle passed through;
/// r = 0 gives a = 0. Throws DomainError outside the admissible region.
glue::GluingParameter interface_gluing_parameter(double r, double c_low, double c_high,
                                                 double period, const glue::GluingProfile& p,
                                                 double angle = 0.0);

/// True iff r = 0, or phi(r) - c^z + c^{b(z)} > 0 and the resulting modulus
/// lies in (0, 1/4) for every pair of interface i (1-based).
bool admissible_region_check(double r, const AsymptoticConstants& constants, const Building& b,
                             std::size_t interface, const glue::GluingProfile& p);

// ---------------------------------------------------------------------------
// Anchors

struct AnchorSet {
  std::vector<std::string> points;
  std::vector<double> values;  // R-coordinates a_i(z)
};

struct AnchorData {
  std::vector<AnchorSet> floors;
};

/// Arithmetic mean of the anchor values on floor i; empty set is an error.
double anchor_average(const AnchorData& data, std::size_t floor);

struct AnchorCheck {
  bool ok = true;
  std::vector<std::string> violations;
};

/// For blocks starting at floor 0 and at each nontrivial interface i_e:
///   (1) the average at the block's first floor vanishes (|av| <= tolerance),
///   (2) averages increase strictly along the block, av_{i-1} < av_i,
///       starting from the block's first floor.
AnchorCheck check_anchor_constraints(const AnchorData& data,
                                     const std::vector<std::size_t>& nontrivial,
                                     double tolerance = 1e-12);

// ---------------------------------------------------------------------------
// Functoriality of parameter transport

/// Point permutation of a building (components follow from the points).
using BuildingAutomorphism = std::map<std::string, std::string>;

/// Throws ValidationError unless g permutes nodal pairs within each floor and
/// interface pairs within each interface.
void validate_automorphism(const Building& b, const BuildingAutomorphism& g);

/// g_* a: the parameter of pair {x,y} is moved to the pair {g x, g y}.
TotalGluingParameter transport(const Building& b, const TotalGluingParameter& p,
                               const BuildingAutomorphism& g);

BuildingAutomorphism compose(const BuildingAutomorphism& outer, const BuildingAutomorphism& inner);

}  // namespace sft::building
