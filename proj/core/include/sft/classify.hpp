#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sft/rational.hpp"

namespace sft::classify {

enum class ClassKind { parent, descendant, union_parent, union_descendant };

std::string to_string(ClassKind k);
std::optional<ClassKind> parse_class_kind(const std::string& s);

/// Scheduling rank within a level: parent < descendant < union-parent <
/// union-descendant.
int kind_rank(ClassKind k);

/// A connected component of the stable-map orbit space, reduced to its
/// bookkeeping data.
struct ModuliClass {
  std::string id;
  ClassKind kind = ClassKind::parent;
  std::optional<int> complexity;  // d-bar, contact mode
  std::optional<int> dj;          // d^J >= -1; -1 encodes an empty intersection
  std::vector<std::string> children;  // union classes: constituent parents
  std::optional<std::string> parent;  // descendants: the class they descend from
  std::vector<std::pair<std::string, std::string>> faces;
  std::optional<int> index;
  int parity = 0;  // 0 even, 1 odd
  friend bool operator==(const ModuliClass&, const ModuliClass&) = default;
};

using Universe = std::vector<ModuliClass>;

/// Throws ValidationError on duplicate ids, dangling references, unions with
/// fewer than two children, or d^J < -1.
void validate(const Universe& u);

ClassKind classify(int n_components, int n_nontrivial_components);

struct LawViolation {
  int law = 0;  // 1 descendant, 2 face inequality, 3 union sum, 4 union descendant
  std::string class_id;
  std::string detail;
};

/// Checks the d^J laws:
///   (1) d^J(descendant) = d^J(parent)
///   (2) d^J(a) >= 1 + d^J(a') + d^J(a'') for every face (a', a'') of a
///   (3) d^J(union) + 1 = sum over children (d^J(c) + 1)
///   (4) d^J(union-descendant) = d^J(union-parent)
std::vector<LawViolation> check_dj_laws(const Universe& u);

enum class ScheduleMode { contact, dj };

/// Induction order. Sort key is (level, kind rank, d^J = -1 first, id) with
/// level = d-bar (contact) or d^J (dj mode); faces (a', a'') are always
/// placed before a. Throws ValidationError on a missing grading field or a
/// face cycle.
std::vector<std::string> induction_schedule(const Universe& u, ScheduleMode mode);

/// True iff every face of every class appears strictly earlier in `order`.
bool respects_faces(const Universe& u, const std::vector<std::string>& order);

// ---------------------------------------------------------------------------
// Multisections

/// Abelian monoid of formal fiber elements with a partial rational scaling.
class FiberMonoid {
 public:
  virtual ~FiberMonoid() = default;
  virtual std::string zero() const = 0;
  virtual std::optional<std::string> add(const std::string& a, const std::string& b) const = 0;
  virtual std::optional<std::string> scale(const Rational& q, const std::string& a) const = 0;
  /// Canonical spelling; throws ValidationError for ids outside the monoid.
  virtual std::string canonical(const std::string& a) const = 0;
};

/// Q^dim with ids spelled "(q1,q2,...)"; "0" is accepted for the origin.
class VectorMonoid final : public FiberMonoid {
 public:
  explicit VectorMonoid(std::size_t dim);
  std::size_t dim() const { return dim_; }
  std::string zero() const override;
  std::optional<std::string> add(const std::string& a, const std::string& b) const override;
  std::optional<std::string> scale(const Rational& q, const std::string& a) const override;
  std::string canonical(const std::string& a) const override;

  std::vector<Rational> parse(const std::string& a) const;
  std::string format(const std::vector<Rational>& v) const;

 private:
  std::size_t dim_;
};

/// Finite monoid given by an explicit addition table; only scaling by 0
/// and 1 is defined.
class TableMonoid final : public FiberMonoid {
 public:
  TableMonoid(std::string zero, std::set<std::string> elements,
              std::map<std::pair<std::string, std::string>, std::string> sums);
  std::string zero() const override { return zero_; }
  std::optional<std::string> add(const std::string& a, const std::string& b) const override;
  std::optional<std::string> scale(const Rational& q, const std::string& a) const override;
  std::string canonical(const std::string& a) const override;

 private:
  std::string zero_;
  std::set<std::string> elements_;
  std::map<std::pair<std::string, std::string>, std::string> sums_;
};

/// Rational weights over fiber elements, summing to exactly 1.
struct Multisection {
  std::map<std::string, Rational> weights;
  /// Elements that are nonzero on some trivial-cylinder component.
  std::set<std::string> nonzero_on_trivial_cylinder;
  friend bool operator==(const Multisection&, const Multisection&) = default;
};

/// Weights in [0,1], total exactly 1, ids canonical. Throws ValidationError.
void validate(const Multisection& m, const FiberMonoid& monoid);

Rational total_weight(const Multisection& m);

/// Lambda_0: all weight on the zero element.
Multisection trivial_multisection(const FiberMonoid& monoid);

/// (L + L')(e) = sum_{e'+e''=e} L(e') L'(e''). An output element is flagged
/// nonzero-on-trivial-cylinder when some contributing summand is.
Multisection convolution(const Multisection& a, const Multisection& b, const FiberMonoid& monoid);

/// (beta . L)(e) = L(e / beta); beta = 0 gives Lambda_0. Throws DomainError
/// when beta * e leaves the fiber set.
Multisection rescale(const Rational& beta, const Multisection& m, const FiberMonoid& monoid);

/// Product of the component weights, or 0 when e is nonzero on a trivial
/// cylinder.
Rational compatibility_eval(std::span<const Rational> parts, bool nonzero_on_trivial_cylinder);

// ---------------------------------------------------------------------------
// Graded functions and the supercommutator

struct GradedFunction {
  int degree = 0;  // 0 even, 1 odd
  std::map<std::string, Rational> values;
  friend bool operator==(const GradedFunction&, const GradedFunction&) = default;
};

/// Even and odd parts of a map on classes, split by class parity.
std::pair<GradedFunction, GradedFunction> split_by_parity(
    const std::map<std::string, Rational>& values, const Universe& u);

/// [g,f]_a = sum over faces (a',a'') of g(a') f(a'') + (-1)^{|g||f|} f(a') g(a'').
/// Satisfies [g,f] = (-1)^{|g||f|} [f,g]. Zero entries are dropped.
GradedFunction super_commutator(const GradedFunction& g, const GradedFunction& f,
                                const Universe& u);

}  // namespace sft::classify
