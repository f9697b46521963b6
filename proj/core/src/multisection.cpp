#include <sstream>

#include "sft/classify.hpp"
#include "sft/error.hpp"

namespace sft::classify {

VectorMonoid::VectorMonoid(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw ValidationError("vector monoid needs dim >= 1");
}

std::vector<Rational> VectorMonoid::parse(const std::string& a) const {
  if (a == "0") return std::vector<Rational>(dim_, 0);
  if (a.size() < 2 || a.front() != '(' || a.back() != ')')
    throw ValidationError("fiber element '" + a + "' is not of the form (q1,...,qn)");
  std::vector<Rational> v;
  std::stringstream ss(a.substr(1, a.size() - 2));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    v.push_back(parse_rational(item));
  }
  if (v.size() != dim_)
    throw ValidationError("fiber element '" + a + "' has dimension " + std::to_string(v.size()) +
                          ", expected " + std::to_string(dim_));
  return v;
}

std::string VectorMonoid::format(const std::vector<Rational>& v) const {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += sft::to_string(v[i]);
  }
  return out + ")";
}

std::string VectorMonoid::zero() const { return format(std::vector<Rational>(dim_, 0)); }

std::optional<std::string> VectorMonoid::add(const std::string& a, const std::string& b) const {
  auto x = parse(a);
  const auto y = parse(b);
  for (std::size_t i = 0; i < dim_; ++i) x[i] += y[i];
  return format(x);
}

std::optional<std::string> VectorMonoid::scale(const Rational& q, const std::string& a) const {
  auto x = parse(a);
  for (auto& c : x) c *= q;
  return format(x);
}

std::string VectorMonoid::canonical(const std::string& a) const { return format(parse(a)); }

TableMonoid::TableMonoid(std::string zero, std::set<std::string> elements,
                         std::map<std::pair<std::string, std::string>, std::string> sums)
    : zero_(std::move(zero)), elements_(std::move(elements)), sums_(std::move(sums)) {
  elements_.insert(zero_);
  for (const auto& [k, v] : sums_)
    if (!elements_.count(k.first) || !elements_.count(k.second) || !elements_.count(v))
      throw ValidationError("addition table mentions an element outside the monoid");
}

std::optional<std::string> TableMonoid::add(const std::string& a, const std::string& b) const {
  if (a == zero_) return b;
  if (b == zero_) return a;
  if (auto it = sums_.find({a, b}); it != sums_.end()) return it->second;
  if (auto it = sums_.find({b, a}); it != sums_.end()) return it->second;
  return std::nullopt;
}

std::optional<std::string> TableMonoid::scale(const Rational& q, const std::string& a) const {
  if (q == 0) return zero_;
  if (q == 1 || a == zero_) return a;
  return std::nullopt;
}

std::string TableMonoid::canonical(const std::string& a) const {
  if (!elements_.count(a)) throw ValidationError("fiber element '" + a + "' is not in the monoid");
  return a;
}

void validate(const Multisection& m, const FiberMonoid& monoid) {
  Rational total = 0;
  for (const auto& [e, w] : m.weights) {
    if (monoid.canonical(e) != e)
      throw ValidationError("fiber element '" + e + "' is not canonical (use '" +
                            monoid.canonical(e) + "')");
    if (w < 0 || w > 1) throw ValidationError("weight of '" + e + "' is outside [0,1]");
    total += w;
  }
  if (total != 1) throw ValidationError("multisection weights sum to " + sft::to_string(total) + ", not 1");
}

Rational total_weight(const Multisection& m) {
  Rational total = 0;
  for (const auto& [e, w] : m.weights) total += w;
  return total;
}

Multisection trivial_multisection(const FiberMonoid& monoid) {
  Multisection m;
  m.weights[monoid.zero()] = 1;
  return m;
}

Multisection convolution(const Multisection& a, const Multisection& b, const FiberMonoid& monoid) {
  Multisection out;
  for (const auto& [e1, w1] : a.weights) {
    if (w1 == 0) continue;
    for (const auto& [e2, w2] : b.weights) {
      if (w2 == 0) continue;
      auto sum = monoid.add(e1, e2);
      if (!sum) throw DomainError("fiber addition undefined for '" + e1 + "' + '" + e2 + "'");
      out.weights[*sum] += w1 * w2;
      if (a.nonzero_on_trivial_cylinder.count(e1) || b.nonzero_on_trivial_cylinder.count(e2))
        out.nonzero_on_trivial_cylinder.insert(*sum);
    }
  }
  return out;
}

Multisection rescale(const Rational& beta, const Multisection& m, const FiberMonoid& monoid) {
  if (beta == 0) return trivial_multisection(monoid);
  Multisection out;
  for (const auto& [e, w] : m.weights) {
    if (w == 0) continue;
    // weight previously at e now sits at beta * e, so that out(x) = m(x / beta)
    auto moved = monoid.scale(beta, e);
    if (!moved) throw DomainError("rescaling moves '" + e + "' outside the fiber set");
    out.weights[*moved] += w;
    if (m.nonzero_on_trivial_cylinder.count(e)) out.nonzero_on_trivial_cylinder.insert(*moved);
  }
  return out;
}

Rational compatibility_eval(std::span<const Rational> parts, bool nonzero_on_trivial_cylinder) {
  if (nonzero_on_trivial_cylinder) return 0;
  Rational product = 1;
  for (const auto& w : parts) product *= w;
  return product;
}

}  // namespace sft::classify
