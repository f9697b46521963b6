#include "sft/classify.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "sft/error.hpp"

namespace sft::classify {
namespace {

using Index = std::map<std::string, const ModuliClass*>;

Index index_of(const Universe& u) {
  Index idx;
  for (const auto& c : u) idx[c.id] = &c;
  return idx;
}

int dj_of(const ModuliClass& c) {
  if (!c.dj) throw ValidationError("class '" + c.id + "' has no d^J");
  return *c.dj;
}

}  // namespace

std::string to_string(ClassKind k) {
  switch (k) {
    case ClassKind::parent: return "parent";
    case ClassKind::descendant: return "descendant";
    case ClassKind::union_parent: return "union-parent";
    case ClassKind::union_descendant: return "union-descendant";
  }
  return "?";
}

std::optional<ClassKind> parse_class_kind(const std::string& s) {
  if (s == "parent" || s == "p") return ClassKind::parent;
  if (s == "descendant" || s == "d") return ClassKind::descendant;
  if (s == "union-parent" || s == "union_parent" || s == "up") return ClassKind::union_parent;
  if (s == "union-descendant" || s == "union_descendant" || s == "ud")
    return ClassKind::union_descendant;
  return std::nullopt;
}

int kind_rank(ClassKind k) { return static_cast<int>(k); }

void validate(const Universe& u) {
  const auto idx = index_of(u);
  if (idx.size() != u.size()) throw ValidationError("duplicate class id in universe");
  auto need = [&](const std::string& id, const std::string& from) {
    auto it = idx.find(id);
    if (it == idx.end())
      throw ValidationError("class '" + from + "' references unknown class '" + id + "'");
    return it->second;
  };
  for (const auto& c : u) {
    if (c.dj && *c.dj < -1) throw ValidationError("class '" + c.id + "' has d^J < -1");
    if (c.complexity && *c.complexity < 0)
      throw ValidationError("class '" + c.id + "' has negative complexity");
    if (c.parity != 0 && c.parity != 1) throw ValidationError("class '" + c.id + "' has bad parity");
    for (const auto& [a, b] : c.faces) {
      need(a, c.id);
      need(b, c.id);
    }
    switch (c.kind) {
      case ClassKind::parent:
        break;
      case ClassKind::union_parent:
        if (c.children.size() < 2)
          throw ValidationError("union class '" + c.id + "' needs at least two children");
        for (const auto& ch : c.children)
          if (need(ch, c.id)->kind != ClassKind::parent)
            throw ValidationError("union class '" + c.id + "' has non-parent child '" + ch + "'");
        break;
      case ClassKind::descendant:
      case ClassKind::union_descendant: {
        if (!c.parent) throw ValidationError("descendant class '" + c.id + "' has no parent");
        const auto want = c.kind == ClassKind::descendant ? ClassKind::parent : ClassKind::union_parent;
        if (need(*c.parent, c.id)->kind != want)
          throw ValidationError("class '" + c.id + "' descends from a class of the wrong kind");
        break;
      }
    }
  }
}

ClassKind classify(int n_components, int n_nontrivial) {
  if (n_nontrivial < 1 || n_nontrivial > n_components)
    throw ValidationError("classify needs 1 <= nontrivial components <= components");
  if (n_nontrivial == 1) return n_components == 1 ? ClassKind::parent : ClassKind::descendant;
  return n_nontrivial == n_components ? ClassKind::union_parent : ClassKind::union_descendant;
}

std::vector<LawViolation> check_dj_laws(const Universe& u) {
  validate(u);
  const auto idx = index_of(u);
  std::vector<LawViolation> out;
  for (const auto& c : u) {
    const int d = dj_of(c);
    switch (c.kind) {
      case ClassKind::descendant:
        if (d != dj_of(*idx.at(*c.parent)))
          out.push_back({1, c.id, "d^J differs from parent '" + *c.parent + "'"});
        break;
      case ClassKind::union_descendant:
        if (d != dj_of(*idx.at(*c.parent)))
          out.push_back({4, c.id, "d^J differs from union parent '" + *c.parent + "'"});
        break;
      case ClassKind::union_parent: {
        int sum = 0;
        for (const auto& ch : c.children) sum += dj_of(*idx.at(ch)) + 1;
        if (d + 1 != sum)
          out.push_back({3, c.id, "d^J + 1 = " + std::to_string(d + 1) +
                                      " but children sum to " + std::to_string(sum)});
        break;
      }
      case ClassKind::parent:
        break;
    }
    for (const auto& [a, b] : c.faces) {
      const int bound = 1 + dj_of(*idx.at(a)) + dj_of(*idx.at(b));
      if (d < bound)
        out.push_back({2, c.id, "face (" + a + "," + b + ") needs d^J >= " + std::to_string(bound)});
    }
  }
  return out;
}

std::vector<std::string> induction_schedule(const Universe& u, ScheduleMode mode) {
  validate(u);
  using Key = std::tuple<int, int, int, std::string>;
  std::map<std::string, Key> key;
  for (const auto& c : u) {
    int level = 0;
    if (mode == ScheduleMode::contact) {
      if (!c.complexity) throw ValidationError("class '" + c.id + "' has no complexity (d-bar)");
      level = *c.complexity;
    } else {
      level = dj_of(c);
    }
    const int empty_first = (c.dj && *c.dj == -1) ? 0 : 1;
    key[c.id] = {level, kind_rank(c.kind), empty_first, c.id};
  }

  std::map<std::string, std::set<std::string>> waiting_on;
  std::map<std::string, std::vector<std::string>> unlocks;
  for (const auto& c : u) {
    waiting_on[c.id];
    for (const auto& [a, b] : c.faces)
      for (const auto& dep : {a, b}) {
        if (dep == c.id) throw ValidationError("class '" + c.id + "' is its own face");
        if (waiting_on[c.id].insert(dep).second) unlocks[dep].push_back(c.id);
      }
  }

  std::set<Key> ready;
  for (const auto& [id, deps] : waiting_on)
    if (deps.empty()) ready.insert(key[id]);
  std::vector<std::string> order;
  while (!ready.empty()) {
    const auto id = std::get<3>(*ready.begin());
    ready.erase(ready.begin());
    order.push_back(id);
    for (const auto& next : unlocks[id]) {
      waiting_on[next].erase(id);
      if (waiting_on[next].empty()) ready.insert(key[next]);
    }
  }
  if (order.size() != u.size()) throw ValidationError("face relation contains a cycle");
  return order;
}

bool respects_faces(const Universe& u, const std::vector<std::string>& order) {
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  for (const auto& c : u) {
    if (!pos.count(c.id)) return false;
    for (const auto& [a, b] : c.faces)
      if (!pos.count(a) || !pos.count(b) || pos[a] >= pos[c.id] || pos[b] >= pos[c.id]) return false;
  }
  return true;
}

std::pair<GradedFunction, GradedFunction> split_by_parity(
    const std::map<std::string, Rational>& values, const Universe& u) {
  const auto idx = index_of(u);
  GradedFunction even{0, {}}, odd{1, {}};
  for (const auto& [id, v] : values) {
    auto it = idx.find(id);
    if (it == idx.end()) throw ValidationError("graded function on unknown class '" + id + "'");
    (it->second->parity == 0 ? even : odd).values[id] = v;
  }
  return {even, odd};
}

GradedFunction super_commutator(const GradedFunction& g, const GradedFunction& f,
                                const Universe& u) {
  validate(u);
  auto value = [](const GradedFunction& h, const std::string& id) {
    auto it = h.values.find(id);
    return it == h.values.end() ? Rational(0) : it->second;
  };
  const int sign = (g.degree * f.degree) % 2 == 0 ? 1 : -1;
  GradedFunction out{(g.degree + f.degree) % 2, {}};
  for (const auto& c : u) {
    Rational sum = 0;
    for (const auto& [a1, a2] : c.faces)
      sum += value(g, a1) * value(f, a2) + sign * value(f, a1) * value(g, a2);
    if (sum != 0) out.values[c.id] = sum;
  }
  return out;
}

}  // namespace sft::classify
