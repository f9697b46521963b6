#include "sft/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "sft/error.hpp"

namespace sft::io {
namespace {

// A JSON node together with its path, for error messages.
class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError("field '" + (path_.empty() ? std::string("<root>") : path_) + "': " + what);
  }
  const json& raw() const { return j_; }
  const std::string& path() const { return path_; }

  bool has(const std::string& key) const { return j_.is_object() && j_.contains(key) && !j_.at(key).is_null(); }
  Node at(const std::string& key) const {
    if (!j_.is_object()) fail("expected an object");
    if (!j_.contains(key)) Node(j_, child(key)).fail("missing");
    return {j_.at(key), child(key)};
  }
  Node at(std::size_t i) const { return {j_.at(i), path_ + "[" + std::to_string(i) + "]"}; }

  std::vector<Node> items() const {
    if (!j_.is_array()) fail("expected an array");
    std::vector<Node> out;
    for (std::size_t i = 0; i < j_.size(); ++i) out.push_back(at(i));
    return out;
  }
  std::vector<Node> items_or_empty(const std::string& key) const {
    return has(key) ? at(key).items() : std::vector<Node>{};
  }
  std::vector<std::pair<std::string, Node>> entries() const {
    if (!j_.is_object()) fail("expected an object");
    std::vector<std::pair<std::string, Node>> out;
    for (auto it = j_.begin(); it != j_.end(); ++it) out.emplace_back(it.key(), Node(it.value(), child(it.key())));
    return out;
  }

  std::string str() const {
    if (!j_.is_string()) fail("expected a string");
    return j_.get<std::string>();
  }
  double num() const {
    if (!j_.is_number()) fail("expected a number");
    const double v = j_.get<double>();
    if (!std::isfinite(v)) fail("expected a finite number");
    return v;
  }
  long long integer() const {
    if (j_.is_number_integer() || j_.is_number_unsigned()) return j_.get<long long>();
    if (j_.is_number_float()) {
      const double v = j_.get<double>();
      if (std::isfinite(v) && v == std::floor(v)) return static_cast<long long>(v);
    }
    fail("expected an integer");
  }
  int int32() const { return static_cast<int>(integer()); }
  bool boolean() const {
    if (!j_.is_boolean()) fail("expected a boolean");
    return j_.get<bool>();
  }

 private:
  std::string child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  const json& j_;
  std::string path_;
};

Node root(const json& j) { return {j, ""}; }

json ref_json(const surface::PointRef& r) { return {{"point", r.point}, {"component", r.component}}; }
surface::PointRef parse_ref(const Node& n) { return {n.at("point").str(), n.at("component").str()}; }

json refs_json(const std::vector<surface::PointRef>& v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(ref_json(r));
  return a;
}

std::map<std::string, std::string> string_map(const Node& n) {
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : n.entries()) out[k] = v.str();
  return out;
}

}  // namespace

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

// --- surface ---------------------------------------------------------------

json to_json(const surface::NodalSurface& s) {
  json comps = json::array();
  for (const auto& c : s.components) comps.push_back({{"id", c.id}, {"genus", c.genus}});
  json pairs = json::array();
  for (const auto& p : s.nodal_pairs) pairs.push_back({{"x", ref_json(p.x)}, {"y", ref_json(p.y)}});
  return {{"components", comps},
          {"marked", refs_json(s.marked)},
          {"nodal_pairs", pairs},
          {"punctures_neg", refs_json(s.punctures_neg)},
          {"punctures_pos", refs_json(s.punctures_pos)}};
}

surface::NodalSurface parse_surface(const json& j) {
  const Node n = root(j);
  surface::NodalSurface s;
  for (const auto& c : n.at("components").items()) {
    const int g = c.at("genus").int32();
    if (g < 0) c.at("genus").fail("genus must be nonnegative");
    s.components.push_back({c.at("id").str(), g});
  }
  for (const auto& m : n.items_or_empty("marked")) s.marked.push_back(parse_ref(m));
  for (const auto& p : n.items_or_empty("nodal_pairs")) s.nodal_pairs.push_back({parse_ref(p.at("x")), parse_ref(p.at("y"))});
  for (const auto& m : n.items_or_empty("punctures_neg")) s.punctures_neg.push_back(parse_ref(m));
  for (const auto& m : n.items_or_empty("punctures_pos")) s.punctures_pos.push_back(parse_ref(m));
  return s;
}

json to_json(const surface::DecoratedGraph& g) {
  json verts = json::array();
  for (const auto& v : g.vertices) verts.push_back({{"id", v.id}, {"genus", v.genus}, {"marked", v.marked}});
  json edges = json::array();
  for (const auto& [a, b] : g.edges) edges.push_back({a, b});
  return {{"vertices", verts}, {"edges", edges}};
}

surface::DecoratedGraph parse_graph(const json& j) {
  const Node n = root(j);
  surface::DecoratedGraph g;
  for (const auto& v : n.at("vertices").items())
    g.vertices.push_back({v.at("id").str(), v.at("genus").int32(), v.at("marked").int32()});
  for (const auto& e : n.items_or_empty("edges")) {
    const auto ends = e.items();
    if (ends.size() != 2) e.fail("an edge needs exactly two endpoints");
    const auto a = ends[0].integer(), b = ends[1].integer();
    if (a < 0 || b < 0) e.fail("edge endpoints must be nonnegative vertex indices");
    g.edges.emplace_back(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
  }
  g.validate();
  return g;
}

json to_json(const surface::SurfaceAutomorphism& a) {
  return {{"components", a.components}, {"points", a.points}};
}

surface::SurfaceAutomorphism parse_automorphism(const json& j) {
  const Node n = root(j);
  return {string_map(n.at("components")), string_map(n.at("points"))};
}

// --- glue ------------------------------------------------------------------

json to_json(const glue::GluingParameter& a) { return {{"modulus", a.modulus}, {"angle", a.angle}}; }

namespace {
glue::GluingParameter parse_param_node(const Node& n) {
  if (n.raw().is_string()) {
    try {
      return glue::parse_parameter(n.str());
    } catch (const ValidationError& e) {
      n.fail(e.what());
    }
  }
  glue::GluingParameter a{n.at("modulus").num(), n.has("angle") ? n.at("angle").num() : 0.0};
  if (a.modulus < 0) n.at("modulus").fail("modulus must be nonnegative");
  return a;
}
}  // namespace

glue::GluingParameter parse_gluing_parameter(const json& j) { return parse_param_node(root(j)); }

json to_json(const glue::SampledNeckMap& u) {
  json j = {{"s_min", u.s_min},         {"s_max", u.s_max},           {"r_samples", u.r_samples},
            {"t_samples", u.t_samples}, {"target_dim", u.target_dim}, {"values", u.values}};
  if (u.nodal_value) j["nodal_value"] = *u.nodal_value;
  return j;
}

glue::SampledNeckMap parse_neck_map(const json& j) {
  const Node n = root(j);
  glue::SampledNeckMap u;
  u.s_min = n.has("s_min") ? n.at("s_min").num() : 0.0;
  u.s_max = n.has("s_max") ? n.at("s_max").num() : 1.0;
  auto count = [&](const char* key) {
    const auto v = n.at(key).integer();
    if (v < 1) n.at(key).fail("must be a positive integer");
    return static_cast<std::size_t>(v);
  };
  u.r_samples = count("r_samples");
  u.t_samples = count("t_samples");
  u.target_dim = count("target_dim");
  for (const auto& v : n.at("values").items()) u.values.push_back(v.num());
  if (n.has("nodal_value")) {
    std::vector<double> nv;
    for (const auto& v : n.at("nodal_value").items()) nv.push_back(v.num());
    u.nodal_value = nv;
  }
  try {
    u.validate();
  } catch (const ValidationError& e) {
    n.at("values").fail(e.what());
  }
  return u;
}

// --- building ----------------------------------------------------------------

json to_json(const building::Building& b) {
  json floors = json::array();
  for (const auto& f : b.floors)
    floors.push_back({{"surface", to_json(f.surface)},
                      {"trivial_cylinders", f.trivial_cylinders},
                      {"puncture_orbits", f.puncture_orbits}});
  json ifaces = json::array();
  for (const auto& i : b.interfaces) {
    json pairs = json::array();
    for (const auto& p : i.pairs)
      pairs.push_back({{"lower", p.lower}, {"upper", p.upper}, {"period", p.period}, {"orbit", p.orbit}});
    ifaces.push_back({{"pairs", pairs}});
  }
  return {{"floors", floors}, {"interfaces", ifaces}};
}

building::Building parse_building(const json& j) {
  const Node n = root(j);
  building::Building b;
  for (const auto& f : n.at("floors").items()) {
    building::Floor fl;
    try {
      fl.surface = parse_surface(f.at("surface").raw());
    } catch (const ValidationError& e) {
      f.at("surface").fail(e.what());
    }
    for (const auto& c : f.items_or_empty("trivial_cylinders")) fl.trivial_cylinders.insert(c.str());
    if (f.has("puncture_orbits")) fl.puncture_orbits = string_map(f.at("puncture_orbits"));
    b.floors.push_back(std::move(fl));
  }
  for (const auto& i : n.items_or_empty("interfaces")) {
    building::Interface in;
    for (const auto& p : i.items_or_empty("pairs")) {
      building::InterfacePair ip;
      ip.lower = p.at("lower").str();
      ip.upper = p.at("upper").str();
      if (p.has("period")) ip.period = p.at("period").num();
      if (p.has("orbit")) ip.orbit = p.at("orbit").str();
      in.pairs.push_back(ip);
    }
    b.interfaces.push_back(std::move(in));
  }
  return b;
}

json to_json(const building::TotalGluingParameter& p) {
  auto rows = [](const std::vector<std::vector<glue::GluingParameter>>& v) {
    json a = json::array();
    for (const auto& row : v) {
      json r = json::array();
      for (const auto& x : row) r.push_back(to_json(x));
      a.push_back(r);
    }
    return a;
  };
  return {{"floors", rows(p.floors)}, {"interfaces", rows(p.interfaces)}};
}

building::TotalGluingParameter parse_total_parameter(const json& j) {
  const Node n = root(j);
  auto rows = [](const std::vector<Node>& v) {
    std::vector<std::vector<glue::GluingParameter>> out;
    for (const auto& row : v) {
      out.emplace_back();
      for (const auto& x : row.items()) out.back().push_back(parse_param_node(x));
    }
    return out;
  };
  return {rows(n.items_or_empty("floors")), rows(n.items_or_empty("interfaces"))};
}

json to_json(const building::AnchorData& a) {
  json floors = json::array();
  for (const auto& f : a.floors) floors.push_back({{"points", f.points}, {"values", f.values}});
  return {{"floors", floors}};
}

building::AnchorData parse_anchor_data(const json& j) {
  const Node n = root(j);
  building::AnchorData a;
  for (const auto& f : n.at("floors").items()) {
    building::AnchorSet s;
    for (const auto& p : f.items_or_empty("points")) s.points.push_back(p.str());
    for (const auto& v : f.at("values").items()) s.values.push_back(v.num());
    a.floors.push_back(std::move(s));
  }
  return a;
}

// --- classify ----------------------------------------------------------------

json rational_json(const Rational& q) { return sft::to_string(q); }

Rational parse_rational_field(const json& j) {
  const Node n = root(j);
  if (j.is_number_integer()) return Rational(j.get<long long>());
  try {
    return parse_rational(n.str());
  } catch (const ValidationError& e) {
    n.fail(e.what());
  }
}

namespace {
Rational rational_node(const Node& n) {
  if (n.raw().is_number_integer()) return Rational(n.integer());
  try {
    return parse_rational(n.str());
  } catch (const ValidationError& e) {
    n.fail(e.what());
  }
}

classify::ModuliClass class_node(const Node& n) {
  classify::ModuliClass c;
  c.id = n.at("id").str();
  const auto kind = classify::parse_class_kind(n.at("kind").str());
  if (!kind) n.at("kind").fail("unknown class kind (parent, descendant, union-parent, union-descendant)");
  c.kind = *kind;
  if (n.has("complexity")) c.complexity = n.at("complexity").int32();
  if (n.has("dj")) c.dj = n.at("dj").int32();
  for (const auto& ch : n.items_or_empty("children")) c.children.push_back(ch.str());
  if (n.has("parent")) c.parent = n.at("parent").str();
  for (const auto& f : n.items_or_empty("faces")) {
    const auto ends = f.items();
    if (ends.size() != 2) f.fail("a face is a pair [a', a'']");
    c.faces.emplace_back(ends[0].str(), ends[1].str());
  }
  if (n.has("index")) c.index = n.at("index").int32();
  if (n.has("parity")) {
    c.parity = n.at("parity").int32();
    if (c.parity != 0 && c.parity != 1) n.at("parity").fail("parity must be 0 or 1");
  }
  return c;
}
}  // namespace

json to_json(const classify::ModuliClass& c) {
  json j = {{"id", c.id}, {"kind", classify::to_string(c.kind)}, {"children", c.children}, {"parity", c.parity}};
  if (c.complexity) j["complexity"] = *c.complexity;
  if (c.dj) j["dj"] = *c.dj;
  if (c.parent) j["parent"] = *c.parent;
  if (c.index) j["index"] = *c.index;
  json faces = json::array();
  for (const auto& [a, b] : c.faces) faces.push_back({a, b});
  j["faces"] = faces;
  return j;
}

classify::ModuliClass parse_class(const json& j) { return class_node(root(j)); }

json to_json(const classify::Universe& u) {
  json a = json::array();
  for (const auto& c : u) a.push_back(to_json(c));
  return {{"classes", a}};
}

classify::Universe parse_universe(const json& j) {
  const Node n = root(j);
  const auto list = j.is_array() ? n.items() : n.at("classes").items();
  classify::Universe u;
  for (const auto& c : list) u.push_back(class_node(c));
  return u;
}

std::unique_ptr<classify::FiberMonoid> parse_monoid(const json& j) {
  const Node n = root(j);
  const auto type = n.at("type").str();
  if (type == "vector") {
    const auto dim = n.at("dim").integer();
    if (dim < 1) n.at("dim").fail("must be >= 1");
    return std::make_unique<classify::VectorMonoid>(static_cast<std::size_t>(dim));
  }
  if (type == "table") {
    std::set<std::string> elements;
    for (const auto& e : n.items_or_empty("elements")) elements.insert(e.str());
    std::map<std::pair<std::string, std::string>, std::string> sums;
    for (const auto& s : n.items_or_empty("sums")) {
      const auto t = s.items();
      if (t.size() != 3) s.fail("a sum entry is [a, b, a+b]");
      sums[{t[0].str(), t[1].str()}] = t[2].str();
    }
    return std::make_unique<classify::TableMonoid>(n.at("zero").str(), elements, sums);
  }
  n.at("type").fail("unknown monoid type (vector, table)");
}

json to_json(const classify::Multisection& m) {
  json w = json::object();
  for (const auto& [e, q] : m.weights) w[e] = rational_json(q);
  return {{"weights", w}, {"nonzero_on_trivial_cylinder", m.nonzero_on_trivial_cylinder}};
}

classify::Multisection parse_multisection(const json& j) {
  const Node n = root(j);
  classify::Multisection m;
  for (const auto& [e, q] : n.at("weights").entries()) m.weights[e] = rational_node(q);
  for (const auto& e : n.items_or_empty("nonzero_on_trivial_cylinder")) m.nonzero_on_trivial_cylinder.insert(e.str());
  return m;
}

json to_json(const classify::GradedFunction& g) {
  json v = json::object();
  for (const auto& [id, q] : g.values) v[id] = rational_json(q);
  return {{"degree", g.degree}, {"values", v}};
}

classify::GradedFunction parse_graded_function(const json& j) {
  const Node n = root(j);
  classify::GradedFunction g;
  g.degree = n.at("degree").int32();
  if (g.degree != 0 && g.degree != 1) n.at("degree").fail("degree must be 0 or 1");
  for (const auto& [id, q] : n.at("values").entries()) g.values[id] = rational_node(q);
  return g;
}

// --- spectral ----------------------------------------------------------------

json matrix_json(const Eigen::MatrixXd& a) {
  json v = json::array();
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) v.push_back(a(r, c));
  return v;
}

namespace {
Eigen::MatrixXd matrix_node(const Node& n, Eigen::Index dim) {
  std::vector<double> flat;
  if (!n.raw().is_array()) n.fail("expected a row-major matrix");
  for (const auto& x : n.items()) {
    if (x.raw().is_array()) {
      for (const auto& y : x.items()) flat.push_back(y.num());
    } else {
      flat.push_back(x.num());
    }
  }
  const auto size = static_cast<Eigen::Index>(flat.size());
  if (dim < 0) {
    dim = static_cast<Eigen::Index>(std::llround(std::sqrt(double(size))));
    if (dim * dim != size) n.fail("matrix entry count is not a perfect square");
  }
  if (size != dim * dim) n.fail("expected " + std::to_string(dim * dim) + " matrix entries");
  Eigen::MatrixXd a(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) a(r, c) = flat[r * dim + c];
  return a;
}
}  // namespace

Eigen::MatrixXd parse_matrix(const json& j, Eigen::Index dim) { return matrix_node(root(j), dim); }

json to_json(const spectral::AsymptoticOperator& op) {
  json j = {{"dim", op.loop.dim}, {"modes", op.modes}};
  if (op.loop.constant) {
    j["constant"] = matrix_json(*op.loop.constant);
    j["sample_count"] = op.loop.samples;
  } else {
    json s = json::array();
    if (!op.loop.sampled.empty()) {
      for (const auto& m : op.loop.sampled) s.push_back(matrix_json(m));
    } else {
      for (int k = 0; k < op.loop.samples; ++k) s.push_back(matrix_json(op.loop(double(k) / op.loop.samples)));
    }
    j["samples"] = s;
  }
  return j;
}

spectral::AsymptoticOperator parse_operator(const json& j) {
  const Node n = root(j);
  const auto dim = n.at("dim").integer();
  if (dim < 2 || dim % 2) n.at("dim").fail("dimension must be even and >= 2");
  spectral::AsymptoticOperator op;
  if (n.has("modes")) {
    op.modes = n.at("modes").int32();
    if (op.modes < 1) n.at("modes").fail("modes K must be >= 1");
  }
  if (n.has("constant")) {
    int count = 256;
    if (n.has("sample_count")) {
      count = n.at("sample_count").int32();
      if (count < 2) n.at("sample_count").fail("must be >= 2");
    }
    op.loop = spectral::CoefficientLoop::from_constant(matrix_node(n.at("constant"), dim), count);
  } else if (n.has("samples")) {
    std::vector<Eigen::MatrixXd> s;
    for (const auto& m : n.at("samples").items()) s.push_back(matrix_node(m, dim));
    if (s.size() < 2) n.at("samples").fail("need at least 2 samples");
    op.loop = spectral::CoefficientLoop::from_samples(std::move(s));
  } else {
    n.fail("operator needs 'constant' or 'samples'");
  }
  try {
    spectral::validate(op);
  } catch (const ValidationError& e) {
    n.at(n.has("constant") ? "constant" : "samples").fail(e.what());
  }
  return op;
}

json to_json(const spectral::SymplecticPath& p) {
  json m = json::array();
  for (const auto& s : p.samples) m.push_back(matrix_json(s));
  return {{"times", p.times}, {"matrices", m}};
}

spectral::SymplecticPath parse_path(const json& j) {
  const Node n = root(j);
  spectral::SymplecticPath p;
  for (const auto& t : n.at("times").items()) p.times.push_back(t.num());
  Eigen::Index dim = -1;
  for (const auto& m : n.at("matrices").items()) {
    p.samples.push_back(matrix_node(m, dim));
    dim = p.samples.back().rows();
  }
  try {
    spectral::validate(p);
  } catch (const ValidationError& e) {
    n.at("matrices").fail(e.what());
  }
  return p;
}

json to_json(const spectral::PeriodicOrbitRecord& o) {
  return {{"period", o.period}, {"covering", o.covering}, {"return_map", matrix_json(o.return_map)}, {"label", o.label}};
}

spectral::PeriodicOrbitRecord parse_orbit(const json& j) {
  const Node n = root(j);
  spectral::PeriodicOrbitRecord o;
  o.period = n.at("period").num();
  o.covering = n.at("covering").int32();
  o.return_map = matrix_node(n.at("return_map"), -1);
  if (n.has("label")) o.label = n.at("label").str();
  try {
    spectral::validate(o);
  } catch (const ValidationError& e) {
    n.fail(e.what());
  }
  return o;
}

json to_json(const spectral::EllipsoidModel& m) { return {{"a1", m.a1}, {"a2", m.a2}}; }

spectral::EllipsoidModel parse_ellipsoid(const json& j) {
  const Node n = root(j);
  spectral::EllipsoidModel m{n.at("a1").num(), n.at("a2").num()};
  if (!(m.a1 > 0)) n.at("a1").fail("must be positive");
  if (!(m.a2 > 0)) n.at("a2").fail("must be positive");
  return m;
}

// --- average -----------------------------------------------------------------

json to_json(const average::BundleModel& m) {
  return {{"base", average::to_string(m.base)},
          {"bundle", average::to_string(m.bundle)},
          {"effective_parameters", m.effective_parameters},
          {"amplitude", m.amplitude},
          {"family_seed", m.family_seed},
          {"orientation", m.orientation}};
}

average::BundleModel parse_bundle_model(const json& j) {
  const Node n = root(j);
  average::BundleModel m;
  try {
    if (n.has("base")) m.base = average::parse_base(n.at("base").str());
  } catch (const ValidationError& e) {
    n.at("base").fail(e.what());
  }
  try {
    if (n.has("bundle")) m.bundle = average::parse_bundle(n.at("bundle").str());
  } catch (const ValidationError& e) {
    n.at("bundle").fail(e.what());
  }
  if (n.has("effective_parameters")) m.effective_parameters = n.at("effective_parameters").int32();
  if (n.has("amplitude")) m.amplitude = n.at("amplitude").num();
  if (n.has("family_seed")) {
    const auto& raw = n.at("family_seed").raw();
    if (!raw.is_number_unsigned() && !(raw.is_number_integer() && raw.get<long long>() >= 0))
      n.at("family_seed").fail("expected a nonnegative integer");
    m.family_seed = raw.get<std::uint64_t>();
  }
  if (n.has("orientation")) m.orientation = n.at("orientation").int32();
  try {
    average::validate(m);
  } catch (const ValidationError& e) {
    n.fail(e.what());
  }
  return m;
}

json to_json(const average::EulerEstimate& e) {
  return {{"estimate", e.estimate}, {"stderr", e.stderr_},  {"degenerate_rate", e.degenerate_rate},
          {"samples", e.samples},   {"used", e.used},       {"seed", e.seed}};
}

}  // namespace sft::io
