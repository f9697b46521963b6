#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sft/error.hpp"
#include "sft/io.hpp"
#include "sft/rotation.hpp"

#ifndef SFT_VERSION
#define SFT_VERSION "0.0.0"
#endif

namespace {

using nlohmann::json;
namespace io = sft::io;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUsage = 2;

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

/// Per-invocation state. Every input that can change the outputs (files,
/// option values) is fed into `material` so the digest identifies the run.
struct Context {
  std::string command;
  std::uint64_t seed = 0;
  std::string material;
  json outputs = json::object();
  std::vector<std::string> diagnostics;
  std::string summary;
  int exit_code = kExitOk;

  json load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw sft::ValidationError("cannot read file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    material += "file:" + std::to_string(text.size()) + ":" + text + "\n";
    try {
      return io::parse_text(text);
    } catch (const sft::ValidationError& e) {
      throw sft::ValidationError(path + ": " + e.what());
    }
  }

  template <class T>
  void arg(const std::string& name, const T& value) {
    std::ostringstream os;
    os.precision(17);
    os << value;
    material += "arg:" + name + "=" + os.str() + "\n";
  }
};

json report(const Context& ctx) {
  json diag = json::array();
  for (const auto& d : ctx.diagnostics) diag.push_back(d);
  return {{"command", ctx.command},
          {"inputs_digest", hex64(fnv1a(ctx.material))},
          {"outputs", ctx.outputs},
          {"diagnostics", diag},
          {"seed", ctx.seed},
          {"version", SFT_VERSION}};
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

sft::glue::GluingProfile profile_of(const std::string& kind) {
  const auto k = sft::glue::parse_profile_kind(kind);
  if (!k) throw sft::ValidationError("unknown profile kind '" + kind + "' (exp, classical)");
  return sft::glue::GluingProfile(*k);
}

// --- surface -----------------------------------------------------------------

void surface_stability(Context& ctx, const std::string& file) {
  const auto s = io::parse_surface(ctx.load(file));
  const auto r = sft::surface::check_stability(s);
  json comps = json::object();
  for (const auto& [id, ok] : r.components) comps[id] = ok;
  ctx.outputs = {{"stable", r.stable}, {"components", comps}};
  for (const auto& [id, ok] : r.components)
    if (!ok) ctx.diagnostics.push_back("component '" + id + "' is unstable");
  ctx.summary = r.stable ? "stable" : "unstable";
  if (!r.stable) ctx.exit_code = kExitError;
}

sft::surface::PointConvention convention(bool dm_data) {
  return dm_data ? sft::surface::PointConvention::dm_data
                 : sft::surface::PointConvention::marked_and_nodal;
}

void surface_type(Context& ctx, const std::string& file, bool dm_data, const std::string& compare) {
  ctx.arg("dm_data", dm_data);
  const auto s = io::parse_surface(ctx.load(file));
  const auto g = sft::surface::nodal_type(s, convention(dm_data));
  ctx.outputs = {{"graph", io::to_json(g)}, {"stable", g.stable()}};
  ctx.summary = std::to_string(g.vertices.size()) + " vertices, " + std::to_string(g.edges.size()) +
                " edges";
  if (!compare.empty()) {
    const auto other = sft::surface::nodal_type(io::parse_surface(ctx.load(compare)), convention(dm_data));
    const auto w = sft::surface::graphs_isomorphic(g, other);
    ctx.outputs["isomorphic"] = w.has_value();
    if (w) ctx.outputs["witness"] = *w;
    ctx.summary += w ? ", isomorphic" : ", not isomorphic";
  }
}

void surface_dim(Context& ctx, const std::string& file, bool dm_data) {
  ctx.arg("dm_data", dm_data);
  const auto s = io::parse_surface(ctx.load(file));
  const int ga = sft::surface::arithmetic_genus(s);
  const int d = sft::surface::deformation_dimension(s, convention(dm_data));
  ctx.outputs = {{"arithmetic_genus", ga}, {"dimension", d}};
  ctx.summary = "g_a = " + std::to_string(ga) + ", dim = " + std::to_string(d);
}

// --- glue ----------------------------------------------------------------------

void glue_profile(Context& ctx, const std::string& kind, std::optional<double> r,
                  std::optional<double> big_r) {
  if (r.has_value() == big_r.has_value())
    throw sft::ValidationError("give exactly one of --r and --R");
  ctx.arg("kind", kind);
  const auto p = profile_of(kind);
  if (r) {
    ctx.arg("r", *r);
    const double v = p(*r);
    ctx.outputs = {{"kind", kind}, {"r", *r}, {"R", v}};
    ctx.summary = "phi(" + fmt(*r) + ") = " + fmt(v);
  } else {
    ctx.arg("R", *big_r);
    const double v = p.inverse(*big_r);
    ctx.outputs = {{"kind", kind}, {"R", *big_r}, {"r", v}};
    ctx.summary = "phi^-1(" + fmt(*big_r) + ") = " + fmt(v);
  }
}

void glue_neck(Context& ctx, const std::string& a_text, const std::string& kind) {
  ctx.arg("a", a_text);
  ctx.arg("kind", kind);
  const auto a = sft::glue::parse_parameter(a_text);
  const auto n = sft::glue::glue_neck(a, profile_of(kind));
  ctx.outputs = {{"parameter", io::to_json(a)}, {"unglued", !n.has_value()}};
  if (n) {
    ctx.outputs["length"] = n->length;
    ctx.outputs["angle"] = n->angle;
    ctx.summary = "R = " + fmt(n->length) + ", theta = " + fmt(n->angle) + " turns";
  } else {
    ctx.summary = "a = 0: nodal, no neck";
  }
}

void glue_average(Context& ctx, const std::string& file, const std::string& a_text,
                  const std::string& kind, const std::string& chart) {
  ctx.arg("a", a_text);
  ctx.arg("kind", kind);
  ctx.arg("chart", chart);
  sft::glue::Chart c;
  if (chart == "positive")
    c = sft::glue::Chart::positive;
  else if (chart == "negative")
    c = sft::glue::Chart::negative;
  else
    throw sft::ValidationError("unknown chart '" + chart + "' (positive, negative)");
  const auto u = io::parse_neck_map(ctx.load(file));
  const auto avg = sft::glue::middle_loop_average(u, sft::glue::parse_parameter(a_text), profile_of(kind), c);
  ctx.outputs = {{"average", avg}};
  ctx.summary = "average = [";
  for (std::size_t i = 0; i < avg.size(); ++i) ctx.summary += (i ? ", " : "") + fmt(avg[i]);
  ctx.summary += "]";
}

void glue_plus(Context& ctx, const std::string& plus, const std::string& minus,
               const std::string& a_text, const std::string& kind) {
  ctx.arg("a", a_text);
  ctx.arg("kind", kind);
  const auto up = io::parse_neck_map(ctx.load(plus));
  const auto um = io::parse_neck_map(ctx.load(minus));
  const auto r = sft::glue::plus_glue(up, um, sft::glue::parse_parameter(a_text), profile_of(kind));
  if (const auto* g = std::get_if<sft::glue::SampledNeckMap>(&r)) {
    ctx.outputs = {{"unglued", false}, {"map", io::to_json(*g)}};
    ctx.summary = "glued map on [" + fmt(g->s_min) + ", " + fmt(g->s_max) + "]";
  } else {
    const auto& p = std::get<sft::glue::UngluedPair>(r);
    ctx.outputs = {{"unglued", true}, {"positive", io::to_json(p.positive)}, {"negative", io::to_json(p.negative)}};
    ctx.summary = "a = 0: pair returned unglued";
  }
}

// --- building --------------------------------------------------------------------

void building_degeneracy(Context& ctx, const std::string& file) {
  const auto b = io::parse_building(ctx.load(file));
  const int d = sft::building::degeneracy(b);
  ctx.outputs = {{"degeneracy", d}, {"floors", b.floors.size()}};
  ctx.summary = "degeneracy = " + std::to_string(d);
}

void building_glue(Context& ctx, const std::string& bfile, const std::string& pfile) {
  const auto b = io::parse_building(ctx.load(bfile));
  const auto p = io::parse_total_parameter(ctx.load(pfile));
  sft::building::validate_shape(b, p);
  if (!sft::building::is_admissible(b, p))
    throw sft::DomainError("parameter is not admissible: some interface is neither all zero nor nowhere zero");
  const auto nt = sft::building::nontrivial_interfaces(b, p);
  const auto g = sft::building::glue_building(b, p);
  ctx.outputs = {{"nontrivial_interfaces", nt},
                 {"degeneracy", sft::building::degeneracy(g)},
                 {"building", io::to_json(g)}};
  ctx.summary = "glued building with " + std::to_string(g.floors.size()) + " floor(s)";
}

void building_faces(Context& ctx, const std::string& file) {
  const auto b = io::parse_building(ctx.load(file));
  json list = json::array();
  for (const auto& s : sft::building::faces(b))
    list.push_back({{"interface", s.interface}, {"lower", io::to_json(s.lower)}, {"upper", io::to_json(s.upper)}});
  ctx.outputs = {{"face_count", sft::building::face_count(b)}, {"faces", list}};
  ctx.summary = std::to_string(list.size()) + " face(s)";
}

// --- classify ----------------------------------------------------------------------

void classify_laws(Context& ctx, const std::string& file) {
  const auto u = io::parse_universe(ctx.load(file));
  sft::classify::validate(u);
  json v = json::array();
  for (const auto& x : sft::classify::check_dj_laws(u)) {
    v.push_back({{"law", x.law}, {"class", x.class_id}, {"detail", x.detail}});
    ctx.diagnostics.push_back("law " + std::to_string(x.law) + " fails at '" + x.class_id + "': " + x.detail);
  }
  ctx.outputs = {{"ok", v.empty()}, {"violations", v}};
  ctx.summary = v.empty() ? "all d^J laws hold" : std::to_string(v.size()) + " violation(s)";
}

void classify_schedule(Context& ctx, const std::string& file, const std::string& mode) {
  ctx.arg("mode", mode);
  sft::classify::ScheduleMode m;
  if (mode == "contact")
    m = sft::classify::ScheduleMode::contact;
  else if (mode == "dj")
    m = sft::classify::ScheduleMode::dj;
  else
    throw sft::ValidationError("unknown schedule mode '" + mode + "' (contact, dj)");
  const auto u = io::parse_universe(ctx.load(file));
  sft::classify::validate(u);
  const auto order = sft::classify::induction_schedule(u, m);
  ctx.outputs = {{"order", order}, {"respects_faces", sft::classify::respects_faces(u, order)}};
  for (std::size_t i = 0; i < order.size(); ++i) ctx.summary += (i ? " " : "") + order[i];
}

/// Monoid from --monoid, else the first file's "monoid" field, else Q^dim.
std::unique_ptr<sft::classify::FiberMonoid> monoid_for(Context& ctx, const json& first,
                                                       const std::string& monoid_file, int dim) {
  if (!monoid_file.empty()) return io::parse_monoid(ctx.load(monoid_file));
  if (first.is_object() && first.contains("monoid")) return io::parse_monoid(first.at("monoid"));
  ctx.arg("dim", dim);
  if (dim < 1) throw sft::ValidationError("--dim must be >= 1");
  return std::make_unique<sft::classify::VectorMonoid>(static_cast<std::size_t>(dim));
}

void finish_multisection(Context& ctx, const sft::classify::Multisection& m) {
  const auto total = sft::classify::total_weight(m);
  ctx.outputs = {{"multisection", io::to_json(m)}, {"total_weight", io::rational_json(total)}};
  ctx.summary = std::to_string(m.weights.size()) + " element(s), total weight " + sft::to_string(total);
}

void classify_convolve(Context& ctx, const std::string& fa, const std::string& fb,
                       const std::string& monoid_file, int dim) {
  const json ja = ctx.load(fa);
  const json jb = ctx.load(fb);
  const auto monoid = monoid_for(ctx, ja, monoid_file, dim);
  const auto a = io::parse_multisection(ja);
  const auto b = io::parse_multisection(jb);
  sft::classify::validate(a, *monoid);
  sft::classify::validate(b, *monoid);
  finish_multisection(ctx, sft::classify::convolution(a, b, *monoid));
}

void classify_rescale(Context& ctx, const std::string& file, const std::string& beta,
                      const std::string& monoid_file, int dim) {
  ctx.arg("beta", beta);
  const json j = ctx.load(file);
  const auto monoid = monoid_for(ctx, j, monoid_file, dim);
  const auto m = io::parse_multisection(j);
  sft::classify::validate(m, *monoid);
  finish_multisection(ctx, sft::classify::rescale(sft::parse_rational(beta), m, *monoid));
}

// --- spectral ------------------------------------------------------------------------

void spectral_cz(Context& ctx, const std::string& file) {
  const auto p = io::parse_path(ctx.load(file));
  const int cz = sft::spectral::cz_index(p);
  ctx.outputs = {{"cz", cz}, {"dim", p.dim()}, {"samples", p.samples.size()}};
  ctx.summary = "CZ = " + std::to_string(cz);
}

void spectral_maslov(Context& ctx, const std::string& file) {
  const auto p = io::parse_path(ctx.load(file));
  const int mu = sft::spectral::maslov_index(p);
  ctx.outputs = {{"maslov", mu}, {"dim", p.dim()}};
  ctx.summary = "Maslov = " + std::to_string(mu);
}

sft::spectral::AsymptoticOperator load_operator(Context& ctx, const std::string& file, int modes) {
  auto op = io::parse_operator(ctx.load(file));
  if (modes > 0) {
    ctx.arg("modes", modes);
    op.modes = modes;
  }
  return op;
}

void spectral_spectrum(Context& ctx, const std::string& file, int modes) {
  const auto op = load_operator(ctx, file, modes);
  const auto ev = sft::spectral::spectrum(op);
  ctx.outputs = {{"modes", op.modes}, {"size", ev.size()}, {"eigenvalues", ev}};
  ctx.summary = std::to_string(ev.size()) + " eigenvalues, K = " + std::to_string(op.modes);
}

void spectral_gap_cmd(Context& ctx, const std::string& file, int modes) {
  const auto op = load_operator(ctx, file, modes);
  const auto g = sft::spectral::spectral_gap(op);
  ctx.outputs = {{"modes", op.modes},     {"lower", g.lower},   {"upper", g.upper},
                 {"degenerate", g.degenerate}, {"radius", g.radius()}, {"capped_radius", g.capped_radius()}};
  if (g.degenerate) {
    ctx.diagnostics.push_back("0 is an eigenvalue: no weight can be selected");
    ctx.summary = "degenerate: 0 in spectrum";
  } else {
    ctx.outputs["weight"] = sft::spectral::weight_selector(g);
    ctx.summary = "gap (" + fmt(g.lower) + ", " + fmt(g.upper) + ")";
  }
}

void spectral_parity(Context& ctx, const std::string& file, int n) {
  if (n >= 0) ctx.arg("n", n);
  const auto p = io::parse_path(ctx.load(file));
  const auto r = sft::spectral::parity_check(p, n);
  ctx.outputs = {{"cz", r.cz},           {"n", r.n},
                 {"parity_bit", r.parity_bit}, {"sign_det", r.sign_det},
                 {"consistent", r.consistent}};
  ctx.summary = "CZ = " + std::to_string(r.cz) + ", sign det(Id - A) = " + std::to_string(r.sign_det) +
                (r.consistent ? ", consistent" : ", INCONSISTENT");
  if (!r.consistent) ctx.diagnostics.push_back("parity relation fails");
}

void orbit_record(Context& ctx, const json& j) {
  const auto o = io::parse_orbit(j);
  Eigen::MatrixXd simple = o.return_map;
  if (o.covering > 1) {
    if (!j.contains("simple_return_map"))
      throw sft::ValidationError("field 'simple_return_map': required when covering > 1");
    simple = io::parse_matrix(j.at("simple_return_map"), o.return_map.rows());
  }
  const bool nondeg = sft::spectral::is_nondegenerate(o.return_map, 1);
  const auto rot = sft::spectral::rotation_data(o.return_map);
  ctx.outputs = {{"label", o.label},         {"covering", o.covering},
                 {"nondegenerate", nondeg},  {"rho", {rot.rho.real(), rot.rho.imag()}},
                 {"krein_angles", rot.krein_angles}};
  if (nondeg) {
    const int neg = sft::spectral::negative_real_count(simple);
    const bool bad = sft::spectral::is_bad_orbit(o, simple);
    ctx.outputs["negative_real_count"] = neg;
    ctx.outputs["bad"] = bad;
    ctx.summary = (o.label.empty() ? std::string("orbit") : o.label) + (bad ? ": bad" : ": good");
  } else {
    ctx.diagnostics.push_back("return map has eigenvalue 1");
    ctx.summary = "degenerate orbit";
  }
}

void orbit_model(Context& ctx, const json& j, int points, double shift) {
  ctx.arg("points", points);
  ctx.arg("shift", shift);
  if (points < 1) throw sft::ValidationError("--points must be >= 1");
  if (!(shift > 0)) throw sft::ValidationError("--shift must be positive");
  const auto m = io::parse_ellipsoid(j);
  const auto r = sft::spectral::model_contact_check(m, sft::spectral::tanh_shift(shift), points, ctx.seed);
  json orbits = json::array();
  for (int which = 1; which <= 2; ++which) {
    json o = {{"axis", which},
              {"period", which == 1 ? m.a1 : m.a2},
              {"measured_period", sft::spectral::measure_period(m, which)}};
    try {
      o["cz"] = sft::spectral::cz_index(sft::spectral::linearized_return_path(m, which));
    } catch (const sft::DomainError& e) {
      o["cz"] = nullptr;
      ctx.diagnostics.push_back("axis " + std::to_string(which) + ": " + e.what());
    }
    orbits.push_back(o);
  }
  ctx.outputs = {{"model", io::to_json(m)},
                 {"lambda_residual", r.lambda_residual},
                 {"dlambda_residual", r.dlambda_residual},
                 {"min_q", r.min_q},
                 {"q_positive", r.min_q > 0},
                 {"points", r.points},
                 {"orbits", orbits}};
  ctx.summary = "lambda(R) - 1: " + fmt(r.lambda_residual) + ", i_R dlambda: " + fmt(r.dlambda_residual) +
                ", min Q = " + fmt(r.min_q);
}

/// Orbit records carry "return_map"; ellipsoid models carry "a1", "a2".
void spectral_orbit(Context& ctx, const std::string& file, int points, double shift) {
  const json j = ctx.load(file);
  if (j.is_object() && j.contains("return_map"))
    orbit_record(ctx, j);
  else
    orbit_model(ctx, j, points, shift);
}

// --- euler-demo ------------------------------------------------------------------

void euler_demo(Context& ctx, const std::string& model, int n, int samples) {
  ctx.arg("model", model);
  ctx.arg("n", n);
  ctx.arg("samples", samples);
  sft::average::BundleModel m;
  if (model == "ts2") {
    m.base = sft::average::Base::sphere;
    m.bundle = sft::average::Bundle::tangent;
  } else if (model == "trivial") {
    m.base = sft::average::Base::sphere;
    m.bundle = sft::average::Bundle::trivial;
  } else if (model == "torus") {
    m.base = sft::average::Base::torus;
    m.bundle = sft::average::Bundle::tangent;
  } else {
    throw sft::ValidationError("unknown model '" + model + "' (ts2, trivial, torus)");
  }
  const auto e = sft::average::averaged_euler(m, n, samples, ctx.seed);
  ctx.outputs = io::to_json(e);
  ctx.outputs["model"] = io::to_json(m);
  ctx.outputs["n"] = n;
  ctx.summary = "Euler estimate " + fmt(e.estimate) + " +- " + fmt(e.stderr_) + " (" +
                std::to_string(e.used) + "/" + std::to_string(e.samples) + " samples)";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sft: gluing, index and averaging toolkit"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  app.fallthrough();  // inherited: --seed is accepted after any subcommand
  app.set_version_flag("--version", SFT_VERSION);

  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "random seed (default 0)")->capture_default_str();

  std::function<void(Context&)> action;
  std::string command;
  auto bind = [&](CLI::App* sub, std::string name, std::function<void(Context&)> fn) {
    sub->callback([&action, &command, name = std::move(name), fn = std::move(fn)] {
      command = name;
      action = fn;
    });
  };

  // Option storage shared by the subcommands below.
  std::string f1, f2, a_text, kind = "exp", chart = "positive", mode = "contact", compare, monoid_file,
                      beta, model = "ts2";
  bool dm_data = false;
  std::optional<double> r, big_r;
  int modes = 0, n_opt = -1, dim = 1, points = 1000, n_euler = 2, samples = 10000;
  double shift = 0.5;

  auto* surface = app.add_subcommand("surface", "nodal surfaces")->require_subcommand(1);
  {
    auto* s = surface->add_subcommand("stability", "stability of every component (exit 1 if unstable)");
    s->add_option("file", f1, "surface JSON")->required();
    bind(s, "surface stability", [&](Context& c) { surface_stability(c, f1); });

    s = surface->add_subcommand("type", "nodal type as a decorated graph");
    s->add_option("file", f1, "surface JSON")->required();
    s->add_flag("--dm-data", dm_data, "count punctures as marked points");
    s->add_option("--compare", compare, "second surface; report graph isomorphism");
    bind(s, "surface type", [&](Context& c) { surface_type(c, f1, dm_data, compare); });

    s = surface->add_subcommand("dim", "arithmetic genus and deformation dimension");
    s->add_option("file", f1, "surface JSON")->required();
    s->add_flag("--dm-data", dm_data, "count punctures as marked points");
    bind(s, "surface dim", [&](Context& c) { surface_dim(c, f1, dm_data); });
  }

  auto* glue = app.add_subcommand("glue", "gluing parameters and necks")->require_subcommand(1);
  {
    auto* s = glue->add_subcommand("profile", "evaluate the gluing profile or its inverse");
    s->add_option("--kind", kind, "exp or classical")->capture_default_str();
    s->add_option("--r", r, "modulus");
    s->add_option("--R", big_r, "neck length");
    bind(s, "glue profile", [&](Context& c) { glue_profile(c, kind, r, big_r); });

    s = glue->add_subcommand("neck", "neck length and twist of a gluing parameter");
    s->add_option("--a", a_text, "parameter 'modulus@turns'")->required();
    s->add_option("--kind", kind, "exp or classical")->capture_default_str();
    bind(s, "glue neck", [&](Context& c) { glue_neck(c, a_text, kind); });

    s = glue->add_subcommand("average", "middle loop average of a sampled neck map");
    s->add_option("map", f1, "sampled map JSON")->required();
    s->add_option("--a", a_text, "parameter 'modulus@turns'")->required();
    s->add_option("--kind", kind, "exp or classical")->capture_default_str();
    s->add_option("--chart", chart, "positive or negative")->capture_default_str();
    bind(s, "glue average", [&](Context& c) { glue_average(c, f1, a_text, kind, chart); });

    s = glue->add_subcommand("plusglue", "glue two half-cylinder maps across a neck");
    s->add_option("plus", f1, "map on [0, R]")->required();
    s->add_option("minus", f2, "map on [-R, 0]")->required();
    s->add_option("--a", a_text, "parameter 'modulus@turns'")->required();
    s->add_option("--kind", kind, "exp or classical")->capture_default_str();
    bind(s, "glue plusglue", [&](Context& c) { glue_plus(c, f1, f2, a_text, kind); });
  }

  auto* building = app.add_subcommand("building", "Riemann surface buildings")->require_subcommand(1);
  {
    auto* s = building->add_subcommand("degeneracy", "number of floors minus one");
    s->add_option("file", f1, "building JSON")->required();
    bind(s, "building degeneracy", [&](Context& c) { building_degeneracy(c, f1); });

    s = building->add_subcommand("glue", "glue a building with a total gluing parameter");
    s->add_option("building", f1, "building JSON")->required();
    s->add_option("params", f2, "total gluing parameter JSON")->required();
    bind(s, "building glue", [&](Context& c) { building_glue(c, f1, f2); });

    s = building->add_subcommand("faces", "codimension-one splittings");
    s->add_option("file", f1, "building JSON")->required();
    bind(s, "building faces", [&](Context& c) { building_faces(c, f1); });
  }

  auto* classify = app.add_subcommand("classify", "moduli classes and multisections")->require_subcommand(1);
  {
    auto* s = classify->add_subcommand("laws", "check the d^J laws");
    s->add_option("file", f1, "universe JSON")->required();
    bind(s, "classify laws", [&](Context& c) { classify_laws(c, f1); });

    s = classify->add_subcommand("schedule", "induction order");
    s->add_option("file", f1, "universe JSON")->required();
    s->add_option("--mode", mode, "contact or dj")->capture_default_str();
    bind(s, "classify schedule", [&](Context& c) { classify_schedule(c, f1, mode); });

    s = classify->add_subcommand("convolve", "convolution of two multisections");
    s->add_option("a", f1, "multisection JSON")->required();
    s->add_option("b", f2, "multisection JSON")->required();
    s->add_option("--monoid", monoid_file, "fiber monoid JSON");
    s->add_option("--dim", dim, "dimension of the default vector monoid")->capture_default_str();
    bind(s, "classify convolve", [&](Context& c) { classify_convolve(c, f1, f2, monoid_file, dim); });

    s = classify->add_subcommand("rescale", "rescale a multisection by a rational");
    s->add_option("file", f1, "multisection JSON")->required();
    s->add_option("--beta", beta, "rational factor, e.g. 1/2")->required();
    s->add_option("--monoid", monoid_file, "fiber monoid JSON");
    s->add_option("--dim", dim, "dimension of the default vector monoid")->capture_default_str();
    bind(s, "classify rescale", [&](Context& c) { classify_rescale(c, f1, beta, monoid_file, dim); });
  }

  auto add_spectral = [&](CLI::App* parent, const std::string& prefix) {
    auto* s = parent->add_subcommand("cz", "Conley-Zehnder index of a symplectic path");
    s->add_option("path", f1, "path JSON")->required();
    bind(s, prefix + "cz", [&](Context& c) { spectral_cz(c, f1); });

    s = parent->add_subcommand("spectrum", "Galerkin spectrum of an asymptotic operator");
    s->add_option("op", f1, "operator JSON")->required();
    s->add_option("--modes", modes, "override the Fourier cutoff K");
    bind(s, prefix + "spectrum", [&](Context& c) { spectral_spectrum(c, f1, modes); });

    s = parent->add_subcommand("gap", "spectral gap around 0 and the selected weight");
    s->add_option("op", f1, "operator JSON")->required();
    s->add_option("--modes", modes, "override the Fourier cutoff K");
    bind(s, prefix + "gap", [&](Context& c) { spectral_gap_cmd(c, f1, modes); });
  };

  auto* spectral = app.add_subcommand("spectral", "indices and asymptotic operators")->require_subcommand(1);
  {
    add_spectral(spectral, "spectral ");

    auto* s = spectral->add_subcommand("maslov", "Maslov index of a symplectic loop");
    s->add_option("path", f1, "loop JSON")->required();
    bind(s, "spectral maslov", [&](Context& c) { spectral_maslov(c, f1); });

    s = spectral->add_subcommand("parity", "check (-1)^(CZ+n+1) = sign det(Id - A)");
    s->add_option("path", f1, "path JSON")->required();
    s->add_option("--n", n_opt, "n in the parity relation (default dim/2 + 1)");
    bind(s, "spectral parity", [&](Context& c) { spectral_parity(c, f1, n_opt); });

    s = spectral->add_subcommand("orbit", "orbit record (good/bad) or ellipsoid model check");
    s->add_option("file", f1, "orbit or model JSON")->required();
    s->add_option("--points", points, "sample points for the model check")->capture_default_str();
    s->add_option("--shift", shift, "c in phi(s) = c tanh(s)")->capture_default_str();
    bind(s, "spectral orbit", [&](Context& c) { spectral_orbit(c, f1, points, shift); });
  }

  add_spectral(&app, "");
  auto* orbit = app.add_subcommand("orbit", "periodic orbits")->require_subcommand(1);
  {
    auto* s = orbit->add_subcommand("check", "orbit record (good/bad) or ellipsoid model check");
    s->add_option("file", f1, "orbit or model JSON")->required();
    s->add_option("--points", points, "sample points for the model check")->capture_default_str();
    s->add_option("--shift", shift, "c in phi(s) = c tanh(s)")->capture_default_str();
    bind(s, "orbit check", [&](Context& c) { spectral_orbit(c, f1, points, shift); });
  }

  {
    auto* s = app.add_subcommand("euler-demo", "Monte Carlo averaged Euler number");
    s->add_option("--model", model, "ts2, trivial or torus")->capture_default_str();
    s->add_option("--n", n_euler, "number of averaging parameters N")->capture_default_str();
    s->add_option("--samples", samples, "Monte Carlo samples")->capture_default_str();
    bind(s, "euler-demo", [&](Context& c) { euler_demo(c, model, n_euler, samples); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  Context ctx;
  ctx.command = command;
  ctx.seed = seed;
  ctx.material = "command:" + command + "\nseed:" + std::to_string(seed) + "\n";
  try {
    action(ctx);
  } catch (const sft::ValidationError& e) {
    ctx.outputs = nullptr;
    ctx.diagnostics.push_back(std::string("validation error: ") + e.what());
    ctx.exit_code = kExitError;
  } catch (const sft::DomainError& e) {
    ctx.outputs = nullptr;
    ctx.diagnostics.push_back(std::string("domain error: ") + e.what());
    ctx.exit_code = kExitError;
  } catch (const sft::NumericalError& e) {
    ctx.outputs = nullptr;
    ctx.diagnostics.push_back(std::string("numerical error: ") + e.what());
    ctx.exit_code = kExitError;
  }

  std::cout << report(ctx).dump(2) << "\n";
  if (!ctx.summary.empty()) std::cerr << command << ": " << ctx.summary << "\n";
  for (const auto& d : ctx.diagnostics) std::cerr << command << ": " << d << "\n";
  return ctx.exit_code;
}
