#pragma once

// Seeded generators shared by the unit tests and the acceptance suite.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "sft/building.hpp"
#include "sft/classify.hpp"
#include "sft/index.hpp"
#include "sft/linalg.hpp"
#include "sft/spectral.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

// --- buildings ---------------------------------------------------------------------

/// Valid building with `floors` floors. Floor f owns components "f.c<j>";
/// interface i matches the positive punctures of floor i-1 with the negative
/// punctures of floor i in shuffled order.
inline sft::building::Building random_building(Rng& rng, int floors) {
  using sft::surface::PointRef;
  sft::building::Building b;
  std::vector<int> crossing(static_cast<std::size_t>(floors), 0);  // punctures between f and f+1
  for (int f = 0; f + 1 < floors; ++f) crossing[static_cast<std::size_t>(f)] = uniform_int(rng, 1, 3);

  for (int f = 0; f < floors; ++f) {
    sft::building::Floor floor;
    const std::string tag = std::to_string(f) + ".";
    const int comps = uniform_int(rng, 1, 3);
    auto comp = [&] { return tag + "c" + std::to_string(uniform_int(rng, 0, comps - 1)); };
    for (int c = 0; c < comps; ++c) {
      floor.surface.components.push_back({tag + "c" + std::to_string(c), uniform_int(rng, 0, 1)});
      if (uniform_int(rng, 0, 3) == 0) floor.trivial_cylinders.insert(floor.surface.components.back().id);
    }
    const int marked = uniform_int(rng, 0, 3);
    for (int m = 0; m < marked; ++m) floor.surface.marked.push_back({tag + "m" + std::to_string(m), comp()});
    const int nodes = uniform_int(rng, 0, 2);
    for (int d = 0; d < nodes; ++d)
      floor.surface.nodal_pairs.push_back(
          {{tag + "x" + std::to_string(d), comp()}, {tag + "y" + std::to_string(d), comp()}});
    if (f > 0)
      for (int z = 0; z < crossing[static_cast<std::size_t>(f - 1)]; ++z) {
        const std::string id = tag + "n" + std::to_string(z);
        floor.surface.punctures_neg.push_back({id, comp()});
        floor.puncture_orbits[id] = "o" + std::to_string(f) + "." + std::to_string(z);
      }
    if (f + 1 < floors)
      for (int z = 0; z < crossing[static_cast<std::size_t>(f)]; ++z) {
        const std::string id = tag + "p" + std::to_string(z);
        floor.surface.punctures_pos.push_back({id, comp()});
        floor.puncture_orbits[id] = "o" + std::to_string(f + 1) + "." + std::to_string(z);
      }
    b.floors.push_back(floor);
  }
  for (int i = 1; i < floors; ++i) {
    sft::building::Interface in;
    const int n = crossing[static_cast<std::size_t>(i - 1)];
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int z = 0; z < n; ++z) order[static_cast<std::size_t>(z)] = z;
    std::shuffle(order.begin(), order.end(), rng);
    for (int z : order) {
      const std::string label = "o" + std::to_string(i) + "." + std::to_string(z);
      in.pairs.push_back({std::to_string(i - 1) + ".p" + std::to_string(z), std::to_string(i) + ".n" + std::to_string(z),
                          uniform(rng, 0.5, 2.0), label});
    }
    b.interfaces.push_back(in);
  }
  return b;
}

/// Admissible parameter: every interface all zero or all nonzero; floor
/// nodes mixed freely.
inline sft::building::TotalGluingParameter random_admissible_parameter(Rng& rng, const sft::building::Building& b) {
  auto p = sft::building::zero_parameter(b);
  auto nonzero = [&] { return sft::glue::GluingParameter{uniform(rng, 0.01, 0.24), uniform(rng, 0.0, 1.0)}; };
  for (auto& f : p.floors)
    for (auto& a : f)
      if (uniform_int(rng, 0, 1)) a = nonzero();
  for (auto& side : p.interfaces)
    if (uniform_int(rng, 0, 1))
      for (auto& a : side) a = nonzero();
  return p;
}

/// 1 + #nodes + #interface pairs + sum (g - 1): invariant under gluing.
inline int total_arithmetic_genus(const sft::building::Building& b) {
  int g = 1;
  for (const auto& f : b.floors) {
    g += static_cast<int>(f.surface.nodal_pairs.size());
    for (const auto& c : f.surface.components) g += c.genus - 1;
  }
  for (const auto& i : b.interfaces) g += static_cast<int>(i.pairs.size());
  return g;
}

// --- universes ---------------------------------------------------------------------

/// Universe satisfying all four d^J laws with tight face inequalities. Every
/// parent has a descendant and every union-parent a union-descendant, so
/// shifting any single d^J breaks at least one law.
inline sft::classify::Universe lawful_universe(Rng& rng, int parents) {
  using sft::classify::ClassKind;
  using sft::classify::ModuliClass;
  sft::classify::Universe u;
  int serial = 0;
  auto fresh = [&](const char* prefix) { return std::string(prefix) + std::to_string(serial++); };
  auto add_faces = [&](ModuliClass& c) {
    if (*c.dj < 1) return;
    std::vector<std::pair<std::string, std::string>> options;
    for (const auto& a : u)
      for (const auto& b : u)
        if (1 + *a.dj + *b.dj == *c.dj) options.emplace_back(a.id, b.id);
    std::shuffle(options.begin(), options.end(), rng);
    const int n = std::min<int>(static_cast<int>(options.size()), uniform_int(rng, 0, 2));
    c.faces.assign(options.begin(), options.begin() + n);
  };
  auto finish = [&](ModuliClass c) {
    c.complexity = std::max(0, *c.dj) + uniform_int(rng, 0, 1);
    c.parity = uniform_int(rng, 0, 1);
    add_faces(c);
    u.push_back(c);
    return u.back().id;
  };
  std::vector<std::string> parent_ids;
  for (int p = 0; p < parents; ++p) {
    ModuliClass c;
    c.id = fresh("p");
    c.kind = ClassKind::parent;
    c.dj = uniform_int(rng, -1, 3);
    const int dj = *c.dj;
    parent_ids.push_back(finish(c));
    const int descendants = uniform_int(rng, 1, 2);
    for (int d = 0; d < descendants; ++d) {
      ModuliClass dc;
      dc.id = fresh("d");
      dc.kind = ClassKind::descendant;
      dc.parent = parent_ids.back();
      dc.dj = dj;
      finish(dc);
    }
  }
  const int unions = parents >= 2 ? uniform_int(rng, 1, 2) : 0;
  for (int k = 0; k < unions; ++k) {
    ModuliClass c;
    c.id = fresh("u");
    c.kind = ClassKind::union_parent;
    auto pool = parent_ids;
    std::shuffle(pool.begin(), pool.end(), rng);
    const int n = uniform_int(rng, 2, std::min<int>(3, static_cast<int>(pool.size())));
    int sum = 0;
    for (int j = 0; j < n; ++j) {
      c.children.push_back(pool[static_cast<std::size_t>(j)]);
      for (const auto& x : u)
        if (x.id == pool[static_cast<std::size_t>(j)]) sum += *x.dj + 1;
    }
    c.dj = sum - 1;
    const int dj = *c.dj;
    const auto up = finish(c);
    ModuliClass ud;
    ud.id = fresh("w");
    ud.kind = ClassKind::union_descendant;
    ud.parent = up;
    ud.dj = dj;
    finish(ud);
  }
  std::shuffle(u.begin(), u.end(), rng);
  return u;
}

// --- symplectic paths and loops ----------------------------------------------------

inline Eigen::MatrixXd random_symmetric(Rng& rng, Eigen::Index dim, double scale) {
  std::normal_distribution<double> n(0.0, scale);
  Eigen::MatrixXd s(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) s(i, j) = n(rng);
  return (s + s.transpose()) / 2;
}

/// t -> exp(t J0 S) with S symmetric: a symplectic arc from Id.
inline sft::spectral::SymplecticPath exp_path(const Eigen::MatrixXd& s, int intervals) {
  const Eigen::MatrixXd js = sft::linalg::J0(s.rows()) * s;
  return sft::spectral::sample_path([js](double t) { return Eigen::MatrixXd((t * js).exp()); }, intervals);
}

/// Random symplectic matrix exp(J0 S).
inline Eigen::MatrixXd random_symplectic(Rng& rng, Eigen::Index dim, double scale) {
  return Eigen::MatrixXd((sft::linalg::J0(dim) * random_symmetric(rng, dim, scale)).exp());
}

/// Loop at Id: P diag(e^{2 pi i k_j t}) P^{-1} times exp(sin(2 pi t) J0 S).
/// Its Maslov index is sum k_j.
struct RandomLoop {
  sft::spectral::SymplecticPath path;
  int maslov = 0;
};

inline RandomLoop random_loop(Rng& rng, Eigen::Index dim, int intervals) {
  const Eigen::Index m = dim / 2;
  std::vector<int> k(static_cast<std::size_t>(m));
  int total = 0;
  for (auto& x : k) total += x = uniform_int(rng, -2, 2);
  const Eigen::MatrixXd p = random_symplectic(rng, dim, 0.3);
  const Eigen::MatrixXd p_inv = p.inverse();
  const Eigen::MatrixXd js = sft::linalg::J0(dim) * random_symmetric(rng, dim, 0.4);
  auto phi = [=](double t) {
    Eigen::MatrixXd r = Eigen::MatrixXd::Identity(dim, dim);
    for (Eigen::Index j = 0; j < m; ++j) {
      const double a = 2 * std::numbers::pi * k[static_cast<std::size_t>(j)] * t;
      r(2 * j, 2 * j) = std::cos(a);
      r(2 * j, 2 * j + 1) = -std::sin(a);
      r(2 * j + 1, 2 * j) = std::sin(a);
      r(2 * j + 1, 2 * j + 1) = std::cos(a);
    }
    return Eigen::MatrixXd(p * r * p_inv * (std::sin(2 * std::numbers::pi * t) * js).exp());
  };
  auto path = sft::spectral::sample_path(phi, intervals);
  path.samples.back() = Eigen::MatrixXd::Identity(dim, dim);  // exact closure
  return {path, total};
}

/// Unitary loop with one closing winding factor and one contractible factor
/// driven by random trigonometric coefficients.
inline sft::spectral::UnitaryLoop random_unitary_loop(Rng& rng, Eigen::Index m) {
  using cplx = std::complex<double>;
  std::normal_distribution<double> n(0.0, 0.5);
  Eigen::MatrixXcd h(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) h(i, j) = cplx(n(rng), n(rng));
  const Eigen::MatrixXcd skew = (h - h.adjoint()) / 2.0;
  sft::spectral::UnitaryLoop u;
  u.m = m;
  u.factors.push_back({skew, 0.0, {n(rng), n(rng)}, {n(rng), n(rng)}});
  const int w = uniform_int(rng, -2, 2);
  if (w != 0)
    u.factors.push_back({Eigen::MatrixXcd::Identity(m, m) * cplx(0, 2 * std::numbers::pi * w), 1.0, {}, {}});
  return u;
}

/// Coefficient loop B = -J0 C(t) with C symmetric and t-dependent.
inline sft::spectral::CoefficientLoop variable_loop(double amplitude = 1.0) {
  sft::spectral::CoefficientLoop l;
  l.dim = 4;
  l.eval = [amplitude](double t) {
    const double c1 = std::cos(2 * std::numbers::pi * t), s1 = std::sin(2 * std::numbers::pi * t);
    const double c2 = std::cos(4 * std::numbers::pi * t);
    Eigen::MatrixXd c(4, 4);
    c << 1 + 0.3 * c1, 0.2 * s1, 0.1, 0,
         0.2 * s1, -0.5, 0, 0.3 * c2,
         0.1, 0, 0.7, 0.2,
         0, 0.3 * c2, 0.2, -1.2;
    return Eigen::MatrixXd(-sft::linalg::J0(4) * (amplitude * c));
  };
  return l;
}

}  // namespace gen
