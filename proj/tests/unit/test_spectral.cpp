#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "sft/error.hpp"
#include "sft/jacobi.hpp"
#include "sft/linalg.hpp"
#include "sft/spectral.hpp"

using namespace sft::spectral;
using doctest::Approx;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;

namespace {

constexpr double kPi = std::numbers::pi;

MatrixXcd random_hermitian(gen::Rng& rng, Eigen::Index n) {
  std::normal_distribution<double> d(0.0, 1.0);
  MatrixXcd h(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) h(i, j) = {d(rng), d(rng)};
  MatrixXcd a = (h + h.adjoint()) / 2.0;
  for (Eigen::Index i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) a(j, i) = std::conj(a(i, j));
  return a;
}

// B = c J0 turns the operator into -J0 d/dt - c: eigenvalues 2 pi k - c, each 2m times.
std::vector<double> constant_rotation_spectrum(double c, int modes, int m) {
  std::vector<double> v;
  for (int k = -modes; k <= modes; ++k)
    for (int r = 0; r < 2 * m; ++r) v.push_back(2 * kPi * k - c);
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("Jacobi agrees with a reference eigensolver") {
  gen::Rng rng(1);
  for (Eigen::Index n : {1, 2, 5, 17, 40}) {
    const MatrixXcd a = random_hermitian(rng, n);
    const auto r = jacobi_eigen(a, true);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> ref(a);
    const double scale = a.norm();
    for (Eigen::Index i = 0; i < n; ++i) CHECK(std::abs(r.values(i) - ref.eigenvalues()(i)) < 1e-12 * scale);
    const MatrixXcd resid = a * r.vectors - r.vectors * r.values.cast<std::complex<double>>().asDiagonal();
    CHECK(resid.norm() < 1e-11 * scale);
    CHECK((r.vectors.adjoint() * r.vectors - MatrixXcd::Identity(n, n)).norm() < 1e-12 * n);
  }
  MatrixXcd bad = random_hermitian(rng, 3);
  bad(0, 1) += 1e-3;
  CHECK_THROWS_AS(jacobi_eigen(bad), sft::NumericalError);
}

TEST_CASE("Galerkin matrix is Hermitian and sized 2m(2K+1)") {
  AsymptoticOperator op{gen::variable_loop(), 8};
  const auto g = galerkin_matrix(op);
  CHECK(g.rows() == 4 * 17);
  CHECK(g == g.adjoint());
}

TEST_CASE("constant coefficients have closed-form spectra") {
  for (int modes : {4, 16}) {
    const auto zero = spectrum({CoefficientLoop::from_constant(MatrixXd::Zero(2, 2)), modes});
    const auto expect0 = constant_rotation_spectrum(0.0, modes, 1);
    REQUIRE(zero.size() == expect0.size());
    for (std::size_t i = 0; i < zero.size(); ++i) CHECK(std::abs(zero[i] - expect0[i]) < 1e-10);

    const auto rot = spectrum({CoefficientLoop::from_constant(sft::linalg::J0(4)), modes});
    const auto expect1 = constant_rotation_spectrum(1.0, modes, 2);
    REQUIRE(rot.size() == expect1.size());
    for (std::size_t i = 0; i < rot.size(); ++i) CHECK(std::abs(rot[i] - expect1[i]) < 1e-10);
  }
}

TEST_CASE("spectral gap") {
  const auto g = spectral_gap({CoefficientLoop::from_constant(sft::linalg::J0(2)), 16});
  CHECK(g.lower == Approx(-1.0).epsilon(1e-12));
  CHECK(g.upper == Approx(2 * kPi - 1).epsilon(1e-12));
  CHECK_FALSE(g.degenerate);
  CHECK(g.radius() == Approx(1.0));
  CHECK(weight_selector(g) == Approx(0.9));

  const auto flat = spectral_gap({CoefficientLoop::from_constant(MatrixXd::Zero(2, 2)), 8});
  CHECK(flat.degenerate);
  CHECK(flat.radius() == 0.0);
  CHECK_THROWS_AS(weight_selector(flat), sft::DomainError);

  // B = -pi J0 centres the gap: (-pi, pi), radius pi, selector 0.9 pi
  const auto mid = spectral_gap({CoefficientLoop::from_constant(-kPi * sft::linalg::J0(2)), 8});
  CHECK(mid.radius() == Approx(kPi));
  CHECK(weight_selector(mid) == Approx(0.9 * kPi));

  SpectralGap wide{-10.0, 10.0, false};
  CHECK(wide.capped_radius() == Approx(2 * kPi));
  CHECK(weight_selector(wide) == Approx(0.9 * 2 * kPi));
  SpectralGap three{-3.0, 5.0, false};
  CHECK(weight_selector(three) == Approx(2.7));

  const auto sel = weight_selector(std::map<std::string, SpectralGap>{{"a", three}, {"b", wide}});
  CHECK(sel.at("a") == Approx(2.7));
  CHECK(sel.at("b") == Approx(0.9 * 2 * kPi));
  CHECK(empty_orbit_weight() > 0);
}

TEST_CASE("selected weights lie strictly inside the gap and below 2 pi") {
  gen::Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const double lower = -std::exp(gen::uniform(rng, -6.0, 3.0));
    const double upper = std::exp(gen::uniform(rng, -6.0, 3.0));
    const SpectralGap g{lower, upper, false};
    const double w = weight_selector(g);
    CHECK(w > 0);
    CHECK(w < std::min(g.radius(), 2 * kPi));
  }
}

TEST_CASE("gap is stable under doubling the truncation") {
  const auto loop = gen::variable_loop();
  const auto a = spectral_gap({loop, 24});
  const auto b = spectral_gap({loop, 48});
  CHECK(std::abs(a.lower - b.lower) < 1e-8);
  CHECK(std::abs(a.upper - b.upper) < 1e-8);
}

TEST_CASE("weight sequences") {
  const auto w = weight_sequence(0.5, 2.0, 20);
  REQUIRE(w.size() == 20);
  CHECK(w[0] == 0.5);
  for (std::size_t i = 1; i < w.size(); ++i) {
    CHECK(w[i] > w[i - 1]);
    CHECK(w[i] < 2.0);
    CHECK(2.0 - w[i] == Approx((2.0 - w[i - 1]) / 2));
  }
  CHECK(weight_sequence(0.5, 2.0, 0).empty());
  CHECK_THROWS_AS(weight_sequence(2.0, 2.0, 3), sft::ValidationError);
  CHECK_THROWS_AS(weight_sequence(0.0, 2.0, 3), sft::ValidationError);
  CHECK_THROWS_AS(weight_sequence(0.5, 2.0, 200), sft::NumericalError);
}

TEST_CASE("coefficient validation") {
  MatrixXd b = MatrixXd::Zero(2, 2);
  b(0, 0) = 1.0;  // -J0 B is not symmetric
  CHECK_THROWS_AS(validate(CoefficientLoop::from_constant(b)), sft::ValidationError);
  CHECK_NOTHROW(validate(gen::variable_loop()));
  CHECK_THROWS_AS(validate(AsymptoticOperator{gen::variable_loop(), 0}), sft::ValidationError);

  UnitaryLoop open;
  open.m = 1;
  open.factors.push_back({MatrixXcd::Identity(1, 1) * std::complex<double>(0, 1.0), 1.0, {}, {}});
  CHECK_THROWS_AS(validate(open), sft::ValidationError);
  UnitaryLoop herm;
  herm.m = 1;
  herm.factors.push_back({MatrixXcd::Identity(1, 1), 0.0, {0.3}, {}});
  CHECK_THROWS_AS(validate(herm), sft::ValidationError);
}

TEST_CASE("sampled loops reproduce constant ones") {
  const MatrixXd b = -sft::linalg::J0(2) * (MatrixXd(2, 2) << 2, 0.5, 0.5, -1).finished();
  std::vector<MatrixXd> samples(32, b);
  const auto s = spectrum({CoefficientLoop::from_samples(samples), 8});
  const auto c = spectrum({CoefficientLoop::from_constant(b), 8});
  REQUIRE(s.size() == c.size());
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(std::abs(s[i] - c[i]) < 1e-10);
}

TEST_CASE("conjugation by unitary loops") {
  const AsymptoticOperator op{gen::variable_loop(), 24};
  UnitaryLoop id;
  id.m = 2;
  const auto r0 = conjugation_invariance_check(op, id);
  CHECK(r0.ok);
  CHECK(r0.max_difference == 0.0);

  // a winding loop shifts B by a multiple of J0 and shifts the spectrum by 2 pi w
  for (int w : {-1, 1, 2}) {
    const auto r = conjugation_invariance_check(op, winding_loop(2, w));
    CHECK(r.ok);
    CHECK(r.compared > 10);
  }

  gen::Rng rng(3);
  for (int trial = 0; trial < 3; ++trial) {
    const auto u = gen::random_unitary_loop(rng, 2);
    CHECK_NOTHROW(validate(u));
    const auto c = conjugate(op, u);
    CHECK_NOTHROW(validate(c.loop));
    CHECK(conjugation_invariance_check({gen::variable_loop(), 32}, u).ok);
  }
}

TEST_CASE("finite-difference oracle agrees with Galerkin") {
  const auto loop = gen::variable_loop(0.5);
  const auto fd = fd_oracle(loop, 6, 256);
  const auto gal = spectrum({loop, 32});
  REQUIRE(fd.size() == 6);
  for (double lam : fd) {
    const auto it = std::min_element(gal.begin(), gal.end(),
                                     [lam](double a, double b) { return std::abs(a - lam) < std::abs(b - lam); });
    CHECK(std::abs(*it - lam) < 1e-4);
  }
}
