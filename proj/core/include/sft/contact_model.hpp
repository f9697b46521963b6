#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <random>

#include "sft/index.hpp"

namespace sft::spectral {

using Vec4 = Eigen::Vector4d;

/// Ellipsoid E = {pi|z1|^2/a1 + pi|z2|^2/a2 = 1} in C^2 = R^4 with coordinates
/// (x1, y1, x2, y2), contact form lambda = 1/2 sum (x dy - y dx) and
/// omega = d lambda.
struct EllipsoidModel {
  double a1 = 1;
  double a2 = 1;
};

void validate(const EllipsoidModel& m);

double hamiltonian(const EllipsoidModel& m, const Vec4& p);
double contact_form(const Vec4& p, const Vec4& v);
double dlambda(const Vec4& u, const Vec4& v);

/// Random point of E (Gaussian direction rescaled onto H = 1).
Vec4 sample_point(const EllipsoidModel& m, std::mt19937_64& rng);
/// Orthonormal basis of T_p E (columns).
Eigen::Matrix<double, 4, 3> tangent_basis(const EllipsoidModel& m, const Vec4& p);

/// Reeb field obtained from the defining identities: the kernel of
/// d lambda on T_p E is spanned by J0 grad H, normalized by lambda.
Vec4 reeb_field(const EllipsoidModel& m, const Vec4& p);

/// Basis (e1, e2) of xi_p = ker lambda cap T_p E with d lambda(e1, e2) = 1;
/// J maps e1 to e2.
std::pair<Vec4, Vec4> xi_frame(const EllipsoidModel& m, const Vec4& p);

/// phi and phi' on R.
struct ShiftFunction {
  std::function<double(double)> phi;
  std::function<double(double)> dphi;
};
/// phi(s) = c tanh(s), phi' > 0 everywhere for c > 0.
ShiftFunction tanh_shift(double c = 0.5);
ShiftFunction constant_shift(double c);

/// Tangent vector (h d/ds, w) to R x E at (s, p).
struct CylinderVector {
  double h = 0;
  Vec4 w = Vec4::Zero();
};

/// Omega_phi = (1 + phi) d lambda + phi' ds ^ lambda, evaluated directly.
double omega_phi(const ShiftFunction& f, double s, const Vec4& p, const CylinderVector& u,
                 const CylinderVector& v);
/// Cylindrical J~(h, kR + D) = (-k, hR + J D).
CylinderVector cylinder_j(const EllipsoidModel& m, const Vec4& p, const CylinderVector& v);
/// Q^phi(v) = Omega_phi(v, J~ v).
double q_phi(const EllipsoidModel& m, const ShiftFunction& f, double s, const Vec4& p,
             const CylinderVector& v);

struct ContactReport {
  double lambda_residual = 0;   // max |lambda(R) - 1|
  double dlambda_residual = 0;  // max |d lambda(R, e)| over a tangent basis
  double min_q = 0;             // min Q^phi over sampled unit tangent vectors
  int points = 0;
};

ContactReport model_contact_check(const EllipsoidModel& m, const ShiftFunction& f, int points,
                                  std::uint64_t seed);

/// Period of the simple Reeb orbit in the z_which-axis circle, measured by
/// integrating the Reeb flow until the lifted angle of z_which reaches 2 pi.
double measure_period(const EllipsoidModel& m, int which, int steps = 4000);

/// Linearized Reeb flow on xi along the simple orbit in the z_which axis,
/// expressed in the complementary complex coordinate, as a path on [0,1].
SymplecticPath linearized_return_path(const EllipsoidModel& m, int which, int intervals = 256);

}  // namespace sft::spectral
