#pragma once

#include <Eigen/Dense>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sft::spectral {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;

/// t in S^1 = R/Z |-> B(t), a real 2m x 2m matrix with -J0 B(t) symmetric.
struct CoefficientLoop {
  Eigen::Index dim = 2;
  std::function<MatrixXd(double)> eval;
  int samples = 256;
  // provenance for serialization; at most one is set
  std::optional<MatrixXd> constant;
  std::vector<MatrixXd> sampled;

  MatrixXd operator()(double t) const { return eval(t); }

  static CoefficientLoop from_constant(const MatrixXd& b, int samples = 256);
  /// Uniform samples at t_j = j / M, extended by trigonometric interpolation.
  static CoefficientLoop from_samples(std::vector<MatrixXd> b);
};

/// Throws ValidationError if -J0 B(t_j) is not symmetric to `tol` (relative
/// to max(1, |B|)) at the sample points.
void validate(const CoefficientLoop& loop, double tol = 1e-9);

struct AsymptoticOperator {
  CoefficientLoop loop;
  int modes = 64;  // K; Fourier modes |k| <= K
};

void validate(const AsymptoticOperator& op);

/// Fourier-Galerkin matrix of h |-> -J0 h' + J0 B h on the complexified
/// loop space, size 2m(2K+1). Exactly Hermitian by construction.
MatrixXcd galerkin_matrix(const AsymptoticOperator& op);

/// Sorted eigenvalues (with multiplicity) of the Galerkin truncation.
std::vector<double> spectrum(const AsymptoticOperator& op);

struct SpectralGap {
  double lower = 0;  // largest negative eigenvalue
  double upper = 0;  // smallest positive eigenvalue
  bool degenerate = false;
  /// min(-lower, upper); 0 when degenerate.
  double radius() const;
  /// radius() capped at 2 pi: the one-sided gap value.
  double capped_radius() const;
};

/// |lambda| <= zero_tol counts as a zero eigenvalue, giving the degenerate (0,0).
SpectralGap spectral_gap(const std::vector<double>& sorted_spectrum, double zero_tol = 1e-9);
SpectralGap spectral_gap(const AsymptoticOperator& op);

inline constexpr double kWeightSafety = 0.9;
/// Weight attached to the empty orbit set.
double empty_orbit_weight();

/// min(0.9 * radius, 0.9 * 2 pi). Throws DomainError on a degenerate gap.
double weight_selector(const SpectralGap& gap);
std::map<std::string, double> weight_selector(const std::map<std::string, SpectralGap>& gaps);

/// delta_0 < delta_1 < ... < cap, halving the distance to cap each step.
std::vector<double> weight_sequence(double delta0, double cap, int count);

/// U(t) = prod_j exp(A_j f_j(t)) with A_j complex skew-Hermitian m x m and
/// f_j(t) = slope * t + sum_n (c_n cos 2 pi n t + s_n sin 2 pi n t). A nonzero
/// slope must close up: exp(slope A_j) = Id.
struct UnitaryLoop {
  struct Factor {
    MatrixXcd generator;
    double slope = 0;
    std::vector<double> cos_coeffs;  // n = 1, 2, ...
    std::vector<double> sin_coeffs;
  };
  Eigen::Index m = 1;
  std::vector<Factor> factors;

  /// Real 2m x 2m U(t) and U'(t).
  std::pair<MatrixXd, MatrixXd> eval(double t) const;
};

/// Throws ValidationError for a non-skew-Hermitian generator, a size
/// mismatch, or a loop that does not close.
void validate(const UnitaryLoop& u);

/// Constant J0-rotation loop e^{2 pi i w t} on every complex coordinate.
UnitaryLoop winding_loop(Eigen::Index m, int w);

/// Coefficient loop B^psi = U B U^{-1} + U' U^{-1}.
AsymptoticOperator conjugate(const AsymptoticOperator& op, const UnitaryLoop& u);

struct ConjugationReport {
  bool ok = false;
  double max_difference = 0;
  std::size_t compared = 0;
};

/// Compares the spectra of op and conjugate(op, u) on the interior window
/// |lambda| <= 2 pi K / 2, aligning the lists at the eigenvalue nearest the
/// window's lower end and comparing elementwise.
ConjugationReport conjugation_invariance_check(const AsymptoticOperator& op, const UnitaryLoop& u,
                                               double tol = 1e-7);

/// Independent finite-difference cross-check: staggered grid with N points,
/// x-components on t_i = i/N, y-components on t_{i+1/2}. Returns the `count`
/// eigenvalues of smallest magnitude (sorted ascending), from a dense
/// symmetric eigensolve.
std::vector<double> fd_smallest_eigenvalues(const CoefficientLoop& loop, int n_points, int count);

/// One Richardson step on N and 2N: (4 lambda_{2N} - lambda_N) / 3, with the
/// two spectra aligned by index relative to their first nonnegative entry.
std::vector<double> fd_oracle(const CoefficientLoop& loop, int count, int n_points = 512);

}  // namespace sft::spectral
