#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace sft::spectral {

using Eigen::MatrixXd;

/// Samples of an arc Phi: [0,1] -> Sp(n), Phi(0) = Id.
struct SymplecticPath {
  std::vector<double> times;
  std::vector<MatrixXd> samples;
  Eigen::Index dim() const { return samples.empty() ? 0 : samples.front().rows(); }
  const MatrixXd& endpoint() const { return samples.back(); }
};

inline constexpr double kSymplecticTol = 1e-9;
inline constexpr double kEigenOneTol = 1e-9;

/// Times strictly increasing from 0 to 1, Phi(0) = Id to 1e-12, every sample
/// symplectic to 1e-9 * max(1, |Phi|^2). Throws ValidationError.
void validate(const SymplecticPath& path);

/// True iff 1 is not an eigenvalue of Phi(1) (|lambda - 1| >= 1e-9).
bool has_nondegenerate_endpoint(const SymplecticPath& path);

SymplecticPath sample_path(const std::function<MatrixXd(double)>& phi, int intervals);
/// t |-> e^{2 pi i theta t} on R^2.
SymplecticPath rotation_path(double theta, int intervals = 256);
SymplecticPath direct_sum(const SymplecticPath& a, const SymplecticPath& b);
/// t |-> a(t) b(t); both paths must share sample times.
SymplecticPath pointwise_product(const SymplecticPath& a, const SymplecticPath& b);
/// t |-> a(t)^{-1} = -J0 a(t)^T J0.
SymplecticPath pointwise_inverse(const SymplecticPath& a);

/// Rotation function rho: Sp(2n) -> S^1. Equals det_C on unitary matrices.
std::complex<double> rho(const MatrixXd& a);

/// Conley-Zehnder index by the rotation-function method. Throws DomainError
/// for a degenerate endpoint or an under-sampled path.
int cz_index(const SymplecticPath& path);

/// Winding number of det_C of the unitary part over a closed loop at Id.
/// Throws DomainError if Phi(1) != Id (1e-9).
int maslov_index(const SymplecticPath& loop);

struct ParityReport {
  int cz = 0;
  int n = 0;
  int parity_bit = 0;  // (cz + n - 3) mod 2
  int sign_det = 0;    // sign det(Id - A)
  bool consistent = false;  // (-1)^{cz+n+1} == sign_det
};

/// n defaults to half the path dimension plus one.
ParityReport parity_check(const SymplecticPath& path, int n = -1);

/// A periodic orbit with covering number k and linearized return map A.
struct PeriodicOrbitRecord {
  double period = 1;
  int covering = 1;
  MatrixXd return_map;
  std::string label;
};

void validate(const PeriodicOrbitRecord& orbit);

/// Count of real eigenvalues of A1 in (-1, 0), with multiplicity. Throws
/// DomainError if A1 has an eigenvalue within 1e-9 of +1 or -1.
int negative_real_count(const MatrixXd& a1);
/// Bad iff the covering number is even and negative_real_count(a1) is odd.
bool is_bad_orbit(const PeriodicOrbitRecord& orbit, const MatrixXd& simple_return_map);

struct ReturnMapResult {
  MatrixXd a;
  int steps = 0;
  double drift = 0;  // max |Psi^T J0 Psi - J0| at the end
};

/// Fundamental solution of Psi' = S(t) Psi on [0, T] by RK4, doubling the
/// step count until the symplectic drift is below 1e-8 and two successive
/// doublings agree to 1e-11. Throws NumericalError if the drift stays above
/// 1e-6.
ReturnMapResult return_map(const std::function<MatrixXd(double)>& s, Eigen::Index dim, double period,
                           int initial_steps = 256);

/// Same integration, returning Psi at `intervals + 1` uniform times as a path
/// on [0,1] (time rescaled by T).
SymplecticPath flow_path(const std::function<MatrixXd(double)>& s, Eigen::Index dim, double period,
                         int intervals = 256);

/// 1 not in the spectrum of A^m for m = 1..k (|lambda - 1| >= 1e-9).
bool is_nondegenerate(const MatrixXd& a, int k);

}  // namespace sft::spectral
