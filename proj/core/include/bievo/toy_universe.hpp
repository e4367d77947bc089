#pragma once

// Exact small-dimension simulation of symmetric time evolution
// (U_F(tau) + U_B(tau))^N psi0 and of its decomposition into S_{m,n} terms.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace bievo {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr int kMaxDimension = 16;
/// Cap on the number of orderings C(m+n, n) visited by explicit enumeration.
inline constexpr std::uint64_t kOrderingCap = 100'000;
/// Largest N for which per-n components are tracked (norms grow like 2^N).
inline constexpr int kComponentStepCap = 500;

/// Entrywise complex conjugate: Wigner time reversal for a spinless system
/// in the standard basis. Throws NotHermitian.
Matrix time_reverse(const Matrix& h);

/// Hamiltonian pair, initial state and step size of a toy universe.
/// Immutable after construction.
class ToyUniverse {
 public:
  /// Validates Hermiticity (1e-12), |psi0| = 1 (1e-12), 1 <= d <= 16, tau >= 0.
  ToyUniverse(Matrix h_forward, Matrix h_backward, Vector psi0, double tau);

  /// H_B = time_reverse(H_F).
  static ToyUniverse with_time_reversal(Matrix h_forward, Vector psi0, double tau);

  /// H_F = (A + A^dagger) / 2 with standard-normal real and imaginary parts,
  /// psi0 a normalized complex Gaussian vector, H_B = time_reverse(H_F).
  /// When unit_norm is set, H_F is rescaled to spectral norm 1.
  static ToyUniverse random(int dim, std::uint64_t seed, double tau, bool unit_norm = false);

  int dim() const { return static_cast<int>(psi0_.size()); }
  const Matrix& h_forward() const { return h_forward_; }
  const Matrix& h_backward() const { return h_backward_; }
  const Vector& psi0() const { return psi0_; }
  double tau() const { return tau_; }

  ToyUniverse with_tau(double tau) const;
  ToyUniverse with_psi0(Vector psi0) const;

 private:
  Matrix h_forward_;
  Matrix h_backward_;
  Vector psi0_;
  double tau_;
};

/// exp(coeff * H) for Hermitian H via its eigendecomposition.
Matrix hermitian_exp(const Matrix& h, std::complex<double> coeff);

struct StepOperators {
  Matrix forward;   // U_F(tau) = exp(-i tau H_F)
  Matrix backward;  // U_B(tau) = exp(+i tau H_B)
};

StepOperators step_operators(const ToyUniverse& u);
/// U_F(steps * tau) and U_B(steps * tau).
StepOperators step_operators(const ToyUniverse& u, double steps);

struct EvolutionRecord {
  int steps;
  Vector state;                         // (U_F + U_B)^N psi0, unnormalized
  std::vector<Vector> components;       // S_{N-n,n} psi0 for n = 0..N (when requested)
};

/// Repeated application of U_F + U_B. With components set, also tracks the
/// S_{N-n,n} psi0 terms by grouping paths on their forward-step count.
EvolutionRecord symmetric_evolve(const ToyUniverse& u, int steps, bool components = false);

/// Sum over all C(m+n, n) orderings of m U_B and n U_F factors.
Matrix enumerate_S(const ToyUniverse& u, int backward, int forward);

/// U_B(m tau) U_F(n tau) sum_chains exp(s tau^2 [H_F, H_B]), with the
/// exponentials of the commutator taken by scaling-and-squaring.
/// Agrees with enumerate_S to O(tau^3).
Matrix reordered_S_approx(const ToyUniverse& u, int backward, int forward);

/// Eigendecomposition of i[H_F, H_B] with degenerate eigenvalues merged.
struct CommutatorSpectrum {
  std::vector<double> eigenvalues;  // ascending
  std::vector<Matrix> projectors;
  std::vector<int> multiplicities;
  double spectral_norm = 0.0;
  double zero_band = 0.0;  // |lambda| <= zero_band counts as zero

  Matrix reconstruct() const;
  /// Projector onto the zero-eigenvalue subspace (zero matrix if none).
  Matrix zero_projector(int dim) const;
};

/// i[H_F, H_B], Hermitian.
Matrix commutator_generator(const ToyUniverse& u);
CommutatorSpectrum commutator_spectrum(const ToyUniverse& u);

/// U_B(m tau) U_F(n tau) sum_j I_{m,n}(tau^2 lambda_j) Pi_j.
Matrix spectral_S(const ToyUniverse& u, int backward, int forward);
Matrix spectral_S(const ToyUniverse& u, const CommutatorSpectrum& spectrum, int backward, int forward);

/// True iff |Pi_0 psi0| <= tol; vacuously true without a zero eigenvalue.
bool check_nonzero_eigenvalue_condition(const ToyUniverse& u, double tol);
bool check_nonzero_eigenvalue_condition(const ToyUniverse& u, const CommutatorSpectrum& spectrum, double tol);

/// [U_F(N tau) + U_B(N tau)] psi0, unnormalized.
Vector bievolution_reference(const ToyUniverse& u, int steps);

struct BievolutionError {
  double fidelity_deficit;                       // 1 - |<Psi^|Phi^>| of normalized states
  std::optional<double> boundary_mass_fraction;  // component mode only
  double state_norm;                             // |Psi(N tau)|
  double reference_norm;                         // |Phi(N tau)|
};

/// Compares the full symmetric evolution with the bievolution reference.
///
/// In component mode the boundary fraction is
///   sum_{n <= band or n >= N - band} |S_{N-n,n} psi0|^2 / sum_n |S_{N-n,n} psi0|^2.
/// Throws EnumerationCapExceeded when components are requested for
/// N > kComponentStepCap.
BievolutionError bievolution_error(const ToyUniverse& u, int steps, bool components = true, int boundary_band = 1);

}  // namespace bievo
