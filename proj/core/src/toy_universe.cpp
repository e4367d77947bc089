#include "bievo/toy_universe.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <unsupported/Eigen/MatrixFunctions>

#include "bievo/errors.hpp"
#include "bievo/interference.hpp"

namespace bievo {
namespace {

using namespace std::complex_literals;

constexpr double kHermitianTol = 1e-12;
constexpr double kNormTol = 1e-12;
// Maximum path length for the recursive ordering enumeration.
constexpr int kMaxEnumeratedSteps = 64;

bool is_hermitian(const Matrix& h) {
  if (h.rows() != h.cols()) return false;
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  return (h - h.adjoint()).cwiseAbs().maxCoeff() <= kHermitianTol * scale;
}

double spectral_norm_hermitian(const Matrix& h) {
  if (h.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

void require_orderings(int backward, int forward, const char* what) {
  if (backward < 0 || forward < 0) throw DomainError(std::string(what) + " requires m, n >= 0");
  if (binomial_exceeds(backward + forward, forward, kOrderingCap) ||
      (backward > 0 && forward > 0 && backward + forward > kMaxEnumeratedSteps)) {
    throw EnumerationCapExceeded(std::string(what) + ": C(" + std::to_string(backward + forward) + ", " +
                                 std::to_string(forward) + ") orderings exceed the cap of " +
                                 std::to_string(kOrderingCap));
  }
}

Matrix power(const Matrix& a, int k) {
  Matrix out = Matrix::Identity(a.rows(), a.cols());
  for (int i = 0; i < k; ++i) out = out * a;
  return out;
}

void accumulate_orderings(const Matrix& prefix, int backward, int forward, const StepOperators& ops, Matrix& total) {
  if (backward == 0) {
    total += prefix * power(ops.forward, forward);
    return;
  }
  if (forward == 0) {
    total += prefix * power(ops.backward, backward);
    return;
  }
  accumulate_orderings(prefix * ops.backward, backward - 1, forward, ops, total);
  accumulate_orderings(prefix * ops.forward, backward, forward - 1, ops, total);
}

Vector complex_gaussian(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = {re, im};
  }
  return v;
}

}  // namespace

Matrix time_reverse(const Matrix& h) {
  if (!is_hermitian(h)) throw NotHermitian("time_reverse: matrix is not Hermitian");
  return h.conjugate();
}

ToyUniverse::ToyUniverse(Matrix h_forward, Matrix h_backward, Vector psi0, double tau)
    : h_forward_(std::move(h_forward)), h_backward_(std::move(h_backward)), psi0_(std::move(psi0)), tau_(tau) {
  const auto d = psi0_.size();
  if (d < 1 || d > kMaxDimension) {
    throw DomainError("ToyUniverse: dimension must be in [1, " + std::to_string(kMaxDimension) + "]");
  }
  if (h_forward_.rows() != d || h_forward_.cols() != d || h_backward_.rows() != d || h_backward_.cols() != d) {
    throw DomainError("ToyUniverse: Hamiltonians must be " + std::to_string(d) + "x" + std::to_string(d));
  }
  if (!is_hermitian(h_forward_)) throw NotHermitian("ToyUniverse: H_F is not Hermitian");
  if (!is_hermitian(h_backward_)) throw NotHermitian("ToyUniverse: H_B is not Hermitian");
  if (std::abs(psi0_.norm() - 1.0) > kNormTol) throw DomainError("ToyUniverse: psi0 must have unit norm");
  if (!std::isfinite(tau_) || tau_ < 0.0) throw DomainError("ToyUniverse: tau must be finite and >= 0");
}

ToyUniverse ToyUniverse::with_time_reversal(Matrix h_forward, Vector psi0, double tau) {
  Matrix h_backward = time_reverse(h_forward);
  return ToyUniverse(std::move(h_forward), std::move(h_backward), std::move(psi0), tau);
}

ToyUniverse ToyUniverse::random(int dim, std::uint64_t seed, double tau, bool unit_norm) {
  if (dim < 1 || dim > kMaxDimension) throw DomainError("ToyUniverse::random: dimension out of range");
  std::mt19937_64 rng(seed);
  Matrix a(dim, dim);
  for (int j = 0; j < dim; ++j) a.col(j) = complex_gaussian(dim, rng);
  Matrix h = (a + a.adjoint()) / 2.0;
  if (unit_norm) {
    const double norm = spectral_norm_hermitian(h);
    if (norm > 0.0) h /= norm;
  }
  Vector psi = complex_gaussian(dim, rng);
  psi.normalize();
  return with_time_reversal(std::move(h), std::move(psi), tau);
}

ToyUniverse ToyUniverse::with_tau(double tau) const { return ToyUniverse(h_forward_, h_backward_, psi0_, tau); }

ToyUniverse ToyUniverse::with_psi0(Vector psi0) const {
  return ToyUniverse(h_forward_, h_backward_, std::move(psi0), tau_);
}

Matrix hermitian_exp(const Matrix& h, std::complex<double> coeff) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Vector phases = (coeff * es.eigenvalues().cast<std::complex<double>>()).array().exp().matrix();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

StepOperators step_operators(const ToyUniverse& u) { return step_operators(u, 1.0); }

StepOperators step_operators(const ToyUniverse& u, double steps) {
  const double t = steps * u.tau();
  return {hermitian_exp(u.h_forward(), -1i * t), hermitian_exp(u.h_backward(), 1i * t)};
}

EvolutionRecord symmetric_evolve(const ToyUniverse& u, int steps, bool components) {
  if (steps < 0) throw DomainError("symmetric_evolve requires N >= 0");
  if (components && steps > kComponentStepCap) {
    throw EnumerationCapExceeded("symmetric_evolve: component tracking is limited to N <= " +
                                 std::to_string(kComponentStepCap));
  }
  const StepOperators ops = step_operators(u);
  EvolutionRecord rec{steps, u.psi0(), {}};
  for (int k = 0; k < steps; ++k) rec.state = ops.forward * rec.state + ops.backward * rec.state;

  if (components) {
    // comps[n] after k steps = sum of all length-k orderings with n forward factors, applied to psi0.
    std::vector<Vector> comps{u.psi0()};
    for (int k = 0; k < steps; ++k) {
      std::vector<Vector> next(comps.size() + 1, Vector::Zero(u.dim()));
      for (std::size_t n = 0; n < comps.size(); ++n) {
        next[n + 1] += ops.forward * comps[n];
        next[n] += ops.backward * comps[n];
      }
      comps = std::move(next);
    }
    rec.components = std::move(comps);
  }
  return rec;
}

Matrix enumerate_S(const ToyUniverse& u, int backward, int forward) {
  require_orderings(backward, forward, "enumerate_S");
  const StepOperators ops = step_operators(u);
  Matrix total = Matrix::Zero(u.dim(), u.dim());
  accumulate_orderings(Matrix::Identity(u.dim(), u.dim()), backward, forward, ops, total);
  return total;
}

Matrix reordered_S_approx(const ToyUniverse& u, int backward, int forward) {
  require_orderings(backward, forward, "reordered_S_approx");
  const auto counts = path_exponent_histogram(backward, forward, kOrderingCap);
  const Matrix commutator = u.h_forward() * u.h_backward() - u.h_backward() * u.h_forward();
  const double tau2 = u.tau() * u.tau();
  Matrix chain_sum = Matrix::Zero(u.dim(), u.dim());
  for (std::size_t s = 0; s < counts.size(); ++s) {
    if (counts[s] == 0) continue;
    const Matrix scaled = (tau2 * static_cast<double>(s)) * commutator;
    chain_sum += static_cast<double>(counts[s]) * Matrix(scaled.exp());
  }
  const StepOperators ub = step_operators(u, static_cast<double>(backward));
  const StepOperators uf = step_operators(u, static_cast<double>(forward));
  return ub.backward * uf.forward * chain_sum;
}

Matrix commutator_generator(const ToyUniverse& u) {
  const Matrix k = 1i * (u.h_forward() * u.h_backward() - u.h_backward() * u.h_forward());
  return (k + k.adjoint()) / 2.0;
}

Matrix CommutatorSpectrum::reconstruct() const {
  if (projectors.empty()) return Matrix();
  Matrix out = Matrix::Zero(projectors.front().rows(), projectors.front().cols());
  for (std::size_t j = 0; j < projectors.size(); ++j) out += eigenvalues[j] * projectors[j];
  return out;
}

Matrix CommutatorSpectrum::zero_projector(int dim) const {
  Matrix out = Matrix::Zero(dim, dim);
  for (std::size_t j = 0; j < projectors.size(); ++j) {
    if (std::abs(eigenvalues[j]) <= zero_band) out += projectors[j];
  }
  return out;
}

CommutatorSpectrum commutator_spectrum(const ToyUniverse& u) {
  const Matrix k = commutator_generator(u);
  Eigen::SelfAdjointEigenSolver<Matrix> es(k);
  const Eigen::VectorXd& values = es.eigenvalues();
  const Matrix& vectors = es.eigenvectors();

  CommutatorSpectrum spec;
  spec.spectral_norm = values.cwiseAbs().maxCoeff();
  // Relative band, with a floor at rounding level of the product H_F H_B.
  const double floor =
      1e-12 * std::max(1.0, spectral_norm_hermitian(u.h_forward()) * spectral_norm_hermitian(u.h_backward()));
  spec.zero_band = std::max(1e-9 * spec.spectral_norm, floor);

  const auto d = static_cast<int>(values.size());
  int start = 0;
  while (start < d) {
    int end = start + 1;
    while (end < d && values(end) - values(end - 1) <= spec.zero_band) ++end;
    const int count = end - start;
    const Matrix block = vectors.middleCols(start, count);
    spec.eigenvalues.push_back(values.segment(start, count).mean());
    spec.projectors.push_back(block * block.adjoint());
    spec.multiplicities.push_back(count);
    start = end;
  }
  return spec;
}

Matrix spectral_S(const ToyUniverse& u, int backward, int forward) {
  return spectral_S(u, commutator_spectrum(u), backward, forward);
}

Matrix spectral_S(const ToyUniverse& u, const CommutatorSpectrum& spectrum, int backward, int forward) {
  const auto pc = PathCount::from_steps(backward, forward);
  Matrix weighted = Matrix::Zero(u.dim(), u.dim());
  for (std::size_t j = 0; j < spectrum.eigenvalues.size(); ++j) {
    const auto weight = interference_qrecursion(pc, PhaseArg::from_time_step(u.tau(), spectrum.eigenvalues[j]));
    weighted += weight * spectrum.projectors[j];
  }
  const StepOperators ub = step_operators(u, static_cast<double>(backward));
  const StepOperators uf = step_operators(u, static_cast<double>(forward));
  return ub.backward * uf.forward * weighted;
}

bool check_nonzero_eigenvalue_condition(const ToyUniverse& u, double tol) {
  return check_nonzero_eigenvalue_condition(u, commutator_spectrum(u), tol);
}

bool check_nonzero_eigenvalue_condition(const ToyUniverse& u, const CommutatorSpectrum& spectrum, double tol) {
  return (spectrum.zero_projector(u.dim()) * u.psi0()).norm() <= tol;
}

Vector bievolution_reference(const ToyUniverse& u, int steps) {
  if (steps < 0) throw DomainError("bievolution_reference requires N >= 0");
  const StepOperators ops = step_operators(u, static_cast<double>(steps));
  return ops.forward * u.psi0() + ops.backward * u.psi0();
}

BievolutionError bievolution_error(const ToyUniverse& u, int steps, bool components, int boundary_band) {
  if (boundary_band < 0) throw DomainError("bievolution_error requires a non-negative boundary band");
  const EvolutionRecord rec = symmetric_evolve(u, steps, components);
  const Vector reference = bievolution_reference(u, steps);

  BievolutionError err{};
  // |state| grows like 2^N; stableNorm avoids overflowing the squared sum.
  err.state_norm = rec.state.stableNorm();
  err.reference_norm = reference.stableNorm();
  if (err.state_norm == 0.0 || err.reference_norm == 0.0) {
    err.fidelity_deficit = 1.0;
  } else {
    const double overlap = std::abs((rec.state / err.state_norm).dot(reference / err.reference_norm));
    err.fidelity_deficit = std::clamp(1.0 - overlap, 0.0, 1.0);
  }

  if (components) {
    double scale = 0.0;
    for (const auto& c : rec.components) scale = std::max(scale, c.stableNorm());
    if (scale == 0.0) scale = 1.0;
    double boundary = 0.0;
    double all = 0.0;
    for (int n = 0; n <= steps; ++n) {
      const double mass = (rec.components[static_cast<std::size_t>(n)] / scale).squaredNorm();
      all += mass;
      if (n <= boundary_band || n >= steps - boundary_band) boundary += mass;
    }
    err.boundary_mass_fraction = all > 0.0 ? boundary / all : 0.0;
  }
  return err;
}

}  // namespace bievo
