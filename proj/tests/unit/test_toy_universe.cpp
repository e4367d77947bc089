#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "bievo/errors.hpp"
#include "bievo/interference.hpp"
#include "bievo/toy_universe.hpp"
#include "generators.hpp"

using namespace bievo;
using namespace std::complex_literals;

namespace {

Matrix sigma_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
Matrix sigma_y() {
  Matrix m(2, 2);
  m << 0, -1i, 1i, 0;
  return m;
}
Matrix sigma_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Vector basis(int dim, int k) {
  Vector v = Vector::Zero(dim);
  v(k) = 1.0;
  return v;
}

ToyUniverse pauli(double tau, Vector psi = basis(2, 0)) {
  return ToyUniverse::with_time_reversal((sigma_x() + sigma_y()) / 2.0, std::move(psi), tau);
}

ToyUniverse real_symmetric(int dim, double tau, std::uint64_t seed) {
  bievo::testing::Gen g(seed);
  Matrix h(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j <= i; ++j) h(i, j) = h(j, i) = g.uniform(-1.0, 1.0);
  Vector psi(dim);
  for (int i = 0; i < dim; ++i) psi(i) = {g.uniform(-1, 1), g.uniform(-1, 1)};
  psi.normalize();
  return ToyUniverse::with_time_reversal(h, psi, tau);
}

// Series for exp(A), independent of the eigen route.
Matrix taylor_exp(const Matrix& a) {
  Matrix out = Matrix::Identity(a.rows(), a.cols());
  Matrix term = out;
  for (int k = 1; k < 60; ++k) {
    term = term * a / static_cast<double>(k);
    out += term;
  }
  return out;
}

}  // namespace

TEST(TimeReverse, Examples) {
  const Matrix h = real_symmetric(3, 0.1, 1).h_forward();
  EXPECT_TRUE(time_reverse(h).isApprox(h, 0.0));
  EXPECT_LE((time_reverse((sigma_x() + sigma_y()) / 2.0) - (sigma_x() - sigma_y()) / 2.0).norm(), 1e-15);
  const Matrix r = ToyUniverse::random(4, 3, 0.1).h_forward();
  EXPECT_EQ(time_reverse(time_reverse(r)), r);
  Matrix bad(2, 2);
  bad << 0, 1, 2, 0;
  EXPECT_THROW(time_reverse(bad), NotHermitian);
}

TEST(Universe, Validation) {
  EXPECT_THROW(ToyUniverse(sigma_x(), sigma_x(), Vector::Ones(2), 0.1), DomainError);
  EXPECT_THROW(ToyUniverse(sigma_x(), sigma_x(), basis(2, 0), -0.1), DomainError);
  EXPECT_THROW(ToyUniverse(sigma_x(), sigma_x(), basis(3, 0), 0.1), DomainError);
  EXPECT_THROW(ToyUniverse::random(17, 1, 0.1), DomainError);
  Matrix bad(2, 2);
  bad << 0, 1i, 1i, 0;
  EXPECT_THROW(ToyUniverse(bad, sigma_x(), basis(2, 0), 0.1), NotHermitian);
}

TEST(Universe, RandomIsDeterministic) {
  const auto a = ToyUniverse::random(4, 42, 0.3);
  const auto b = ToyUniverse::random(4, 42, 0.3);
  EXPECT_EQ(a.h_forward(), b.h_forward());
  EXPECT_EQ(a.psi0(), b.psi0());
  EXPECT_NE(a.h_forward(), ToyUniverse::random(4, 43, 0.3).h_forward());
  EXPECT_NEAR(ToyUniverse::random(3, 5, 0.1, true).h_forward().operatorNorm(), 1.0, 1e-12);
}

TEST(StepOperators, Examples) {
  const auto u0 = ToyUniverse::random(3, 1, 0.0);
  const auto ops0 = step_operators(u0);
  EXPECT_LE((ops0.forward - Matrix::Identity(3, 3)).norm(), 1e-14);
  EXPECT_LE((ops0.backward - Matrix::Identity(3, 3)).norm(), 1e-14);

  const auto u = ToyUniverse::random(4, 9, 0.37);
  const auto ops = step_operators(u);
  EXPECT_LE((ops.backward - ops.forward.conjugate()).norm(), 1e-12);
  EXPECT_LE((ops.forward - taylor_exp(-0.37i * u.h_forward())).norm(), 1e-12);

  Matrix w(1, 1);
  w << 2.5;
  const auto scalar = ToyUniverse::with_time_reversal(w, basis(1, 0), 0.2);
  EXPECT_LE(std::abs(step_operators(scalar).forward(0, 0) - std::exp(-0.5i)), 1e-15);
}

TEST(StepOperatorsProperty, Unitary) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int d = 1 + static_cast<int>(seed % 8);
    const auto u = ToyUniverse::random(d, seed, 0.05 * static_cast<double>(seed));
    const auto ops = step_operators(u);
    const Matrix id = Matrix::Identity(d, d);
    EXPECT_LE((ops.forward.adjoint() * ops.forward - id).norm(), 1e-10);
    EXPECT_LE((ops.backward.adjoint() * ops.backward - id).norm(), 1e-10);
  }
}

TEST(Evolve, Examples) {
  const auto u = real_symmetric(3, 0.4, 11);
  EXPECT_EQ(symmetric_evolve(u, 0).state, u.psi0());
  // e^{-i tau H} + e^{i tau H} = 2 cos(tau H) for H_F = H_B = H real.
  Eigen::SelfAdjointEigenSolver<Matrix> es(u.h_forward());
  const Vector c = (0.4 * es.eigenvalues()).array().cos().cast<std::complex<double>>().matrix();
  const Matrix two_cos = 2.0 * es.eigenvectors() * c.asDiagonal() * es.eigenvectors().adjoint();
  EXPECT_LE((symmetric_evolve(u, 1).state - two_cos * u.psi0()).norm(), 1e-12);

  const auto r = ToyUniverse::random(2, 42, 0.3);
  const auto rec = symmetric_evolve(r, 8, true);
  Vector sum = Vector::Zero(2);
  for (int n = 0; n <= 8; ++n) sum += enumerate_S(r, 8 - n, n) * r.psi0();
  EXPECT_LE((rec.state - sum).norm(), 1e-9);
  ASSERT_EQ(rec.components.size(), 9u);
  for (int n = 0; n <= 8; ++n) {
    EXPECT_LE((rec.components[n] - enumerate_S(r, 8 - n, n) * r.psi0()).norm(), 1e-9) << n;
  }
  EXPECT_THROW(symmetric_evolve(r, -1), DomainError);
  EXPECT_THROW(symmetric_evolve(r, kComponentStepCap + 1, true), EnumerationCapExceeded);
}

TEST(EnumerateS, Examples) {
  const auto u = ToyUniverse::random(3, 4, 0.25);
  const auto ops = step_operators(u);
  EXPECT_LE((enumerate_S(u, 1, 1) - (ops.forward * ops.backward + ops.backward * ops.forward)).norm(), 1e-13);
  EXPECT_LE((enumerate_S(u, 0, 3) - step_operators(u, 3.0).forward).norm(), 1e-12);

  const auto u2 = ToyUniverse::random(2, 6, 0.25);
  const auto ops2 = step_operators(u2);
  Matrix lhs = Matrix::Identity(2, 2);
  for (int k = 0; k < 6; ++k) lhs = (ops2.forward + ops2.backward) * lhs;
  Matrix rhs = Matrix::Zero(2, 2);
  for (int n = 0; n <= 6; ++n) rhs += enumerate_S(u2, 6 - n, n);
  EXPECT_LE((lhs - rhs).norm(), 1e-10);

  EXPECT_THROW(enumerate_S(u2, 12, 12), EnumerationCapExceeded);
}

TEST(ToyProperty, BinomialIdentity) {
  for (int d = 1; d <= 4; ++d) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto u = ToyUniverse::random(d, seed, 0.3);
      const auto ops = step_operators(u);
      for (int steps = 0; steps <= 10; ++steps) {
        Vector direct = u.psi0();
        for (int k = 0; k < steps; ++k) direct = ops.forward * direct + ops.backward * direct;
        Vector sum = Vector::Zero(d);
        for (int n = 0; n <= steps; ++n) sum += enumerate_S(u, steps - n, n) * u.psi0();
        ASSERT_LE((direct - sum).norm(), 1e-9) << d << " " << seed << " " << steps;
      }
    }
  }
}

TEST(Reordered, Examples) {
  const auto u0 = ToyUniverse::random(3, 2, 0.0);
  EXPECT_LE((reordered_S_approx(u0, 2, 3) - enumerate_S(u0, 2, 3)).norm(), 1e-12);
  EXPECT_LE((reordered_S_approx(u0, 2, 3) - 10.0 * Matrix::Identity(3, 3)).norm(), 1e-12);

  for (double tau : {0.1, 0.7, 2.0}) {
    const auto u = real_symmetric(3, tau, 8);
    EXPECT_LE((reordered_S_approx(u, 3, 2) - enumerate_S(u, 3, 2)).norm(), 1e-10) << tau;
  }
}

TEST(ToyProperty, ThirdOrderAccuracy) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto base = ToyUniverse::random(2, seed, 0.2, true);
    double prev = 0.0;
    for (double tau : {0.2, 0.1, 0.05}) {
      const auto u = base.with_tau(tau);
      const double err = (enumerate_S(u, 2, 2) - spectral_S(u, 2, 2)).norm();
      if (prev > 0.0) {
        EXPECT_GE(prev / err, 6.4) << "seed " << seed << " tau " << tau;
        EXPECT_LE(prev / err, 9.6) << "seed " << seed << " tau " << tau;
      }
      prev = err;
    }
  }
}

TEST(ToyProperty, SpectralEqualsReordered) {
  for (int d = 1; d <= 4; ++d) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto u = ToyUniverse::random(d, seed, 0.4);
      const auto spec = commutator_spectrum(u);
      for (int total = 0; total <= 8; ++total) {
        for (int n = 0; n <= total; ++n) {
          const Matrix a = spectral_S(u, spec, total - n, n);
          const Matrix b = reordered_S_approx(u, total - n, n);
          ASSERT_LE((a - b).norm(), 1e-9 * std::max(1.0, b.norm())) << d << " " << seed << " " << total << " " << n;
        }
      }
    }
  }
}

TEST(Spectrum, PauliExample) {
  const auto u = pauli(0.1);
  EXPECT_LE((commutator_generator(u) - sigma_z()).norm(), 1e-15);
  const auto s = commutator_spectrum(u);
  ASSERT_EQ(s.eigenvalues.size(), 2u);
  EXPECT_NEAR(s.eigenvalues[0], -1.0, 1e-14);
  EXPECT_NEAR(s.eigenvalues[1], 1.0, 1e-14);
}

TEST(Spectrum, RealSymmetricIsZero) {
  const auto u = real_symmetric(4, 0.1, 3);
  EXPECT_LE(commutator_generator(u).norm(), 1e-12);
  const auto s = commutator_spectrum(u);
  ASSERT_EQ(s.eigenvalues.size(), 1u);
  EXPECT_EQ(s.multiplicities[0], 4);
  EXPECT_LE((s.projectors[0] - Matrix::Identity(4, 4)).norm(), 1e-12);
}

TEST(SpectrumProperty, ProjectorAlgebra) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int d = 1 + static_cast<int>(seed % 6);
    const auto u = ToyUniverse::random(d, seed, 0.1);
    const auto s = commutator_spectrum(u);
    Matrix sum = Matrix::Zero(d, d);
    for (std::size_t j = 0; j < s.projectors.size(); ++j) {
      sum += s.projectors[j];
      for (std::size_t k = 0; k < s.projectors.size(); ++k) {
        const Matrix prod = s.projectors[j] * s.projectors[k];
        const Matrix want = j == k ? s.projectors[j] : Matrix::Zero(d, d);
        EXPECT_LE((prod - want).norm(), 1e-10);
      }
    }
    EXPECT_LE((sum - Matrix::Identity(d, d)).norm(), 1e-10);
    EXPECT_LE((s.reconstruct() - commutator_generator(u)).norm(), 1e-10 * std::max(1.0, s.spectral_norm));
    EXPECT_NEAR(s.reconstruct().trace().real(), 0.0, 1e-10 * std::max(1.0, s.spectral_norm));
    EXPECT_TRUE(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
  }
}

TEST(SpectralS, ForwardCountZero) {
  const auto u = ToyUniverse::random(3, 7, 0.3);
  EXPECT_LE((spectral_S(u, 5, 0) - step_operators(u, 5.0).backward).norm(), 1e-12);
}

TEST(SpectralS, WeightsMatchInterferenceCore) {
  const auto u = ToyUniverse::random(3, 12, 0.6);
  const auto s = commutator_spectrum(u);
  const Matrix ub_uf = step_operators(u, 3.0).backward * step_operators(u, 4.0).forward;
  const Matrix inner = ub_uf.adjoint() * spectral_S(u, s, 3, 4);
  for (std::size_t j = 0; j < s.projectors.size(); ++j) {
    const Matrix block = s.projectors[j] * inner * s.projectors[j];
    const auto want = interference_product(PathCount::from_steps(3, 4), PhaseArg(0.36 * s.eigenvalues[j])).to_complex();
    EXPECT_LE((block - want * s.projectors[j]).norm(), 1e-9 * std::max(1.0, std::abs(want)));
  }
}

TEST(Condition, Examples) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    bievo::testing::Gen g(seed);
    Vector psi(2);
    psi << std::complex<double>(g.uniform(-1, 1), g.uniform(-1, 1)), std::complex<double>(g.uniform(-1, 1), g.uniform(-1, 1));
    psi.normalize();
    EXPECT_TRUE(check_nonzero_eigenvalue_condition(pauli(0.1, psi), 1e-9));
    EXPECT_FALSE(check_nonzero_eigenvalue_condition(real_symmetric(3, 0.1, seed).with_psi0(basis(3, seed % 3)), 1e-9));
  }
  // Eigenvector of i[H_F, H_B] with a nonzero eigenvalue, in a space that also has a zero eigenvalue.
  Matrix h = Matrix::Zero(3, 3);
  h.topLeftCorner(2, 2) = (sigma_x() + sigma_y()) / 2.0;
  h(2, 2) = 0.5;
  EXPECT_TRUE(check_nonzero_eigenvalue_condition(ToyUniverse::with_time_reversal(h, basis(3, 0), 0.1), 1e-9));
  EXPECT_FALSE(check_nonzero_eigenvalue_condition(ToyUniverse::with_time_reversal(h, basis(3, 2), 0.1), 1e-9));
}

TEST(Reference, Examples) {
  const auto u = ToyUniverse::random(3, 1, 0.2);
  EXPECT_LE((bievolution_reference(u, 0) - 2.0 * u.psi0()).norm(), 1e-15);
  EXPECT_LE((bievolution_reference(u, 1) - symmetric_evolve(u, 1).state).norm(), 1e-13);

  Matrix w(1, 1);
  w << 1.3;
  const auto scalar = ToyUniverse::with_time_reversal(w, basis(1, 0), 0.1);
  EXPECT_NEAR(bievolution_reference(scalar, 7)(0).real(), 2.0 * std::cos(7 * 0.1 * 1.3), 1e-14);
  EXPECT_NEAR(bievolution_reference(scalar, 7)(0).imag(), 0.0, 1e-14);
}

TEST(BievolutionErrorTest, Examples) {
  const auto u = ToyUniverse::random(3, 5, 0.4);
  EXPECT_NEAR(bievolution_error(u, 1).fidelity_deficit, 0.0, 1e-14);

  const auto commuting = real_symmetric(3, 0.3, 2);
  const auto e = bievolution_error(commuting, 8);
  ASSERT_TRUE(e.boundary_mass_fraction.has_value());
  EXPECT_LT(*e.boundary_mass_fraction, 0.1);

  EXPECT_FALSE(bievolution_error(u, 600, false).boundary_mass_fraction.has_value());
  EXPECT_THROW(bievolution_error(u, 600, true), EnumerationCapExceeded);
}

TEST(BievolutionErrorTest, BoundaryTrendForPauli) {
  double prev = -1.0;
  for (int i = 0; i < 12; ++i) {
    const double z = 0.01 + (1.0 - 0.01) * i / 11.0;
    const auto e = bievolution_error(pauli(std::sqrt(z)), 10);
    ASSERT_TRUE(e.boundary_mass_fraction.has_value());
    EXPECT_GE(*e.boundary_mass_fraction, 0.0);
    EXPECT_LE(*e.boundary_mass_fraction, 1.0);
    EXPECT_GT(*e.boundary_mass_fraction, prev) << z;
    prev = *e.boundary_mass_fraction;
  }
}

TEST(BievolutionErrorProperty, FractionsInUnitInterval) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto u = ToyUniverse::random(1 + static_cast<int>(seed % 4), seed, 0.1 * static_cast<double>(seed));
    for (int steps : {0, 1, 2, 5, 16}) {
      const auto e = bievolution_error(u, steps);
      EXPECT_GE(e.fidelity_deficit, 0.0);
      EXPECT_LE(e.fidelity_deficit, 1.0);
      EXPECT_GE(*e.boundary_mass_fraction, 0.0);
      EXPECT_LE(*e.boundary_mass_fraction, 1.0);
    }
  }
}
