#include "emin/errors.hpp"
#include "emin/models.hpp"
#include "emin/quantum_state.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace emin;
using namespace testing_helpers;

TEST_CASE("state validation") {
  CHECK_NOTHROW(BipartiteState::from_density(identity(4) / 4.0, 2, 2));
  CHECK_THROWS_AS(BipartiteState::from_density(identity(4) / 2.0, 2, 2),
                  InvalidState);
  CHECK_THROWS_AS(BipartiteState::from_density(diag({1.5, -0.5, 0, 0}), 2, 2),
                  InvalidState);
  CHECK_THROWS_AS(BipartiteState::from_density(identity(4) / 4.0, 2, 3),
                  DimensionMismatch);
  ComplexMatrix skew = identity(4) / 4.0;
  skew(0, 1) = 0.1;
  CHECK_THROWS_AS(BipartiteState::from_density(skew, 2, 2), NotHermitian);
  CHECK_THROWS_AS(BipartiteState::from_pure(two_qubit(1.0, 1.0), 2, 2),
                  NotNormalized);
}

TEST_CASE("tiny negative eigenvalues are clamped") {
  const RealVector s = clamped_spectrum(diag({1.0 + 5e-11, -5e-11}));
  CHECK(s(0) == doctest::Approx(1.0));
  CHECK(s(1) == 0.0);
  CHECK_THROWS_AS(clamped_spectrum(diag({1.1, -0.1})), InvalidState);
}

TEST_CASE("schmidt_pure examples") {
  const PureSchmidt product = schmidt_pure(ket(4, 0), 2, 2);
  CHECK(product.coefficients(0) == doctest::Approx(1.0));
  CHECK(std::abs(product.coefficients(1)) < 1e-15);

  const PureSchmidt b = schmidt_pure(bell(), 2, 2);
  CHECK(b.coefficients(0) == doctest::Approx(0.5));
  CHECK(b.coefficients(1) == doctest::Approx(0.5));

  const PureSchmidt s = schmidt_pure(two_qubit(0.6, 0.8), 2, 2);
  CHECK(std::abs(s.coefficients(0) - 0.64) < 1e-12);
  CHECK(std::abs(s.coefficients(1) - 0.36) < 1e-12);

  CHECK_THROWS_AS(schmidt_pure(2.0 * ket(4, 0), 2, 2), NotNormalized);
}

TEST_CASE("schmidt_pure reconstructs a random state") {
  Rng rng({21, 0, 0});
  const ComplexVector psi = haar_vector(rng, 6);
  const PureSchmidt s = schmidt_pure(psi, 2, 3);
  CHECK(s.coefficients.sum() == doctest::Approx(1.0).epsilon(1e-12));
  ComplexVector back = ComplexVector::Zero(6);
  for (Eigen::Index k = 0; k < s.coefficients.size(); ++k)
    back += std::sqrt(s.coefficients(k)) *
            kron(s.basis_a.col(k), s.basis_b.col(k));
  CHECK(std::norm(back.dot(psi)) > 1.0 - 1e-10);
}

TEST_CASE("operator_schmidt examples") {
  // Traceless local parts normalized to unit HS norm.
  const ComplexMatrix a = pauli_z() / std::sqrt(2.0);
  const ComplexMatrix b = pauli_x() / std::sqrt(2.0);
  const ComplexMatrix h = kron(a, identity(2)) + kron(identity(2), b);
  const OperatorSchmidt local = operator_schmidt(h, 2, 2);
  CHECK(local.strengths.size() == 2);
  CHECK((local.reconstruct() - h).norm() < 1e-12);

  const ComplexMatrix xz = kron(pauli_x(), pauli_z());
  const OperatorSchmidt single = operator_schmidt(xz, 2, 2);
  REQUIRE(single.strengths.size() == 1);
  CHECK(single.strengths[0] == doctest::Approx(2.0));
  CHECK(std::abs(std::abs(hs_inner(single.factors_a[0], pauli_x())) -
                 std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(std::abs(hs_inner(single.factors_b[0], pauli_z())) -
                 std::sqrt(2.0)) < 1e-12);
  CHECK((single.reconstruct() - xz).norm() < 1e-12);

  const HamiltonianSpec jc = jaynes_cummings({0.0, 2});
  const OperatorSchmidt jc_os = operator_schmidt(jc.total(), 2, 2);
  CHECK(jc_os.strengths.size() <= 2);
  CHECK((jc_os.reconstruct() - jc.total()).norm() < 1e-12);

  CHECK_THROWS_AS(operator_schmidt(identity(4), 2, 3), DimensionMismatch);
}

TEST_CASE("Gell-Mann basis is Hermitian and orthonormal") {
  for (int n : {2, 3, 4}) {
    const auto basis = gell_mann_basis(n);
    REQUIRE(basis.size() == std::size_t(n * n));
    CHECK(max_abs(basis[0] - identity(n) / std::sqrt(double(n))) < 1e-15);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      CHECK(hermiticity_defect(basis[i]) == 0.0);
      for (std::size_t j = 0; j < basis.size(); ++j)
        CHECK(std::abs(hs_inner(basis[i], basis[j]) - (i == j ? 1.0 : 0.0)) <
              1e-14);
    }
  }
  const auto qubit = gell_mann_basis(2);
  CHECK(max_abs(qubit[1] - pauli_x() / std::sqrt(2.0)) < 1e-15);
  CHECK(max_abs(qubit[2] - pauli_y() / std::sqrt(2.0)) < 1e-15);
  CHECK(max_abs(qubit[3] - pauli_z() / std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("hs_expand examples") {
  const HsExpansion mixed =
      hs_expand(BipartiteState::from_density(identity(4) / 4.0, 2, 2));
  CHECK(mixed.x.cwiseAbs().maxCoeff() < 1e-15);
  CHECK(mixed.y.cwiseAbs().maxCoeff() < 1e-15);
  CHECK(mixed.t.cwiseAbs().maxCoeff() < 1e-15);

  const HsExpansion b = hs_expand(BipartiteState::from_pure(bell(), 2, 2));
  CHECK(b.t(0, 0) == doctest::Approx(0.5));
  CHECK(b.t(1, 1) == doctest::Approx(-0.5));
  CHECK(b.t(2, 2) == doctest::Approx(0.5));
  int nonzero = 0;
  for (Eigen::Index i = 0; i < b.t.rows(); ++i)
    for (Eigen::Index j = 0; j < b.t.cols(); ++j)
      nonzero += std::abs(b.t(i, j)) > 1e-12;
  CHECK(nonzero == 3);

  Rng rng({31, 0, 0});
  const ComplexMatrix product =
      kron(ginibre_density(rng, 2, 2), ginibre_density(rng, 3, 3));
  const BipartiteState p = BipartiteState::from_density(product, 2, 3);
  const HsExpansion hp = hs_expand(p);
  CHECK(hp.x.size() == 3);
  CHECK(hp.y.size() == 8);
  CHECK((hp.reconstruct() - product).norm() < 1e-12);
  CHECK(hp.max_imag_residue < 1e-10);
}

TEST_CASE("marginal_basis examples") {
  const BipartiteState s = BipartiteState::from_pure(two_qubit(0.8, 0.6), 2, 2);
  const MeasurementBasis m = marginal_basis(s);
  CHECK_FALSE(m.degenerate_marginal());
  CHECK(max_abs(m.projectors()[0] - diag({1, 0})) < 1e-12);
  CHECK(max_abs(m.projectors()[1] - diag({0, 1})) < 1e-12);

  CHECK(marginal_basis(BipartiteState::from_pure(bell(), 2, 2))
            .degenerate_marginal());

  const double eps = 1e-12;
  const BipartiteState near = BipartiteState::from_density(
      kron(diag({0.5 + eps, 0.5 - eps}), diag({1, 0})), 2, 2);
  CHECK(marginal_basis(near).degenerate_marginal());
  CHECK_FALSE(marginal_basis(near, 1e-13).degenerate_marginal());
}

TEST_CASE("MeasurementBasis invariants") {
  Rng rng({41, 0, 0});
  const MeasurementBasis b = MeasurementBasis::from_vectors(haar_unitary(rng, 3));
  ComplexMatrix sum = ComplexMatrix::Zero(3, 3);
  for (std::size_t k = 0; k < b.projectors().size(); ++k) {
    sum += b.projectors()[k];
    for (std::size_t j = 0; j < b.projectors().size(); ++j) {
      const ComplexMatrix expected =
          k == j ? b.projectors()[k] : ComplexMatrix::Zero(3, 3);
      CHECK(max_abs(b.projectors()[k] * b.projectors()[j] - expected) < 1e-10);
    }
  }
  CHECK(max_abs(sum - identity(3)) < 1e-10);
  CHECK_THROWS_AS(MeasurementBasis::from_vectors(2.0 * identity(2)), DomainError);
}

TEST_CASE("measure_local examples") {
  Rng rng({51, 0, 0});
  const ComplexMatrix ra = ginibre_density(rng, 2, 2);
  const ComplexMatrix rb = ginibre_density(rng, 2, 2);
  const BipartiteState product = BipartiteState::from_density(kron(ra, rb), 2, 2);
  CHECK(max_abs(measure_local(product, marginal_basis(product)).rho() -
                product.rho()) < 1e-14);

  const BipartiteState s = BipartiteState::from_pure(two_qubit(0.6, 0.8), 2, 2);
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 0) = 0.36;
  expected(3, 3) = 0.64;
  const BipartiteState m = measure_local(s, MeasurementBasis::computational(2));
  CHECK(max_abs(m.rho() - expected) < 1e-15);

  const BipartiteState random = sample_state(2, 3, Ensemble::mixed(), {52, 0, 0});
  const MeasurementBasis basis = marginal_basis(random);
  const BipartiteState once = measure_local(random, basis);
  CHECK(max_abs(measure_local(once, basis).rho() - once.rho()) < 1e-15);
  CHECK(max_abs(once.marginal(Subsystem::A) - random.marginal(Subsystem::A)) <
        1e-10);
  CHECK(std::abs(once.rho().trace().real() - 1.0) < 1e-12);

  CHECK_THROWS_AS(measure_local(random, MeasurementBasis::computational(3)),
                  DimensionMismatch);
}

TEST_CASE("measurement is unital") {
  const ComplexMatrix mixed = identity(6) / 6.0;
  const BipartiteState s = BipartiteState::from_density(mixed, 2, 3);
  CHECK(measure_local(s, MeasurementBasis::computational(2)).rho() == mixed);
  CHECK(measure_local(s, marginal_basis(s)).rho() == mixed);
}

TEST_CASE("geometric_min examples") {
  Rng rng({61, 0, 0});
  const BipartiteState product = BipartiteState::from_density(
      kron(ginibre_density(rng, 2, 2), ginibre_density(rng, 2, 2)), 2, 2);
  CHECK(geometric_min(product, marginal_basis(product)) < 1e-12);

  const BipartiteState s = BipartiteState::from_pure(two_qubit(0.6, 0.8), 2, 2);
  CHECK(std::abs(geometric_min(s, MeasurementBasis::computational(2)) - 0.4608) <
        1e-12);

  const BipartiteState b = BipartiteState::from_pure(bell(), 2, 2);
  CHECK(std::abs(geometric_min(b, MeasurementBasis::computational(2)) - 0.5) <
        1e-12);
}
