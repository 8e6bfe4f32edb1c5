#include "emin/models.hpp"

#include "emin/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace emin {

ComplexMatrix annihilation(int field_dim) {
  ComplexMatrix a = ComplexMatrix::Zero(field_dim, field_dim);
  for (int k = 1; k < field_dim; ++k)
    a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

ComplexMatrix number_operator(int field_dim) {
  ComplexMatrix n = ComplexMatrix::Zero(field_dim, field_dim);
  for (int k = 0; k < field_dim; ++k)
    n(k, k) = static_cast<double>(k);
  return n;
}

HamiltonianSpec jaynes_cummings(const JcParams &p) {
  if (p.field_dim < 2)
    throw DomainError("field_dim must be at least 2");
  if (!std::isfinite(p.g))
    throw DomainError("coupling g must be finite");
  const ComplexMatrix qubit = pauli_z() / 2.0;
  const ComplexMatrix field = number_operator(p.field_dim);
  if (p.g == 0.0)
    return HamiltonianSpec::non_interacting(qubit, field);
  const ComplexMatrix a = annihilation(p.field_dim);
  const ComplexMatrix h =
      kron(qubit, identity(p.field_dim)) + kron(identity(2), field) +
      p.g * (kron(sigma_plus(), a) + kron(sigma_minus(), a.adjoint()));
  return HamiltonianSpec::interacting(h, 2, p.field_dim);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(const RngStream &stream)
    : engine_(splitmix64(splitmix64(splitmix64(stream.master_seed) ^
                                    stream.sample_index) ^
                         (stream.lane * 0xd1b54a32d192ed03ULL))) {}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * factor;
  has_spare_ = true;
  return u * factor;
}

cplx Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * M_SQRT1_2, im * M_SQRT1_2};
}

ComplexMatrix ginibre_matrix(Rng &rng, int rows, int cols) {
  ComplexMatrix g(rows, cols);
  // Row-major fill keeps the draw order independent of Eigen's storage.
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      g(i, j) = rng.complex_normal();
  return g;
}

ComplexVector haar_vector(Rng &rng, int dim) {
  ComplexVector v = ginibre_matrix(rng, dim, 1).col(0);
  return v / v.norm();
}

ComplexMatrix haar_unitary(Rng &rng, int dim) {
  const ComplexMatrix g = ginibre_matrix(rng, dim, dim);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase freedom of QR so that Q is Haar distributed.
  for (int k = 0; k < dim; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0)
      q.col(k) *= r(k, k) / mag;
  }
  return q;
}

ComplexMatrix ginibre_density(Rng &rng, int dim, int rank) {
  const ComplexMatrix g = ginibre_matrix(rng, dim, rank);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return (rho + rho.adjoint()) / 2.0;
}

namespace {

ComplexMatrix draw_density(int dim, const Ensemble &ensemble, Rng &rng) {
  if (ensemble.kind == Ensemble::Kind::Pure) {
    const ComplexVector psi = haar_vector(rng, dim);
    return psi * psi.adjoint();
  }
  const int rank = ensemble.rank <= 0 ? dim : ensemble.rank;
  if (rank > dim)
    throw DomainError("Ginibre rank " + std::to_string(rank) +
                      " exceeds dimension " + std::to_string(dim));
  return ginibre_density(rng, dim, rank);
}

void check_dims(int dim_a, int dim_b) {
  if (dim_a < 1 || dim_b < 1)
    throw DimensionMismatch("subsystem dimensions must be positive");
}

} // namespace

BipartiteState sample_state(int dim_a, int dim_b, const Ensemble &ensemble,
                            const RngStream &stream) {
  check_dims(dim_a, dim_b);
  Rng rng(stream);
  return BipartiteState::from_density(draw_density(dim_a * dim_b, ensemble, rng),
                                      dim_a, dim_b);
}

BipartiteState sample_state_diagonal_marginal(int dim_a, int dim_b,
                                              const Ensemble &ensemble,
                                              const RngStream &stream) {
  check_dims(dim_a, dim_b);
  Rng rng(stream);
  const ComplexMatrix rho = draw_density(dim_a * dim_b, ensemble, rng);
  const HermitianEig eig =
      eig_hermitian(partial_trace(rho, dim_a, dim_b, Subsystem::A));

  std::vector<int> order(dim_a);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int l, int r) {
    return eig.values(l) > eig.values(r);
  });
  ComplexMatrix u(dim_a, dim_a);
  for (int k = 0; k < dim_a; ++k)
    u.col(k) = eig.vectors.col(order[k]);

  const ComplexMatrix w = kron(u, identity(dim_b));
  ComplexMatrix rotated = w.adjoint() * rho * w;
  rotated = (rotated + rotated.adjoint()) / 2.0;
  return BipartiteState::from_density(rotated, dim_a, dim_b);
}

ComplexMatrix sample_hermitian(int dim, Rng &rng) {
  const ComplexMatrix g = ginibre_matrix(rng, dim, dim);
  return (g + g.adjoint()) / 2.0;
}

HamiltonianSpec sample_hamiltonian(int dim_a, int dim_b,
                                   const RngStream &stream) {
  check_dims(dim_a, dim_b);
  Rng rng(stream);
  return HamiltonianSpec::interacting(sample_hermitian(dim_a * dim_b, rng),
                                      dim_a, dim_b);
}

HamiltonianSpec sample_noninteracting_hamiltonian(int dim_a, int dim_b,
                                                  const RngStream &stream) {
  check_dims(dim_a, dim_b);
  Rng rng(stream);
  const ComplexMatrix a = sample_hermitian(dim_a, rng);
  const ComplexMatrix b = sample_hermitian(dim_b, rng);
  return HamiltonianSpec::non_interacting(a, b);
}

} // namespace emin
