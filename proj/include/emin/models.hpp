#pragma once

// Jaynes-Cummings Hamiltonian and seeded random ensembles of states and
// Hamiltonians.

#include "emin/ergotropy.hpp"
#include "emin/linalg.hpp"
#include "emin/quantum_state.hpp"

#include <cstdint>
#include <random>

namespace emin {

struct JcParams {
  double g = 0.0;
  int field_dim = 2;
};

/// H = sigma_z/2 (x) I + I (x) a^dagger a + g (sigma_+ (x) a + sigma_- (x) a^dagger)
/// on qubit (x) truncated field, qubit basis {|0>, |1>} with sigma_z = diag(1,-1)
/// and sigma_+ = |0><1|. Non-interacting structure when g == 0.
HamiltonianSpec jaynes_cummings(const JcParams &p);

/// Truncated annihilation operator, a|k> = sqrt(k)|k-1>.
ComplexMatrix annihilation(int field_dim);
ComplexMatrix number_operator(int field_dim);

/// Identifies one reproducible random draw. `lane` separates independent
/// purposes (state vs. Hamiltonian, ...) that share a sample index.
struct RngStream {
  std::uint64_t master_seed = 0;
  std::uint64_t sample_index = 0;
  std::uint64_t lane = 0;
};

/// Deterministic generator for one RngStream. The stream seed is a SplitMix64
/// hash of (master_seed, sample_index, lane) driving std::mt19937_64; uniforms
/// use the top 53 bits and normals use the Marsaglia polar method, so draws
/// do not depend on the standard library distribution implementations.
class Rng {
public:
  explicit Rng(const RngStream &stream);

  double uniform();  // [0, 1)
  double normal();   // N(0, 1)
  cplx complex_normal(); // real and imaginary parts N(0, 1/2)

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x);

ComplexMatrix ginibre_matrix(Rng &rng, int rows, int cols);
ComplexVector haar_vector(Rng &rng, int dim);
ComplexMatrix haar_unitary(Rng &rng, int dim);
/// G G^dagger / Tr with G of size dim x rank.
ComplexMatrix ginibre_density(Rng &rng, int dim, int rank);

struct Ensemble {
  enum class Kind { Pure, Mixed };
  Kind kind = Kind::Mixed;
  int rank = 0; // mixed only; 0 means full rank

  static Ensemble pure() { return {Kind::Pure, 1}; }
  static Ensemble mixed(int rank = 0) { return {Kind::Mixed, rank}; }
};

/// Haar (pure) or Ginibre (mixed) draw, rotated locally by U_a^dagger (x) I so
/// that rho_a is diagonal in the computational basis with descending
/// populations.
BipartiteState sample_state_diagonal_marginal(int dim_a, int dim_b,
                                              const Ensemble &ensemble,
                                              const RngStream &stream);

/// Same ensembles without the marginal rotation.
BipartiteState sample_state(int dim_a, int dim_b, const Ensemble &ensemble,
                            const RngStream &stream);

/// GUE-style draw (G + G^dagger)/2 with complex Gaussian G.
ComplexMatrix sample_hermitian(int dim, Rng &rng);
HamiltonianSpec sample_hamiltonian(int dim_a, int dim_b, const RngStream &stream);
HamiltonianSpec sample_noninteracting_hamiltonian(int dim_a, int dim_b,
                                                  const RngStream &stream);

} // namespace emin
