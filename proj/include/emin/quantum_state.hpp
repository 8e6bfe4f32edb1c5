#pragma once

// Bipartite states on C^n (x) C^m, their decompositions, and the locally
// invariant projective measurement on subsystem A.

#include "emin/linalg.hpp"

#include <vector>

namespace emin {

/// Eigenvalues in [-kPsdTol, 0) are read as 0; anything more negative is
/// not a state.
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kNormTol = 1e-10;
inline constexpr double kDefaultDegeneracyTol = 1e-9;

/// Descending spectrum of a density matrix with tiny negatives clamped to 0.
/// Throws InvalidState when an eigenvalue is below -kPsdTol.
RealVector clamped_spectrum(const ComplexMatrix &rho);

class MeasurementBasis;

class BipartiteState {
public:
  /// Validates Hermiticity, positivity and unit trace; stores (rho+rho^dagger)/2.
  static BipartiteState from_density(const ComplexMatrix &rho, int dim_a,
                                     int dim_b);
  /// |psi><psi|; psi must have unit norm (NotNormalized otherwise).
  static BipartiteState from_pure(const ComplexVector &psi, int dim_a,
                                  int dim_b);

  int dim_a() const { return dim_a_; }
  int dim_b() const { return dim_b_; }
  int dim() const { return dim_a_ * dim_b_; }
  const ComplexMatrix &rho() const { return rho_; }
  ComplexMatrix marginal(Subsystem keep) const;

private:
  BipartiteState(ComplexMatrix rho, int dim_a, int dim_b)
      : rho_(std::move(rho)), dim_a_(dim_a), dim_b_(dim_b) {}

  ComplexMatrix rho_;
  int dim_a_;
  int dim_b_;

  friend BipartiteState measure_local(const BipartiteState &,
                                      const MeasurementBasis &);
};

/// Schmidt form psi = sum_i sqrt(lambda_i) |alpha_i> (x) |beta_i>.
/// `coefficients` holds the squared Schmidt coefficients (descending, length
/// min(n, m)). `basis_a` (n x n) and `basis_b` (m x m) are unitary; their
/// leading columns are the Schmidt vectors and any remaining columns complete
/// the basis.
struct PureSchmidt {
  RealVector coefficients;
  ComplexMatrix basis_a;
  ComplexMatrix basis_b;
};

PureSchmidt schmidt_pure(const ComplexVector &psi, int dim_a, int dim_b);

/// H = sum_l s_l A_l (x) B_l with Tr(A_l A_k^dagger) = Tr(B_l B_k^dagger) =
/// delta_lk. Terms with negligible strength are dropped.
struct OperatorSchmidt {
  std::vector<double> strengths; // descending, > 0
  std::vector<ComplexMatrix> factors_a;
  std::vector<ComplexMatrix> factors_b;

  ComplexMatrix reconstruct() const;
};

OperatorSchmidt operator_schmidt(const ComplexMatrix &h, int dim_a, int dim_b);

/// Hermitian, Hilbert-Schmidt orthonormal operator basis of size n^2.
/// Element 0 is I/sqrt(n). Then, for every index pair j < k in lexicographic
/// order, the symmetric (E_jk + E_kj)/sqrt2 followed by the antisymmetric
/// (-i E_jk + i E_kj)/sqrt2 generator. Last come the n-1 diagonal generators
/// (sum_{i<l} E_ii - l E_ll)/sqrt(l(l+1)), l = 1..n-1. For n = 2 this is
/// {I, sigma_x, sigma_y, sigma_z}/sqrt2.
std::vector<ComplexMatrix> gell_mann_basis(int n);

/// Coordinates of rho = (1/sqrt(nm)) X_0(x)Y_0 + sum x_i X_i(x)Y_0
///                    + sum y_j X_0(x)Y_j + sum t_ij X_i(x)Y_j.
struct HsExpansion {
  RealVector x;  // n^2 - 1
  RealVector y;  // m^2 - 1
  RealMatrix t;  // (n^2 - 1) x (m^2 - 1)
  std::vector<ComplexMatrix> basis_a;
  std::vector<ComplexMatrix> basis_b;
  double max_imag_residue = 0.0;

  ComplexMatrix reconstruct() const;
};

HsExpansion hs_expand(const BipartiteState &state);

/// Complete set of rank-1 orthogonal projectors on subsystem A.
class MeasurementBasis {
public:
  /// Columns of `vectors` must form an orthonormal basis of C^n.
  static MeasurementBasis from_vectors(const ComplexMatrix &vectors,
                                       bool degenerate_marginal = false);
  static MeasurementBasis computational(int n);

  int dim() const { return static_cast<int>(vectors_.rows()); }
  const std::vector<ComplexMatrix> &projectors() const { return projectors_; }
  const ComplexMatrix &vectors() const { return vectors_; }
  bool degenerate_marginal() const { return degenerate_; }

private:
  MeasurementBasis() = default;

  ComplexMatrix vectors_;
  std::vector<ComplexMatrix> projectors_;
  bool degenerate_ = false;
};

/// Eigenbasis of rho_a ordered by descending population. Flags the basis as
/// degenerate when two adjacent populations differ by less than `tol`.
MeasurementBasis marginal_basis(const BipartiteState &state,
                                double degeneracy_tol = kDefaultDegeneracyTol);

/// Measurement in the Schmidt basis of a pure state (the leading columns of
/// basis_a, completed to a full basis).
MeasurementBasis schmidt_basis(const PureSchmidt &schmidt);

/// Pi^a(rho) = sum_k (P_k (x) I) rho (P_k (x) I).
BipartiteState measure_local(const BipartiteState &state,
                             const MeasurementBasis &basis);

/// Hilbert-Schmidt distance squared ||rho - Pi^a(rho)||^2.
double geometric_min(const BipartiteState &state, const MeasurementBasis &basis);

} // namespace emin
