#pragma once

// Ergotropy, passive energies and the ergotropy-based measurement-induced
// nonlocality (EMIN) N_xi(rho, H) = xi(rho, H) - xi(Pi^a(rho), H), computed by
// several independent routes, plus the thermal (Gibbs) entropy toolkit.

#include "emin/linalg.hpp"
#include "emin/quantum_state.hpp"

#include <optional>

namespace emin {

/// Bipartite Hamiltonian with its cached spectral decomposition. When built
/// with `non_interacting`, keeps the local parts so that
/// total == A (x) I + I (x) B.
class HamiltonianSpec {
public:
  static HamiltonianSpec non_interacting(const ComplexMatrix &local_a,
                                         const ComplexMatrix &local_b);
  static HamiltonianSpec interacting(const ComplexMatrix &total, int dim_a,
                                     int dim_b);

  const ComplexMatrix &total() const { return total_; }
  int dim_a() const { return dim_a_; }
  int dim_b() const { return dim_b_; }
  int dim() const { return dim_a_ * dim_b_; }
  bool is_non_interacting() const { return local_a_.has_value(); }
  /// Throws InteractingHamiltonian when the structure is not local.
  const ComplexMatrix &local_a() const;
  const ComplexMatrix &local_b() const;

  /// Ascending eigenvalues and eigenvectors of the total Hamiltonian.
  const HermitianEig &eig() const { return eig_; }
  const RealVector &spectrum() const { return eig_.values; }

  /// Same structure with every energy shifted by c (H + cI).
  HamiltonianSpec shifted(double c) const;

private:
  HamiltonianSpec() = default;

  ComplexMatrix total_;
  int dim_a_ = 0;
  int dim_b_ = 0;
  std::optional<ComplexMatrix> local_a_;
  std::optional<ComplexMatrix> local_b_;
  HermitianEig eig_;
};

struct ErgotropyReport {
  double energy = 0.0;
  double passive_energy = 0.0;
  double ergotropy = 0.0;
  ComplexMatrix passive_state;
};

/// sum_n r_n(desc) e_n(asc). Missing populations count as zero, so
/// `populations_desc` may be shorter than `energies_asc`.
double sorted_pairing(const RealVector &populations_desc,
                      const RealVector &energies_asc);

/// Passive state and energies of rho with respect to H.
ErgotropyReport passive(const ComplexMatrix &rho, const HamiltonianSpec &h);
/// Same for a plain Hermitian operator (used for local Hamiltonians).
ErgotropyReport passive(const ComplexMatrix &rho, const ComplexMatrix &h);

double passive_energy(const ComplexMatrix &rho, const HamiltonianSpec &h);
double energy(const ComplexMatrix &rho, const ComplexMatrix &h);
double ergotropy(const ComplexMatrix &rho, const HamiltonianSpec &h);
double ergotropy(const ComplexMatrix &rho, const ComplexMatrix &h);

/// xi(rho, H) - [xi(rho_a, A) + xi(rho_b, B)]. Local ergotropy under an
/// interacting Hamiltonian would need an optimization over local unitaries;
/// that case throws InteractingHamiltonian.
double ergotropic_gap(const BipartiteState &state, const HamiltonianSpec &h);

/// xi(rho) - xi(Pi^a(rho)).
double emin_direct(const BipartiteState &state, const HamiltonianSpec &h,
                   const MeasurementBasis &basis);

/// Closed form for a pure state measured in its own Schmidt basis:
/// cross term over i != j of sqrt(l_i l_j) s_l <a_j|A_l|a_i><b_j|B_l|b_i>,
/// plus sum_k e_k(asc) (l_k(desc) - delta_k0).
double emin_pure_closed(const ComplexVector &psi, const HamiltonianSpec &h);

/// Closed form in Hilbert-Schmidt coordinates. Valid when `basis` leaves the
/// marginal rho_a invariant (its eigenbasis, or any basis if rho_a is
/// maximally mixed).
double emin_mixed_closed(const BipartiteState &state, const HamiltonianSpec &h,
                         const MeasurementBasis &basis);

/// E_p(Pi^a(rho)) - E_p(rho), exact for non-interacting H.
double emin_noninteracting(const BipartiteState &state, const HamiltonianSpec &h,
                           const MeasurementBasis &basis);

struct MaxEntEmin {
  double value;                 // (1/d)(sum_{k<d} e_k - d e_0)
  double level_spacing_form;    // (1/d) sum_{i<d-1} (d-1-i)(e_{i+1}-e_i)
};

/// EMIN of a maximally entangled state with Schmidt rank d under a
/// non-interacting H, measured in its Schmidt basis.
MaxEntEmin emin_maxent(const HamiltonianSpec &h, int d);

/// Von Neumann entropy, natural log, 0 log 0 = 0.
double entropy(const ComplexMatrix &rho);
/// D(a||b) = Tr a (log a - log b). Throws SupportViolation when a has weight
/// outside the support of b.
double relative_entropy(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix gibbs_state(const ComplexMatrix &h, double beta);

/// Both candidate bounds on beta N_xi built from relative entropies to the
/// Gibbs state rho_beta, plus the exact decomposition
/// beta N_xi = D(rho) - D(Pi rho) + D((Pi rho)^p) - D(rho^p).
/// The orientation of the second bound is ambiguous, so both readings are
/// reported rather than assumed.
struct EminBounds {
  double lower = 0.0; // D((Pi rho)^p) - D(Pi rho) - D(rho^p)
  double upper = 0.0; // D(rho) + D(Pi rho) - D(rho^p)
  double emin = 0.0;
  double beta_emin = 0.0;
  double identity_residual = 0.0;
  bool lower_holds = false; // lower <= beta N_xi
  bool upper_below = false; // upper <= beta N_xi
  bool upper_above = false; // beta N_xi <= upper
};

inline constexpr double kDefaultBeta = 1.0;

EminBounds emin_bounds(const BipartiteState &state, const HamiltonianSpec &h,
                       const MeasurementBasis &basis, double beta = kDefaultBeta);

} // namespace emin
