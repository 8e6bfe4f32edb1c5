#include "emin/ergotropy.hpp"

#include "emin/errors.hpp"

#include <cmath>
#include <string>

namespace emin {

namespace {

constexpr double kEntropyCutoff = 1e-14;
constexpr double kSupportWeightTol = 1e-12;
constexpr double kBoundTol = 1e-10;

void check_square(const ComplexMatrix &rho, Eigen::Index dim, const char *what) {
  if (rho.rows() != dim || rho.cols() != dim)
    throw DimensionMismatch(std::string(what) + ": operand is " +
                            std::to_string(rho.rows()) + "x" +
                            std::to_string(rho.cols()) + ", expected " +
                            std::to_string(dim) + " square");
}

void check_state_matches(const BipartiteState &state, const HamiltonianSpec &h) {
  if (state.dim_a() != h.dim_a() || state.dim_b() != h.dim_b())
    throw DimensionMismatch("state is " + std::to_string(state.dim_a()) + "x" +
                            std::to_string(state.dim_b()) +
                            " but Hamiltonian is " + std::to_string(h.dim_a()) +
                            "x" + std::to_string(h.dim_b()));
}

// Tr(x y) without forming the product.
cplx trace_product(const ComplexMatrix &x, const ComplexMatrix &y) {
  return (x.transpose().array() * y.array()).sum();
}

ErgotropyReport passive_from_eig(const ComplexMatrix &rho,
                                 const ComplexMatrix &h,
                                 const HermitianEig &h_eig) {
  check_square(rho, h.rows(), "passive");
  const RealVector pops = clamped_spectrum(rho);
  ErgotropyReport out;
  out.energy = energy(rho, h);
  out.passive_energy = sorted_pairing(pops, h_eig.values);
  out.ergotropy = out.energy - out.passive_energy;
  out.passive_state = h_eig.vectors * pops.cast<cplx>().asDiagonal() *
                      h_eig.vectors.adjoint();
  return out;
}

} // namespace

HamiltonianSpec HamiltonianSpec::non_interacting(const ComplexMatrix &local_a,
                                                 const ComplexMatrix &local_b) {
  HamiltonianSpec out;
  out.local_a_ = hermitize(local_a);
  out.local_b_ = hermitize(local_b);
  out.dim_a_ = static_cast<int>(local_a.rows());
  out.dim_b_ = static_cast<int>(local_b.rows());
  out.total_ = kron(*out.local_a_, identity(out.dim_b_)) +
               kron(identity(out.dim_a_), *out.local_b_);
  out.eig_ = eig_hermitian(out.total_);
  return out;
}

HamiltonianSpec HamiltonianSpec::interacting(const ComplexMatrix &total,
                                             int dim_a, int dim_b) {
  if (dim_a < 1 || dim_b < 1)
    throw DimensionMismatch("subsystem dimensions must be positive");
  check_square(total, Eigen::Index(dim_a) * dim_b, "HamiltonianSpec");
  HamiltonianSpec out;
  out.total_ = hermitize(total);
  out.dim_a_ = dim_a;
  out.dim_b_ = dim_b;
  out.eig_ = eig_hermitian(out.total_);
  return out;
}

const ComplexMatrix &HamiltonianSpec::local_a() const {
  if (!local_a_)
    throw InteractingHamiltonian("Hamiltonian has no local decomposition");
  return *local_a_;
}

const ComplexMatrix &HamiltonianSpec::local_b() const {
  if (!local_b_)
    throw InteractingHamiltonian("Hamiltonian has no local decomposition");
  return *local_b_;
}

HamiltonianSpec HamiltonianSpec::shifted(double c) const {
  if (is_non_interacting())
    return non_interacting(*local_a_ + c * identity(dim_a_), *local_b_);
  return interacting(total_ + c * identity(dim()), dim_a_, dim_b_);
}

double sorted_pairing(const RealVector &populations_desc,
                      const RealVector &energies_asc) {
  if (populations_desc.size() > energies_asc.size())
    throw DimensionMismatch("more populations than energy levels");
  double sum = 0.0;
  for (Eigen::Index k = 0; k < populations_desc.size(); ++k)
    sum += populations_desc(k) * energies_asc(k);
  return sum;
}

double energy(const ComplexMatrix &rho, const ComplexMatrix &h) {
  check_square(rho, h.rows(), "energy");
  return trace_product(rho, h).real();
}

ErgotropyReport passive(const ComplexMatrix &rho, const HamiltonianSpec &h) {
  return passive_from_eig(rho, h.total(), h.eig());
}

ErgotropyReport passive(const ComplexMatrix &rho, const ComplexMatrix &h) {
  return passive_from_eig(rho, h, eig_hermitian(h));
}

double passive_energy(const ComplexMatrix &rho, const HamiltonianSpec &h) {
  check_square(rho, h.dim(), "passive_energy");
  return sorted_pairing(clamped_spectrum(rho), h.spectrum());
}

double ergotropy(const ComplexMatrix &rho, const HamiltonianSpec &h) {
  return energy(rho, h.total()) - passive_energy(rho, h);
}

double ergotropy(const ComplexMatrix &rho, const ComplexMatrix &h) {
  return passive(rho, h).ergotropy;
}

double ergotropic_gap(const BipartiteState &state, const HamiltonianSpec &h) {
  check_state_matches(state, h);
  if (!h.is_non_interacting())
    throw InteractingHamiltonian(
        "local ergotropy under an interacting Hamiltonian is not available");
  const double global = ergotropy(state.rho(), h);
  const double local_a = ergotropy(state.marginal(Subsystem::A), h.local_a());
  const double local_b = ergotropy(state.marginal(Subsystem::B), h.local_b());
  return global - (local_a + local_b);
}

double emin_direct(const BipartiteState &state, const HamiltonianSpec &h,
                   const MeasurementBasis &basis) {
  check_state_matches(state, h);
  const BipartiteState measured = measure_local(state, basis);
  return ergotropy(state.rho(), h) - ergotropy(measured.rho(), h);
}

double emin_pure_closed(const ComplexVector &psi, const HamiltonianSpec &h) {
  const int n = h.dim_a();
  const int m = h.dim_b();
  const PureSchmidt schmidt = schmidt_pure(psi, n, m);
  const OperatorSchmidt ops = operator_schmidt(h.total(), n, m);
  const RealVector &lambda = schmidt.coefficients;
  const Eigen::Index rank = lambda.size();

  cplx cross = 0.0;
  for (std::size_t l = 0; l < ops.strengths.size(); ++l) {
    // Matrix elements <alpha_j|A_l|alpha_i> and <beta_j|B_l|beta_i>.
    const ComplexMatrix ma =
        schmidt.basis_a.adjoint() * ops.factors_a[l] * schmidt.basis_a;
    const ComplexMatrix mb =
        schmidt.basis_b.adjoint() * ops.factors_b[l] * schmidt.basis_b;
    cplx term = 0.0;
    for (Eigen::Index i = 0; i < rank; ++i)
      for (Eigen::Index j = 0; j < rank; ++j)
        if (i != j)
          term += std::sqrt(lambda(i) * lambda(j)) * ma(j, i) * mb(j, i);
    cross += ops.strengths[l] * term;
  }

  const RealVector &eps = h.spectrum();
  return cross.real() + sorted_pairing(lambda, eps) - eps(0);
}

double emin_mixed_closed(const BipartiteState &state, const HamiltonianSpec &h,
                         const MeasurementBasis &basis) {
  check_state_matches(state, h);
  if (basis.dim() != state.dim_a())
    throw DimensionMismatch("measurement basis does not act on subsystem A");
  const HsExpansion hs = hs_expand(state);
  const OperatorSchmidt ops = operator_schmidt(h.total(), h.dim_a(), h.dim_b());

  const Eigen::Index nx = hs.t.rows();
  const Eigen::Index ny = hs.t.cols();
  cplx correlation = 0.0;
  for (std::size_t l = 0; l < ops.strengths.size(); ++l) {
    Eigen::VectorXcd ca(nx);
    for (Eigen::Index i = 0; i < nx; ++i) {
      const ComplexMatrix &xi = hs.basis_a[i + 1];
      ComplexMatrix dephased = ComplexMatrix::Zero(xi.rows(), xi.cols());
      for (const ComplexMatrix &p : basis.projectors())
        dephased += p * xi * p;
      ca(i) = trace_product(xi, ops.factors_a[l]) -
              trace_product(dephased, ops.factors_a[l]);
    }
    Eigen::VectorXcd cb(ny);
    for (Eigen::Index j = 0; j < ny; ++j)
      cb(j) = trace_product(hs.basis_b[j + 1], ops.factors_b[l]);
    correlation += ops.strengths[l] *
                   (ca.transpose() * hs.t.cast<cplx>() * cb).value();
  }

  const BipartiteState measured = measure_local(state, basis);
  const RealVector &eps = h.spectrum();
  return correlation.real() + sorted_pairing(clamped_spectrum(measured.rho()), eps) -
         sorted_pairing(clamped_spectrum(state.rho()), eps);
}

double emin_noninteracting(const BipartiteState &state, const HamiltonianSpec &h,
                           const MeasurementBasis &basis) {
  check_state_matches(state, h);
  if (!h.is_non_interacting())
    throw InteractingHamiltonian(
        "passive-energy form of EMIN requires a non-interacting Hamiltonian");
  const BipartiteState measured = measure_local(state, basis);
  return passive_energy(measured.rho(), h) - passive_energy(state.rho(), h);
}

MaxEntEmin emin_maxent(const HamiltonianSpec &h, int d) {
  if (!h.is_non_interacting())
    throw InteractingHamiltonian(
        "maximally entangled closed form requires a non-interacting Hamiltonian");
  if (d != std::min(h.dim_a(), h.dim_b()))
    throw DimensionMismatch("d must equal min(dim_a, dim_b) = " +
                            std::to_string(std::min(h.dim_a(), h.dim_b())));
  const RealVector &eps = h.spectrum();
  double lowest = 0.0;
  for (int k = 0; k < d; ++k)
    lowest += eps(k);
  MaxEntEmin out{};
  out.value = (lowest - d * eps(0)) / d;

  double spacing = 0.0;
  for (int i = 0; i + 1 < d; ++i)
    spacing += (d - 1 - i) * (eps(i + 1) - eps(i));
  out.level_spacing_form = spacing / d;

  const double scale = std::max(1.0, eps.cwiseAbs().maxCoeff());
  if (std::abs(out.value - out.level_spacing_form) > 1e-10 * scale)
    throw Error("level-spacing form disagrees with direct sum");
  return out;
}

double entropy(const ComplexMatrix &rho) {
  const RealVector ev = clamped_spectrum(rho);
  double s = 0.0;
  for (Eigen::Index k = 0; k < ev.size(); ++k)
    if (ev(k) >= kEntropyCutoff)
      s -= ev(k) * std::log(ev(k));
  return s;
}

double relative_entropy(const ComplexMatrix &a, const ComplexMatrix &b) {
  check_square(a, b.rows(), "relative_entropy");
  const HermitianEig eb = eig_hermitian(b);
  double cross = 0.0;
  for (Eigen::Index k = 0; k < eb.values.size(); ++k) {
    const auto v = eb.vectors.col(k);
    const double weight = (v.adjoint() * a * v).value().real();
    if (eb.values(k) < kEntropyCutoff) {
      if (weight > kSupportWeightTol)
        throw SupportViolation("first argument has weight " +
                               std::to_string(weight) +
                               " outside the support of the second");
      continue;
    }
    cross += weight * std::log(eb.values(k));
  }
  return -entropy(a) - cross;
}

ComplexMatrix gibbs_state(const ComplexMatrix &h, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw DomainError("inverse temperature must be positive and finite");
  const HermitianEig eig = eig_hermitian(h);
  const double ground = eig.values(0);
  RealVector w = (-beta * (eig.values.array() - ground)).exp();
  w /= w.sum();
  return eig.vectors * w.cast<cplx>().asDiagonal() * eig.vectors.adjoint();
}

EminBounds emin_bounds(const BipartiteState &state, const HamiltonianSpec &h,
                       const MeasurementBasis &basis, double beta) {
  check_state_matches(state, h);
  const ComplexMatrix thermal = gibbs_state(h.total(), beta);
  const BipartiteState measured = measure_local(state, basis);
  const ErgotropyReport before = passive(state.rho(), h);
  const ErgotropyReport after = passive(measured.rho(), h);

  const double d_rho = relative_entropy(state.rho(), thermal);
  const double d_meas = relative_entropy(measured.rho(), thermal);
  const double d_rho_p = relative_entropy(before.passive_state, thermal);
  const double d_meas_p = relative_entropy(after.passive_state, thermal);

  EminBounds out;
  out.emin = before.ergotropy - after.ergotropy;
  out.beta_emin = beta * out.emin;
  out.lower = d_meas_p - d_meas - d_rho_p;
  out.upper = d_rho + d_meas - d_rho_p;
  out.identity_residual =
      out.beta_emin - (d_rho - d_meas + d_meas_p - d_rho_p);
  out.lower_holds = out.lower <= out.beta_emin + kBoundTol;
  out.upper_below = out.upper <= out.beta_emin + kBoundTol;
  out.upper_above = out.beta_emin <= out.upper + kBoundTol;
  return out;
}

} // namespace emin
