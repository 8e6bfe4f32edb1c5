#include "emin/quantum_state.hpp"

#include "emin/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace emin {

namespace {

void check_dims(int dim_a, int dim_b) {
  if (dim_a < 1 || dim_b < 1)
    throw DimensionMismatch("subsystem dimensions must be positive");
}

// Indices of `values` sorted by descending value; ties keep input order.
std::vector<int> descending_order(const RealVector &values) {
  std::vector<int> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int l, int r) { return values(l) > values(r); });
  return idx;
}

} // namespace

RealVector clamped_spectrum(const ComplexMatrix &rho) {
  RealVector ev = eigvals_hermitian(rho);
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (ev(k) < -kPsdTol)
      throw InvalidState("density matrix has eigenvalue " +
                         std::to_string(ev(k)));
    if (ev(k) < 0.0)
      ev(k) = 0.0;
  }
  return ev.reverse().eval();
}

BipartiteState BipartiteState::from_density(const ComplexMatrix &rho, int dim_a,
                                            int dim_b) {
  check_dims(dim_a, dim_b);
  if (rho.rows() != dim_a * dim_b || rho.cols() != dim_a * dim_b)
    throw DimensionMismatch("density matrix is " + std::to_string(rho.rows()) +
                            "x" + std::to_string(rho.cols()) + ", expected " +
                            std::to_string(dim_a * dim_b) + " square");
  ComplexMatrix h = hermitize(rho);
  const double tr = h.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol)
    throw InvalidState("trace is " + std::to_string(tr) + ", expected 1");
  clamped_spectrum(h); // throws on negative eigenvalues
  return BipartiteState(std::move(h), dim_a, dim_b);
}

BipartiteState BipartiteState::from_pure(const ComplexVector &psi, int dim_a,
                                         int dim_b) {
  check_dims(dim_a, dim_b);
  if (psi.size() != dim_a * dim_b)
    throw DimensionMismatch("state vector has length " +
                            std::to_string(psi.size()));
  if (std::abs(psi.norm() - 1.0) > kNormTol)
    throw NotNormalized("state vector norm is " + std::to_string(psi.norm()));
  ComplexMatrix rho = psi * psi.adjoint();
  return BipartiteState((rho + rho.adjoint()) / 2.0, dim_a, dim_b);
}

ComplexMatrix BipartiteState::marginal(Subsystem keep) const {
  return partial_trace(rho_, dim_a_, dim_b_, keep);
}

PureSchmidt schmidt_pure(const ComplexVector &psi, int dim_a, int dim_b) {
  check_dims(dim_a, dim_b);
  if (psi.size() != dim_a * dim_b)
    throw DimensionMismatch("state vector has length " +
                            std::to_string(psi.size()));
  if (std::abs(psi.norm() - 1.0) > kNormTol)
    throw NotNormalized("state vector norm is " + std::to_string(psi.norm()));

  // psi_{(i,j)} = M_ij, M = U S V^dagger  =>  psi = sum_k s_k u_k (x) conj(v_k)
  ComplexMatrix m(dim_a, dim_b);
  for (int i = 0; i < dim_a; ++i)
    for (int j = 0; j < dim_b; ++j)
      m(i, j) = psi(i * dim_b + j);
  const Svd dec = svd(m, /*full=*/true);

  PureSchmidt out;
  out.coefficients = dec.singular.array().square();
  out.basis_a = dec.u;
  out.basis_b = dec.v.conjugate();
  return out;
}

ComplexMatrix OperatorSchmidt::reconstruct() const {
  if (strengths.empty())
    return {};
  ComplexMatrix h = ComplexMatrix::Zero(factors_a[0].rows() * factors_b[0].rows(),
                                        factors_a[0].cols() * factors_b[0].cols());
  for (std::size_t l = 0; l < strengths.size(); ++l)
    h += strengths[l] * kron(factors_a[l], factors_b[l]);
  return h;
}

OperatorSchmidt operator_schmidt(const ComplexMatrix &h, int dim_a, int dim_b) {
  check_dims(dim_a, dim_b);
  if (h.rows() != dim_a * dim_b || h.cols() != dim_a * dim_b)
    throw DimensionMismatch("operator_schmidt: operator is " +
                            std::to_string(h.rows()) + "x" +
                            std::to_string(h.cols()));
  const ComplexMatrix herm = hermitize(h);

  // Realignment R_{(ia,ja),(ib,jb)} = H_{(ia,ib),(ja,jb)}.
  const int na = dim_a * dim_a;
  const int nb = dim_b * dim_b;
  ComplexMatrix r(na, nb);
  for (int ia = 0; ia < dim_a; ++ia)
    for (int ja = 0; ja < dim_a; ++ja)
      for (int ib = 0; ib < dim_b; ++ib)
        for (int jb = 0; jb < dim_b; ++jb)
          r(ia * dim_a + ja, ib * dim_b + jb) =
              herm(ia * dim_b + ib, ja * dim_b + jb);

  const Svd dec = svd(r);
  OperatorSchmidt out;
  const double cutoff =
      1e-13 * std::max(1.0, dec.singular.size() ? dec.singular(0) : 0.0);
  for (Eigen::Index l = 0; l < dec.singular.size(); ++l) {
    if (dec.singular(l) <= cutoff)
      break;
    ComplexMatrix a(dim_a, dim_a);
    ComplexMatrix b(dim_b, dim_b);
    for (int i = 0; i < dim_a; ++i)
      for (int j = 0; j < dim_a; ++j)
        a(i, j) = dec.u(i * dim_a + j, l);
    for (int i = 0; i < dim_b; ++i)
      for (int j = 0; j < dim_b; ++j)
        b(i, j) = std::conj(dec.v(i * dim_b + j, l));
    out.strengths.push_back(dec.singular(l));
    out.factors_a.push_back(std::move(a));
    out.factors_b.push_back(std::move(b));
  }
  return out;
}

std::vector<ComplexMatrix> gell_mann_basis(int n) {
  if (n < 1)
    throw DimensionMismatch("basis dimension must be positive");
  std::vector<ComplexMatrix> basis;
  basis.reserve(static_cast<std::size_t>(n) * n);
  basis.push_back(identity(n) / std::sqrt(static_cast<double>(n)));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      ComplexMatrix sym = ComplexMatrix::Zero(n, n);
      sym(j, k) = inv_sqrt2;
      sym(k, j) = inv_sqrt2;
      basis.push_back(std::move(sym));
      ComplexMatrix anti = ComplexMatrix::Zero(n, n);
      anti(j, k) = cplx(0.0, -inv_sqrt2);
      anti(k, j) = cplx(0.0, inv_sqrt2);
      basis.push_back(std::move(anti));
    }
  }
  for (int l = 1; l < n; ++l) {
    ComplexMatrix diag = ComplexMatrix::Zero(n, n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int i = 0; i < l; ++i)
      diag(i, i) = norm;
    diag(l, l) = -l * norm;
    basis.push_back(std::move(diag));
  }
  return basis;
}

ComplexMatrix HsExpansion::reconstruct() const {
  const int n = static_cast<int>(basis_a[0].rows());
  const int m = static_cast<int>(basis_b[0].rows());
  ComplexMatrix rho = kron(basis_a[0], basis_b[0]) / std::sqrt(double(n * m));
  for (Eigen::Index i = 0; i < x.size(); ++i)
    rho += x(i) * kron(basis_a[i + 1], basis_b[0]);
  for (Eigen::Index j = 0; j < y.size(); ++j)
    rho += y(j) * kron(basis_a[0], basis_b[j + 1]);
  for (Eigen::Index i = 0; i < t.rows(); ++i)
    for (Eigen::Index j = 0; j < t.cols(); ++j)
      rho += t(i, j) * kron(basis_a[i + 1], basis_b[j + 1]);
  return rho;
}

HsExpansion hs_expand(const BipartiteState &state) {
  const int n = state.dim_a();
  const int m = state.dim_b();
  HsExpansion out;
  out.basis_a = gell_mann_basis(n);
  out.basis_b = gell_mann_basis(m);
  out.x = RealVector::Zero(n * n - 1);
  out.y = RealVector::Zero(m * m - 1);
  out.t = RealMatrix::Zero(n * n - 1, m * m - 1);

  const ComplexMatrix &rho = state.rho();
  for (int i = 0; i < n * n; ++i) {
    for (int j = 0; j < m * m; ++j) {
      if (i == 0 && j == 0)
        continue;
      // Basis elements are Hermitian, so Tr(rho (X_i (x) Y_j)) is real.
      const cplx c = hs_inner(rho, kron(out.basis_a[i], out.basis_b[j]));
      out.max_imag_residue = std::max(out.max_imag_residue, std::abs(c.imag()));
      if (j == 0)
        out.x(i - 1) = c.real();
      else if (i == 0)
        out.y(j - 1) = c.real();
      else
        out.t(i - 1, j - 1) = c.real();
    }
  }
  return out;
}

MeasurementBasis MeasurementBasis::from_vectors(const ComplexMatrix &vectors,
                                                bool degenerate_marginal) {
  if (vectors.rows() != vectors.cols() || vectors.rows() < 1)
    throw DimensionMismatch("measurement basis must be a square matrix of "
                            "column vectors");
  const Eigen::Index n = vectors.rows();
  const double defect =
      (vectors.adjoint() * vectors - ComplexMatrix::Identity(n, n))
          .cwiseAbs()
          .maxCoeff();
  if (defect > 1e-10)
    throw DomainError("measurement vectors are not orthonormal (defect " +
                      std::to_string(defect) + ")");
  MeasurementBasis out;
  out.vectors_ = vectors;
  out.degenerate_ = degenerate_marginal;
  for (Eigen::Index k = 0; k < n; ++k)
    out.projectors_.push_back(vectors.col(k) * vectors.col(k).adjoint());
  return out;
}

MeasurementBasis MeasurementBasis::computational(int n) {
  return from_vectors(identity(n));
}

MeasurementBasis marginal_basis(const BipartiteState &state,
                                double degeneracy_tol) {
  const HermitianEig eig = eig_hermitian(state.marginal(Subsystem::A));
  const std::vector<int> order = descending_order(eig.values);
  const int n = state.dim_a();
  ComplexMatrix vectors(n, n);
  bool degenerate = false;
  for (int k = 0; k < n; ++k) {
    vectors.col(k) = eig.vectors.col(order[k]);
    if (k > 0 &&
        eig.values(order[k - 1]) - eig.values(order[k]) < degeneracy_tol)
      degenerate = true;
  }
  return MeasurementBasis::from_vectors(vectors, degenerate);
}

MeasurementBasis schmidt_basis(const PureSchmidt &schmidt) {
  return MeasurementBasis::from_vectors(schmidt.basis_a);
}

BipartiteState measure_local(const BipartiteState &state,
                             const MeasurementBasis &basis) {
  if (basis.dim() != state.dim_a())
    throw DimensionMismatch("measurement acts on dimension " +
                            std::to_string(basis.dim()) + ", subsystem A has " +
                            std::to_string(state.dim_a()));
  const int m = state.dim_b();
  const ComplexMatrix id_b = identity(m);
  const ComplexMatrix &rho = state.rho();
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (const ComplexMatrix &p : basis.projectors()) {
    const ComplexMatrix q = kron(p, id_b);
    out.noalias() += q * rho * q;
  }
  return BipartiteState((out + out.adjoint()) / 2.0, state.dim_a(), m);
}

double geometric_min(const BipartiteState &state,
                     const MeasurementBasis &basis) {
  return hs_norm_sq(state.rho() - measure_local(state, basis).rho());
}

} // namespace emin
