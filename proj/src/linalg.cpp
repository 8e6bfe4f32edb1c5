#include "emin/linalg.hpp"

#include "emin/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace emin {

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

bool all_finite(const ComplexMatrix &m) {
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    const cplx z = m.data()[k];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      return false;
  }
  return true;
}

double hermiticity_defect(const ComplexMatrix &m) {
  if (m.rows() != m.cols())
    return std::numeric_limits<double>::infinity();
  if (m.size() == 0)
    return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix &m, double tol) {
  return all_finite(m) && hermiticity_defect(m) <= tol;
}

ComplexMatrix hermitize(const ComplexMatrix &m, double tol) {
  if (m.rows() != m.cols())
    throw NotHermitian("matrix is not square (" + std::to_string(m.rows()) +
                       "x" + std::to_string(m.cols()) + ")");
  if (!all_finite(m))
    throw NotHermitian("matrix has non-finite entries");
  const double defect = hermiticity_defect(m);
  if (defect > tol)
    throw NotHermitian("max |M - M^dagger| = " + std::to_string(defect) +
                       " exceeds tolerance");
  return (m + m.adjoint()) / 2.0;
}

HermitianEig eig_hermitian(const ComplexMatrix &m) {
  const ComplexMatrix h = hermitize(m);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw NoConvergence("Hermitian eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector eigvals_hermitian(const ComplexMatrix &m) {
  const ComplexMatrix h = hermitize(m);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NoConvergence("Hermitian eigensolver did not converge");
  return solver.eigenvalues();
}

Svd svd(const ComplexMatrix &m, bool full) {
  const unsigned opts =
      full ? (Eigen::ComputeFullU | Eigen::ComputeFullV)
           : (Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::JacobiSVD<ComplexMatrix> solver(m, opts);
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

ComplexMatrix partial_trace(const ComplexMatrix &rho, int dim_a, int dim_b,
                            Subsystem keep) {
  if (dim_a < 1 || dim_b < 1 || rho.rows() != dim_a * dim_b ||
      rho.cols() != dim_a * dim_b)
    throw DimensionMismatch("partial_trace: matrix is " +
                            std::to_string(rho.rows()) + "x" +
                            std::to_string(rho.cols()) + ", expected " +
                            std::to_string(dim_a * dim_b) + " square");
  if (keep == Subsystem::A) {
    ComplexMatrix out = ComplexMatrix::Zero(dim_a, dim_a);
    for (int i = 0; i < dim_a; ++i)
      for (int j = 0; j < dim_a; ++j)
        for (int k = 0; k < dim_b; ++k)
          out(i, j) += rho(i * dim_b + k, j * dim_b + k);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_b, dim_b);
  for (int i = 0; i < dim_b; ++i)
    for (int j = 0; j < dim_b; ++j)
      for (int k = 0; k < dim_a; ++k)
        out(i, j) += rho(k * dim_b + i, k * dim_b + j);
  return out;
}

ComplexMatrix func_hermitian(const ComplexMatrix &m,
                             const std::function<double(double)> &f) {
  const HermitianEig eig = eig_hermitian(m);
  RealVector mapped(eig.values.size());
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    mapped(k) = f(eig.values(k));
    if (!std::isfinite(mapped(k)))
      throw DomainError("function is not finite at eigenvalue " +
                        std::to_string(eig.values(k)));
  }
  return eig.vectors * mapped.cast<cplx>().asDiagonal() * eig.vectors.adjoint();
}

cplx hs_inner(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("hs_inner: operand shapes differ");
  // Tr(a b^dagger) = sum_ij a_ij conj(b_ij)
  return (a.array() * b.conjugate().array()).sum();
}

double hs_norm_sq(const ComplexMatrix &a) { return a.squaredNorm(); }

ComplexMatrix identity(int n) { return ComplexMatrix::Identity(n, n); }

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

ComplexMatrix sigma_plus() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

ComplexMatrix sigma_minus() { return sigma_plus().adjoint(); }

} // namespace emin
