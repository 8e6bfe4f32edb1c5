#pragma once

// Dense complex linear algebra used throughout the library. Matrices are
// Eigen::MatrixXcd; everything here is a pure function of its arguments.

#include <Eigen/Dense>

#include <complex>
#include <functional>

namespace emin {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Max-abs tolerance on M - M^dagger accepted as Hermitian.
inline constexpr double kHermitianTol = 1e-10;

/// Eigen-decomposition of a Hermitian matrix. Eigenvalues ascend and the
/// columns of `vectors` are the matching orthonormal eigenvectors.
struct HermitianEig {
  RealVector values;
  ComplexMatrix vectors;
};

struct Svd {
  ComplexMatrix u;
  RealVector singular; // descending
  ComplexMatrix v;
};

enum class Subsystem { A, B };

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

bool all_finite(const ComplexMatrix &m);
double hermiticity_defect(const ComplexMatrix &m);
bool is_hermitian(const ComplexMatrix &m, double tol = kHermitianTol);

/// Returns (m + m^dagger)/2 after checking `m` is Hermitian within tolerance.
/// Throws NotHermitian otherwise.
ComplexMatrix hermitize(const ComplexMatrix &m, double tol = kHermitianTol);

HermitianEig eig_hermitian(const ComplexMatrix &m);

/// Eigenvalues only, ascending.
RealVector eigvals_hermitian(const ComplexMatrix &m);

/// Thin-or-full SVD; `full` requests square U and V.
Svd svd(const ComplexMatrix &m, bool full = false);

ComplexMatrix partial_trace(const ComplexMatrix &rho, int dim_a, int dim_b,
                            Subsystem keep);

/// V diag(f(lambda)) V^dagger. `f` must return finite values on the
/// spectrum, otherwise DomainError.
ComplexMatrix func_hermitian(const ComplexMatrix &m,
                             const std::function<double(double)> &f);

/// Tr(a b^dagger).
cplx hs_inner(const ComplexMatrix &a, const ComplexMatrix &b);
double hs_norm_sq(const ComplexMatrix &a);

ComplexMatrix identity(int n);

/// Pauli matrices and single-qubit ladder operators in the basis
/// {|0>, |1>} with sigma_z = diag(1, -1).
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix sigma_plus();  // |0><1|
ComplexMatrix sigma_minus(); // |1><0|

} // namespace emin
