#pragma once

#include "emin/ergotropy.hpp"
#include "emin/linalg.hpp"
#include "emin/quantum_state.hpp"

#include <cmath>

namespace testing_helpers {

using emin::ComplexMatrix;
using emin::ComplexVector;

inline ComplexVector ket(int dim, int k) {
  ComplexVector v = ComplexVector::Zero(dim);
  v(k) = 1.0;
  return v;
}

// alpha|00> + beta|11>
inline ComplexVector two_qubit(double alpha, double beta) {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = alpha;
  v(3) = beta;
  return v;
}

inline ComplexVector bell() { return two_qubit(M_SQRT1_2, M_SQRT1_2); }

inline ComplexMatrix diag(std::initializer_list<double> values) {
  ComplexMatrix m = ComplexMatrix::Zero(values.size(), values.size());
  int k = 0;
  for (double v : values) {
    m(k, k) = v;
    ++k;
  }
  return m;
}

// sigma_z/2 (x) I + I (x) sigma_z/2, global spectrum (-1, 0, 0, 1).
inline emin::HamiltonianSpec zz_local() {
  return emin::HamiltonianSpec::non_interacting(emin::pauli_z() / 2.0,
                                                emin::pauli_z() / 2.0);
}

inline double max_abs(const ComplexMatrix &m) { return m.cwiseAbs().maxCoeff(); }

} // namespace testing_helpers
