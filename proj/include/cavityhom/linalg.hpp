#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace cavityhom {

using Complex = std::complex<double>;

// Dense complex square matrix over a small truncated basis. Hamiltonians,
// collapse operators and observables are all of this type; hbar = 1 and all
// rates/frequencies are dimensionless throughout.
using Operator = Eigen::MatrixXcd;

// Tolerances used when accepting a density matrix.
inline constexpr double kHermiticityTol = 1e-10;
inline constexpr double kTraceTol = 1e-6;
inline constexpr double kPositivityTol = -1e-8;

// |i><j| on a dim-dimensional basis: exactly one nonzero entry, value 1.
Operator transition_op(int i, int j, int dim);

// Conjugate transpose.
Operator dagger(const Operator& a);

// AB - BA. Throws on dimension mismatch.
Operator commutator(const Operator& a, const Operator& b);

bool all_finite(const Operator& a);

// max |A - A^dagger| entry.
double hermiticity_defect(const Operator& a);

// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const Operator& a);

// System state rho: Hermitian, unit trace, positive semidefinite within the
// tolerances above. Construction validates; instances are immutable.
class DensityMatrix {
 public:
  explicit DensityMatrix(Operator rho);

  const Operator& matrix() const { return rho_; }
  int dim() const { return static_cast<int>(rho_.rows()); }
  double population(int i) const { return rho_(i, i).real(); }

 private:
  Operator rho_;
};

// Pure-state amplitudes; norm may fall below 1 under non-unitary evolution.
class StateVector {
 public:
  explicit StateVector(Eigen::VectorXcd amplitudes);

  const Eigen::VectorXcd& amplitudes() const { return psi_; }
  int dim() const { return static_cast<int>(psi_.size()); }

 private:
  Eigen::VectorXcd psi_;
};

}  // namespace cavityhom
