#include "cavityhom/linalg.hpp"

#include <cmath>
#include <string>

namespace cavityhom {

Operator transition_op(int i, int j, int dim) {
  if (dim < 1) throw std::invalid_argument("transition_op: dim must be >= 1");
  if (i < 0 || j < 0 || i >= dim || j >= dim) {
    throw std::invalid_argument("transition_op: index out of range for dim " +
                                std::to_string(dim));
  }
  Operator op = Operator::Zero(dim, dim);
  op(i, j) = Complex(1.0, 0.0);
  return op;
}

Operator dagger(const Operator& a) { return a.adjoint(); }

Operator commutator(const Operator& a, const Operator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("commutator: dimension mismatch");
  }
  return a * b - b * a;
}

bool all_finite(const Operator& a) {
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      if (!std::isfinite(a(r, c).real()) || !std::isfinite(a(r, c).imag())) return false;
    }
  }
  return true;
}

double hermiticity_defect(const Operator& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const Operator& a) {
  Eigen::SelfAdjointEigenSolver<Operator> solver(a, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

DensityMatrix::DensityMatrix(Operator rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() < 1) {
    throw std::invalid_argument("DensityMatrix: matrix must be square, dim >= 1");
  }
  if (!all_finite(rho_)) throw std::invalid_argument("DensityMatrix: non-finite entries");
  if (hermiticity_defect(rho_) > kHermiticityTol) {
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  }
  if (std::abs(rho_.trace().real() - 1.0) > kTraceTol ||
      std::abs(rho_.trace().imag()) > kTraceTol) {
    throw std::invalid_argument("DensityMatrix: trace must be 1");
  }
  if (min_eigenvalue(rho_) < kPositivityTol) {
    throw std::invalid_argument("DensityMatrix: not positive semidefinite");
  }
}

StateVector::StateVector(Eigen::VectorXcd amplitudes) : psi_(std::move(amplitudes)) {
  if (psi_.size() < 1) throw std::invalid_argument("StateVector: dim must be >= 1");
  const double norm = psi_.norm();
  if (!std::isfinite(norm) || norm > 1.0 + 1e-9) {
    throw std::invalid_argument("StateVector: norm must be <= 1");
  }
}

}  // namespace cavityhom
