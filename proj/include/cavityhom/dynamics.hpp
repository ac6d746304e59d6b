#pragma once

#include <vector>

#include "cavityhom/linalg.hpp"
#include "cavityhom/models.hpp"

namespace cavityhom {

// Uniform grid t_i = i*dt, i = 0..n_steps, dt = t_end/n_steps. substeps sets
// how many integrator micro-steps each grid step takes; states and
// correlations are only reported at the grid points. Lossless (gamma = 0)
// models keep a structurally zero state eigenvalue that exposes the raw
// integrator error, so they need substeps >= ~8 at the default spacing to
// hold the positivity tolerance.
struct TimeGrid {
  double t_end = 40.0;
  int n_steps = 800;
  int substeps = 1;

  void validate() const;
  double dt() const { return t_end / n_steps; }
  int n_samples() const { return n_steps + 1; }
  double time(int i) const { return t_end * i / n_steps; }
  // Same sample geometry; substeps only tunes the integrator.
  bool operator==(const TimeGrid& other) const {
    return t_end == other.t_end && n_steps == other.n_steps;
  }
};

// Trapezoid weight of sample i (the dt factor included).
double trapezoid_weight(const TimeGrid& grid, int i);
double trapezoid(const TimeGrid& grid, const std::vector<double>& values);

struct Trajectory {
  TimeGrid grid;
  std::vector<DensityMatrix> states;
};

// Emitted photon flux phi_out(t_i) = kappa <a^dag a>(t_i) and its integral.
struct PhotonWavefunction {
  TimeGrid grid;
  std::vector<double> values;
  double efficiency = 0.0;
};

// Two-time field correlation G(t_i, t_j) = kappa <a^dag(t_i) a(t_j)> on the
// grid. Hermitian; the diagonal is the photon flux. photon_number is the
// trapezoid integral of the diagonal. A matrix with photon_number below
// kEmptyPhotonNumber carries no photon and must not be normalized.
struct CoherenceMatrix {
  TimeGrid grid;
  Eigen::MatrixXcd entries;
  double photon_number = 0.0;

  bool is_empty() const;
};

inline constexpr double kEmptyPhotonNumber = 1e-9;

// Right-hand side of the master equation applied to X (X need not be
// Hermitian; two-time correlations propagate through the same generator):
//   -i[H(t), X] + sum_n ( C_n X C_n^dag - 1/2 {C_n^dag C_n, X} ).
Operator lindblad_rhs(const ModelSpec& m, const Operator& x, double t);

// Fixed-step RK4 propagation of the initial state over the grid, with the
// state re-symmetrized each step. Throws if the trace drifts by more than
// 1e-6 (the grid is too coarse).
Trajectory evolve(const ModelSpec& m, const TimeGrid& grid);

PhotonWavefunction photon_wavefunction(const Trajectory& traj, const ModelSpec& m);

// Two-time coherence via the quantum regression theorem: each row i starts
// from rho(t_i) a^dag, propagates forward with the same generator, and reads
// out kappa tr(a X). Rows are computed in parallel (n_threads = 0 resolves
// via CAVITY_HOM_THREADS, then hardware).
CoherenceMatrix first_order_coherence(const ModelSpec& m, const TimeGrid& grid,
                                      unsigned n_threads = 0);

// Eigenvalues of the coherence kernel with trapezoid weights folded in
// symmetrically, ascending. Used for positivity and purity checks.
Eigen::VectorXd coherence_kernel_eigenvalues(const CoherenceMatrix& g);

}  // namespace cavityhom
