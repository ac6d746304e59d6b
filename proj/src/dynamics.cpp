#include "cavityhom/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "cavityhom/parallel.hpp"

namespace cavityhom {

void TimeGrid::validate() const {
  if (!std::isfinite(t_end) || t_end <= 0.0) {
    throw std::invalid_argument("TimeGrid: t_end must be > 0");
  }
  if (n_steps < 2) throw std::invalid_argument("TimeGrid: n_steps must be >= 2");
  if (substeps < 1) throw std::invalid_argument("TimeGrid: substeps must be >= 1");
}

double trapezoid_weight(const TimeGrid& grid, int i) {
  const double w = (i == 0 || i == grid.n_steps) ? 0.5 : 1.0;
  return w * grid.dt();
}

double trapezoid(const TimeGrid& grid, const std::vector<double>& values) {
  if (static_cast<int>(values.size()) != grid.n_samples()) {
    throw std::invalid_argument("trapezoid: sample count does not match grid");
  }
  double sum = 0.0;
  for (int i = 0; i <= grid.n_steps; ++i) sum += trapezoid_weight(grid, i) * values[i];
  return sum;
}

bool CoherenceMatrix::is_empty() const { return photon_number < kEmptyPhotonNumber; }

Operator lindblad_rhs(const ModelSpec& m, const Operator& x, double t) {
  if (x.rows() != m.dim || x.cols() != m.dim) {
    throw std::invalid_argument("lindblad_rhs: operator dimension mismatch");
  }
  const Operator h = m.hamiltonian(t);
  Operator out = Complex(0.0, -1.0) * (h * x - x * h);
  for (const Operator& c : m.collapse_ops) {
    const Operator cdc = c.adjoint() * c;
    out += c * x * c.adjoint() - 0.5 * (cdc * x + x * cdc);
  }
  return out;
}

namespace {

// A collapse operator with a single nonzero entry: C = amp |row><col|.
struct JumpChannel {
  int row = 0;
  int col = 0;
  double rate = 0.0;  // |amp|^2
};

bool extract_jump(const Operator& c, JumpChannel& out) {
  int nnz = 0;
  for (int j = 0; j < c.cols(); ++j) {
    for (int i = 0; i < c.rows(); ++i) {
      if (c(i, j) != Complex(0.0, 0.0)) {
        ++nnz;
        out = JumpChannel{i, j, std::norm(c(i, j))};
      }
    }
  }
  return nnz == 1;
}

// RK4 stepper with stage Hamiltonians sampled once up front. Each grid step
// is taken as grid.substeps micro-steps. The collapse terms reduce to O(1)
// updates for single-entry operators (all built-in models); a dense fallback
// covers anything else.
template <int D>
struct Propagator {
  using Mat = Eigen::Matrix<Complex, D, D>;

  int dim;
  int substeps;
  double dt;                // micro-step size
  std::vector<Mat> h_half;  // H at micro half-steps, k = 0..2*n_steps*substeps
  std::vector<JumpChannel> jumps;
  std::vector<Mat> collapse_dense;  // used only when some op is not single-entry
  bool dense_collapse = false;
  Eigen::VectorXd damping;  // diagonal of (1/2) sum C^dag C (single-entry case)
  Mat k_half;               // dense (1/2) sum C^dag C (fallback)

  Propagator(const ModelSpec& m, const TimeGrid& grid)
      : dim(m.dim), substeps(grid.substeps), dt(grid.dt() / grid.substeps) {
    grid.validate();
    if (m.dim < 1) throw std::invalid_argument("model dimension must be >= 1");

    const long micro = 2L * grid.n_steps * grid.substeps;
    h_half.reserve(micro + 1);
    for (long k = 0; k <= micro; ++k) {
      const double t = grid.t_end * k / static_cast<double>(micro);
      Operator h = m.hamiltonian(t);
      if (h.rows() != m.dim || h.cols() != m.dim) {
        throw std::invalid_argument("hamiltonian(t) has wrong dimension");
      }
      if (!all_finite(h)) throw std::invalid_argument("hamiltonian(t) has non-finite entries");
      if (hermiticity_defect(h) > kHermiticityTol) {
        throw std::invalid_argument("hamiltonian(t) is not Hermitian");
      }
      h_half.push_back(Mat(h));
    }

    for (const Operator& c : m.collapse_ops) {
      if (c.rows() != m.dim || c.cols() != m.dim) {
        throw std::invalid_argument("collapse operator has wrong dimension");
      }
      JumpChannel jc;
      if (!dense_collapse && extract_jump(c, jc)) {
        jumps.push_back(jc);
      } else {
        dense_collapse = true;
      }
    }
    if (dense_collapse) {
      jumps.clear();
      k_half = Mat::Zero(dim, dim);
      for (const Operator& c : m.collapse_ops) {
        collapse_dense.push_back(Mat(c));
        k_half += Mat(0.5 * (c.adjoint() * c));
      }
    } else {
      damping = Eigen::VectorXd::Zero(dim);
      for (const JumpChannel& jc : jumps) damping(jc.col) += 0.5 * jc.rate;
    }
  }

  Mat rhs(const Mat& x, int half_index) const {
    const Mat& h = h_half[half_index];
    Mat out = Complex(0.0, -1.0) * (h * x - x * h);
    if (!dense_collapse) {
      for (int c = 0; c < dim; ++c) {
        for (int r = 0; r < dim; ++r) {
          out(r, c) -= (damping(r) + damping(c)) * x(r, c);
        }
      }
      for (const JumpChannel& jc : jumps) {
        out(jc.row, jc.row) += jc.rate * x(jc.col, jc.col);
      }
    } else {
      out -= k_half * x + x * k_half;
      for (const Mat& c : collapse_dense) out += c * x * c.adjoint();
    }
    return out;
  }

  // One RK4 micro-step.
  Mat micro_step(const Mat& x, long micro_index) const {
    const long k0 = 2 * micro_index;
    const Mat a = rhs(x, k0);
    const Mat b = rhs(Mat(x + (0.5 * dt) * a), k0 + 1);
    const Mat c = rhs(Mat(x + (0.5 * dt) * b), k0 + 1);
    const Mat d = rhs(Mat(x + dt * c), k0 + 2);
    return x + (dt / 6.0) * (a + 2.0 * b + 2.0 * c + d);
  }

  // From grid point i to i+1; resymmetrize keeps Hermitian states Hermitian
  // through the micro-steps (never used for regression matrices).
  Mat step(Mat x, int i, bool resymmetrize) const {
    for (int s = 0; s < substeps; ++s) {
      x = micro_step(x, static_cast<long>(i) * substeps + s);
      if (resymmetrize) x = 0.5 * (x + x.adjoint()).eval();
    }
    return x;
  }
};

template <int D>
Trajectory evolve_impl(const ModelSpec& m, const TimeGrid& grid) {
  using Mat = typename Propagator<D>::Mat;
  const Propagator<D> prop(m, grid);

  Trajectory traj{grid, {}};
  traj.states.reserve(grid.n_samples());
  traj.states.push_back(m.initial_state);

  Mat rho = Mat(m.initial_state.matrix());
  for (int i = 0; i < grid.n_steps; ++i) {
    rho = prop.step(rho, i, true);
    const double trace_defect = std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag());
    if (trace_defect > kTraceTol) {
      throw std::runtime_error(
          "evolve: trace drift " + std::to_string(trace_defect) + " at t = " +
          std::to_string(grid.time(i + 1)) + "; use a finer time grid (n_steps or substeps)");
    }
    try {
      traj.states.emplace_back(Operator(rho));
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("evolve: state invariants violated at t = " +
                               std::to_string(grid.time(i + 1)) + " (" + e.what() +
                               "); use a finer time grid (n_steps or substeps)");
    }
  }
  return traj;
}

// Readout index pair for tr(a X) when a = amp |r><c|: amp * X(c, r).
struct Readout {
  bool single = false;
  int row = 0;
  int col = 0;
  Complex amp;
};

Readout make_readout(const Operator& a) {
  Readout r;
  int nnz = 0;
  for (int j = 0; j < a.cols(); ++j) {
    for (int i = 0; i < a.rows(); ++i) {
      if (a(i, j) != Complex(0.0, 0.0)) {
        ++nnz;
        r = Readout{true, i, j, a(i, j)};
      }
    }
  }
  r.single = (nnz == 1);
  return r;
}

template <int D>
CoherenceMatrix coherence_impl(const ModelSpec& m, const TimeGrid& grid, unsigned n_threads) {
  using Mat = typename Propagator<D>::Mat;
  const Propagator<D> prop(m, grid);
  const Trajectory traj = evolve_impl<D>(m, grid);
  const int n = grid.n_samples();

  const Mat a_op = Mat(m.cavity_lowering);
  const Mat a_dag = Mat(m.cavity_lowering.adjoint());
  const Readout readout = make_readout(m.cavity_lowering);
  const double kappa = m.kappa;

  auto read = [&](const Mat& x) -> Complex {
    if (readout.single) return kappa * readout.amp * x(readout.col, readout.row);
    return kappa * (a_op * x).trace();
  };

  CoherenceMatrix g{grid, Eigen::MatrixXcd::Zero(n, n), 0.0};

  parallel_for(
      static_cast<std::size_t>(n),
      [&](std::size_t row) {
        const int i = static_cast<int>(row);
        Mat x = Mat(traj.states[i].matrix()) * a_dag;
        g.entries(i, i) = read(x);
        for (int j = i; j < grid.n_steps; ++j) {
          x = prop.step(x, j, false);
          g.entries(i, j + 1) = read(x);
        }
      },
      n_threads);

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) g.entries(j, i) = std::conj(g.entries(i, j));
  }

  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = g.entries(i, i).real();
  g.photon_number = trapezoid(grid, diag);
  return g;
}

}  // namespace

Trajectory evolve(const ModelSpec& m, const TimeGrid& grid) {
  switch (m.dim) {
    case 3: return evolve_impl<3>(m, grid);
    case 4: return evolve_impl<4>(m, grid);
    default: return evolve_impl<Eigen::Dynamic>(m, grid);
  }
}

PhotonWavefunction photon_wavefunction(const Trajectory& traj, const ModelSpec& m) {
  if (!traj.states.empty() && traj.states.front().dim() != m.dim) {
    throw std::invalid_argument("photon_wavefunction: trajectory/model dimension mismatch");
  }
  const Operator number_op = m.cavity_lowering.adjoint() * m.cavity_lowering;
  PhotonWavefunction phi{traj.grid, {}, 0.0};
  phi.values.reserve(traj.states.size());
  for (const DensityMatrix& rho : traj.states) {
    double v = m.kappa * (rho.matrix() * number_op).trace().real();
    if (v < m.kappa * kPositivityTol) {
      throw std::runtime_error("photon_wavefunction: negative flux " + std::to_string(v));
    }
    if (v < 0.0) v = 0.0;  // state-positivity dust
    phi.values.push_back(v);
  }
  phi.efficiency = trapezoid(traj.grid, phi.values);
  if (phi.efficiency < 0.0 || phi.efficiency > 1.0 + 1e-6) {
    throw std::runtime_error("photon_wavefunction: efficiency out of [0, 1]: " +
                             std::to_string(phi.efficiency));
  }
  return phi;
}

CoherenceMatrix first_order_coherence(const ModelSpec& m, const TimeGrid& grid,
                                      unsigned n_threads) {
  switch (m.dim) {
    case 3: return coherence_impl<3>(m, grid, n_threads);
    case 4: return coherence_impl<4>(m, grid, n_threads);
    default: return coherence_impl<Eigen::Dynamic>(m, grid, n_threads);
  }
}

Eigen::VectorXd coherence_kernel_eigenvalues(const CoherenceMatrix& g) {
  const int n = g.grid.n_samples();
  Eigen::MatrixXcd kernel(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      kernel(i, j) = std::sqrt(trapezoid_weight(g.grid, i) * trapezoid_weight(g.grid, j)) *
                     g.entries(i, j);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(kernel, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace cavityhom
