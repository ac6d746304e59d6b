#include "cavityhom/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cavityhom {

void OptimizerConfig::validate() const {
  if (!(eta > 0.0) || eta > 1.0) throw std::invalid_argument("eta must lie in (0, 1]");
  if (!(gain > 0.0) || !std::isfinite(gain)) throw std::invalid_argument("gain must be > 0");
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (!(error_tolerance > 0.0)) throw std::invalid_argument("error_tolerance must be > 0");
  if (n_segments < 2) throw std::invalid_argument("n_segments must be >= 2");
}

std::string to_string(OptimizerStatus s) {
  switch (s) {
    case OptimizerStatus::converged: return "converged";
    case OptimizerStatus::max_iterations: return "max_iterations";
    case OptimizerStatus::visibility_decreased: return "visibility_decreased";
  }
  return "unknown";
}

TargetDataset discretize_wavefunction(const PhotonWavefunction& phi, int n_segments) {
  const TimeGrid& grid = phi.grid;
  if (n_segments < 1) throw std::invalid_argument("n_segments must be >= 1");
  if (n_segments > grid.n_steps) {
    throw std::invalid_argument("n_segments exceeds the number of grid steps");
  }
  if (grid.n_steps % n_segments != 0) {
    throw std::invalid_argument("n_segments must divide the grid evenly");
  }
  const int m = grid.n_steps / n_segments;  // grid steps per segment
  const double dt_seg = grid.t_end / n_segments;

  TargetDataset out{{}, n_segments, dt_seg};
  out.values.reserve(n_segments);
  for (int s = 0; s < n_segments; ++s) {
    double integral = 0.0;
    for (int k = 0; k < m; ++k) {
      const int i = s * m + k;
      integral += 0.5 * grid.dt() * (phi.values[i] + phi.values[i + 1]);
    }
    out.values.push_back(integral / dt_seg);
  }
  return out;
}

std::vector<double> feedback_update(const std::vector<double>& knots,
                                    const std::vector<double>& errors, double eta) {
  if (knots.size() != errors.size()) {
    throw std::invalid_argument("feedback_update: knots and errors differ in length");
  }
  if (!(eta > 0.0) || eta > 1.0) throw std::invalid_argument("eta must lie in (0, 1]");
  std::vector<double> updated(knots.size());
  for (std::size_t i = 0; i < knots.size(); ++i) {
    updated[i] = std::max(0.0, knots[i] + eta * errors[i]);
  }
  return updated;
}

OptimizationResult optimize_drive(const TargetDataset& target, const LambdaParams& interfered,
                                  const CoherenceMatrix& reference_g,
                                  const OptimizerConfig& config, const DriveField& initial,
                                  unsigned n_threads) {
  config.validate();
  interfered.validate();
  validate_drive(initial);
  if (std::abs(reference_g.photon_number - 1.0) > 1e-6) {
    throw std::invalid_argument("optimize_drive: reference coherence must be normalized");
  }
  const TimeGrid grid = reference_g.grid;
  if (target.n_segments != config.n_segments ||
      static_cast<int>(target.values.size()) != target.n_segments) {
    throw std::invalid_argument("optimize_drive: target inconsistent with config");
  }
  if (std::abs(target.n_segments * target.dt_seg - grid.t_end) > 1e-9 * grid.t_end) {
    throw std::invalid_argument("optimize_drive: target does not span the grid");
  }
  for (double v : target.values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("optimize_drive: target values must be >= 0");
    }
  }

  const int n_seg = config.n_segments;
  const double dt_seg = target.dt_seg;

  // Knots at segment edges; each segment's error feeds its left-edge knot,
  // the final knot keeps its initial value.
  std::vector<double> knots(n_seg + 1);
  for (int i = 0; i <= n_seg; ++i) {
    knots[i] = std::max(0.0, drive_eval(initial, i * dt_seg));
  }

  OptimizationResult result;
  double best_v = -1.0;
  std::vector<double> best_knots = knots;
  double prev_v = 0.0;

  for (int iter = 1; iter <= config.max_iterations; ++iter) {
    const PiecewiseLinearDrive drive{knots, dt_seg};
    const ModelSpec model = build_lambda(interfered, drive);
    const Trajectory traj = evolve(model, grid);
    const PhotonWavefunction phi = photon_wavefunction(traj, model);
    const CoherenceMatrix g = first_order_coherence(model, grid, n_threads);

    const TargetDataset emitted = discretize_wavefunction(phi, n_seg);
    std::vector<double> errors(n_seg);
    double abs_err = 0.0;
    for (int i = 0; i < n_seg; ++i) {
      errors[i] = target.values[i] - emitted.values[i];
      abs_err += std::abs(errors[i]);
    }
    const double mean_err = abs_err / n_seg;

    const double v = g.is_empty()
                         ? 0.0
                         : visibility(reference_g, normalize_coherence(g)).visibility;
    result.visibility_history.push_back(v);
    if (v > best_v) {
      best_v = v;
      best_knots = knots;
    }

    if (mean_err < config.error_tolerance) {
      result.status = OptimizerStatus::converged;
      break;
    }
    if (iter > 1 && v < prev_v) {
      result.status = OptimizerStatus::visibility_decreased;
      break;
    }
    if (iter == config.max_iterations) {
      result.status = OptimizerStatus::max_iterations;
      break;
    }

    for (double& e : errors) e *= config.gain;
    const std::vector<double> inner(knots.begin(), knots.begin() + n_seg);
    const std::vector<double> updated = feedback_update(inner, errors, config.eta);
    std::copy(updated.begin(), updated.end(), knots.begin());
    prev_v = v;
  }

  result.drive = PiecewiseLinearDrive{best_knots, dt_seg};
  result.final_visibility = result.visibility_history.back();
  result.best_visibility = best_v;
  result.iterations = static_cast<int>(result.visibility_history.size());
  return result;
}

}  // namespace cavityhom
