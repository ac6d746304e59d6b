#pragma once

#include <string>
#include <vector>

#include "cavityhom/interference.hpp"

namespace cavityhom {

// Bin-averaged target flux per time segment.
struct TargetDataset {
  std::vector<double> values;
  int n_segments = 0;
  double dt_seg = 0.0;
};

struct OptimizerConfig {
  double eta = 0.3;              // learning rate, in (0, 1]
  double gain = 1.0;             // extra scale on the error feedback
  int max_iterations = 200;
  double error_tolerance = 1e-4;  // mean |e_i| stopping threshold
  int n_segments = 40;

  void validate() const;
};

enum class OptimizerStatus { converged, max_iterations, visibility_decreased };

struct OptimizationResult {
  PiecewiseLinearDrive drive;  // the best-visibility drive seen
  std::vector<double> visibility_history;
  double final_visibility = 0.0;  // last history entry
  double best_visibility = 0.0;   // visibility of the returned drive
  OptimizerStatus status = OptimizerStatus::max_iterations;
  int iterations = 0;
};

std::string to_string(OptimizerStatus s);

// Bin averages O_i = (1/dt_seg) * integral of phi over segment i. The
// segment count must divide the grid evenly.
TargetDataset discretize_wavefunction(const PhotonWavefunction& phi, int n_segments);

// One feedback step: I_i <- max(0, I_i + eta * e_i), elementwise.
std::vector<double> feedback_update(const std::vector<double>& knots,
                                    const std::vector<double>& errors, double eta);

// Iteratively reshape the drive of the interfered system so its emitted
// wavefunction matches the target, scoring each iteration by the visibility
// against the (normalized) reference coherence. Stops when the mean error
// falls below tolerance, the iteration budget is exhausted, or the
// visibility decreases; always returns the best drive seen.
OptimizationResult optimize_drive(const TargetDataset& target, const LambdaParams& interfered,
                                  const CoherenceMatrix& reference_g,
                                  const OptimizerConfig& config, const DriveField& initial,
                                  unsigned n_threads = 0);

}  // namespace cavityhom
