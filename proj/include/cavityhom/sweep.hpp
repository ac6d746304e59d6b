#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cavityhom/optimizer.hpp"

namespace cavityhom {

enum class SweepParam { delta_c, g, kappa, gamma };
enum class SweepMode { identical, reference };

std::string to_string(SweepParam p);
std::string to_string(SweepMode m);

struct SweepAxis {
  SweepParam param = SweepParam::g;
  double start = 0.0;
  double stop = 1.0;
  int count = 2;  // linear spacing

  void validate() const;
  double value(int k) const;
};

// In identical mode both interfering systems take the swept values; in
// reference mode the reference stays fixed and only the interfered system is
// swept. Axes may hold one or two entries.
struct SweepRequest {
  SweepMode mode = SweepMode::identical;
  SystemRecord base;
  SystemRecord reference;
  TimeGrid grid;
  std::vector<SweepAxis> axes;

  void validate() const;
};

// Visibility per cell; failed cells hold NaN and add a warning. values is
// count1 x count2 (count2 = 1 for single-axis sweeps).
struct VisibilityMap {
  std::vector<SweepAxis> axes;
  Eigen::MatrixXd values;
  SweepMode mode = SweepMode::identical;
  SystemRecord base;
  SystemRecord reference;
  std::vector<std::string> warnings;
};

SystemRecord with_param(SystemRecord record, SweepParam param, double value);

VisibilityMap sweep_visibility(const SweepRequest& request, unsigned n_threads = 0);

// Per-g-column argmax of V over the kappa axis (ties toward smaller kappa;
// all-NaN columns omitted). The map must be an identical-mode g x kappa map.
std::vector<std::pair<double, double>> optimal_kappa_curve(const VisibilityMap& map);

// Before/after maps for drive optimization of the interfered system against
// a fixed reference: "before" drives every cell with the reference drive,
// "after" optimizes each cell's drive. reference_g is the raw reference
// coherence (its diagonal provides the target dataset).
std::pair<VisibilityMap, VisibilityMap> optimized_sweep(const SweepRequest& request,
                                                        const CoherenceMatrix& reference_g,
                                                        const OptimizerConfig& config,
                                                        unsigned n_threads = 0);

}  // namespace cavityhom
