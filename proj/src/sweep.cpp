#include "cavityhom/sweep.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cavityhom/parallel.hpp"

namespace cavityhom {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct CellIndex {
  int i = 0;
  int j = 0;
};

CellIndex cell_of(std::size_t flat, int count2) {
  return CellIndex{static_cast<int>(flat) / count2, static_cast<int>(flat) % count2};
}

SystemRecord cell_record(const SweepRequest& request, const CellIndex& c) {
  SystemRecord record = request.base;
  record = with_param(std::move(record), request.axes[0].param, request.axes[0].value(c.i));
  if (request.axes.size() == 2) {
    record = with_param(std::move(record), request.axes[1].param, request.axes[1].value(c.j));
  }
  return record;
}

std::string cell_label(const SweepRequest& request, const CellIndex& c) {
  std::string label = to_string(request.axes[0].param) + "=" +
                      std::to_string(request.axes[0].value(c.i));
  if (request.axes.size() == 2) {
    label += ", " + to_string(request.axes[1].param) + "=" +
             std::to_string(request.axes[1].value(c.j));
  }
  return label;
}

}  // namespace

std::string to_string(SweepParam p) {
  switch (p) {
    case SweepParam::delta_c: return "delta_c";
    case SweepParam::g: return "g";
    case SweepParam::kappa: return "kappa";
    case SweepParam::gamma: return "gamma";
  }
  return "unknown";
}

std::string to_string(SweepMode m) {
  return m == SweepMode::identical ? "identical" : "reference";
}

void SweepAxis::validate() const {
  if (!std::isfinite(start) || !std::isfinite(stop) || start >= stop) {
    throw std::invalid_argument("sweep axis: start must be < stop");
  }
  if (count < 2) throw std::invalid_argument("sweep axis: count must be >= 2");
  if ((param == SweepParam::g || param == SweepParam::kappa) && start <= 0.0) {
    throw std::invalid_argument("sweep axis: " + to_string(param) + " must start above 0");
  }
  if (param == SweepParam::gamma && start < 0.0) {
    throw std::invalid_argument("sweep axis: gamma must start at or above 0");
  }
}

double SweepAxis::value(int k) const {
  return start + (stop - start) * k / (count - 1);
}

void SweepRequest::validate() const {
  if (axes.empty() || axes.size() > 2) {
    throw std::invalid_argument("sweep request: one or two axes required");
  }
  for (const SweepAxis& axis : axes) axis.validate();
  if (axes.size() == 2 && axes[0].param == axes[1].param) {
    throw std::invalid_argument("sweep request: axes must differ");
  }
  grid.validate();
}

SystemRecord with_param(SystemRecord record, SweepParam param, double value) {
  switch (param) {
    case SweepParam::delta_c: record.delta_c = value; break;
    case SweepParam::g: record.g = value; break;
    case SweepParam::kappa: record.kappa = value; break;
    case SweepParam::gamma: record.gamma = value; break;
  }
  return record;
}

VisibilityMap sweep_visibility(const SweepRequest& request, unsigned n_threads) {
  request.validate();
  const int count1 = request.axes[0].count;
  const int count2 = request.axes.size() == 2 ? request.axes[1].count : 1;

  VisibilityMap map{request.axes, Eigen::MatrixXd::Constant(count1, count2, kNaN),
                    request.mode, request.base, request.reference, {}};

  // In reference mode the fixed side is simulated once and shared.
  std::optional<CoherenceMatrix> reference_gt;
  if (request.mode == SweepMode::reference) {
    const ModelSpec ref_model = request.reference.build();
    reference_gt = normalize_coherence(first_order_coherence(ref_model, request.grid, n_threads));
  }

  std::vector<std::string> cell_warnings(static_cast<std::size_t>(count1) * count2);
  parallel_for(
      static_cast<std::size_t>(count1) * count2,
      [&](std::size_t flat) {
        const CellIndex c = cell_of(flat, count2);
        try {
          const SystemRecord record = cell_record(request, c);
          const ModelSpec model = record.build();
          const CoherenceMatrix g = first_order_coherence(model, request.grid, 1);
          const CoherenceMatrix gt = normalize_coherence(g);
          const CoherenceMatrix& other = reference_gt ? *reference_gt : gt;
          map.values(c.i, c.j) = visibility(other, gt).visibility;
        } catch (const std::exception& e) {
          cell_warnings[flat] = "cell (" + cell_label(request, c) + "): " + e.what();
        }
      },
      n_threads);

  for (const std::string& w : cell_warnings) {
    if (!w.empty()) map.warnings.push_back(w);
  }
  return map;
}

std::vector<std::pair<double, double>> optimal_kappa_curve(const VisibilityMap& map) {
  if (map.axes.size() != 2 || map.axes[0].param != SweepParam::g ||
      map.axes[1].param != SweepParam::kappa) {
    throw std::invalid_argument("optimal_kappa_curve: map axes must be g x kappa");
  }
  if (map.mode != SweepMode::identical) {
    throw std::invalid_argument("optimal_kappa_curve: map must be an identical-mode sweep");
  }

  std::vector<std::pair<double, double>> curve;
  for (int i = 0; i < map.axes[0].count; ++i) {
    double best_v = -std::numeric_limits<double>::infinity();
    int best_k = -1;
    for (int j = 0; j < map.axes[1].count; ++j) {
      const double v = map.values(i, j);
      if (std::isnan(v)) continue;
      if (v > best_v) {
        best_v = v;
        best_k = j;
      }
    }
    if (best_k >= 0) curve.emplace_back(map.axes[0].value(i), map.axes[1].value(best_k));
  }
  return curve;
}

std::pair<VisibilityMap, VisibilityMap> optimized_sweep(const SweepRequest& request,
                                                        const CoherenceMatrix& reference_g,
                                                        const OptimizerConfig& config,
                                                        unsigned n_threads) {
  request.validate();
  config.validate();
  if (request.base.type != SystemType::lambda) {
    throw std::invalid_argument("optimized_sweep: drive optimization needs a lambda system");
  }
  if (reference_g.is_empty()) {
    throw std::runtime_error("optimized_sweep: reference emits no photon");
  }

  // Target dataset from the reference diagonal; normalized kernel for scoring.
  PhotonWavefunction ref_phi{reference_g.grid, {}, reference_g.photon_number};
  ref_phi.values.reserve(reference_g.grid.n_samples());
  for (int i = 0; i < reference_g.grid.n_samples(); ++i) {
    ref_phi.values.push_back(reference_g.entries(i, i).real());
  }
  const TargetDataset target = discretize_wavefunction(ref_phi, config.n_segments);
  const CoherenceMatrix reference_gt = normalize_coherence(reference_g);

  const int count1 = request.axes[0].count;
  const int count2 = request.axes.size() == 2 ? request.axes[1].count : 1;

  VisibilityMap before{request.axes, Eigen::MatrixXd::Constant(count1, count2, kNaN),
                       request.mode, request.base, request.reference, {}};
  VisibilityMap after = before;

  std::vector<std::string> cell_warnings(static_cast<std::size_t>(count1) * count2);
  parallel_for(
      static_cast<std::size_t>(count1) * count2,
      [&](std::size_t flat) {
        const CellIndex c = cell_of(flat, count2);
        try {
          SystemRecord record = cell_record(request, c);
          record.drive = request.reference.drive;
          const CoherenceMatrix g0 = first_order_coherence(record.build(), request.grid, 1);
          if (!g0.is_empty()) {
            before.values(c.i, c.j) =
                visibility(reference_gt, normalize_coherence(g0)).visibility;
          }
          const OptimizationResult result = optimize_drive(
              target, record.lambda(), reference_gt, config, request.reference.drive, 1);
          after.values(c.i, c.j) = result.best_visibility;
        } catch (const std::exception& e) {
          cell_warnings[flat] = "cell (" + cell_label(request, c) + "): " + e.what();
        }
      },
      n_threads);

  for (const std::string& w : cell_warnings) {
    if (!w.empty()) {
      before.warnings.push_back(w);
      after.warnings.push_back(w);
    }
  }
  return {std::move(before), std::move(after)};
}

}  // namespace cavityhom
