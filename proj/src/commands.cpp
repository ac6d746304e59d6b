#include "cavityhom/commands.hpp"

#include <cmath>
#include <stdexcept>

#include "cavityhom/csv.hpp"

namespace cavityhom {

namespace {

void write_json(const std::string& path, const Json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

std::vector<std::vector<double>> wavefunction_rows(const PhotonWavefunction& phi) {
  std::vector<std::vector<double>> rows;
  rows.reserve(phi.values.size());
  for (int i = 0; i < phi.grid.n_samples(); ++i) {
    rows.push_back({phi.grid.time(i), phi.values[i]});
  }
  return rows;
}

int auto_tau_stride(int n_steps) {
  // Smallest divisor of n_steps keeping the sweep at <= ~200 points per side.
  for (int d = (n_steps + 199) / 200; d <= n_steps; ++d) {
    if (n_steps % d == 0) return d;
  }
  return n_steps;
}

struct SimulationProducts {
  PhotonWavefunction phi;
  CoherenceMatrix coherence;
};

SimulationProducts simulate_system(const SystemRecord& record, const TimeGrid& grid,
                                   unsigned n_threads) {
  const ModelSpec model = record.build();
  const Trajectory traj = evolve(model, grid);
  return SimulationProducts{photon_wavefunction(traj, model),
                            first_order_coherence(model, grid, n_threads)};
}

SweepRequest sweep_request_from(const RunConfig& config) {
  if (!config.sweep) throw std::invalid_argument("config has no sweep section");
  SweepRequest request;
  request.mode = config.sweep->mode;
  request.base = config.system;
  request.grid = config.grid;
  request.axes = config.sweep->axes;
  if (config.sweep->reference) request.reference = *config.sweep->reference;
  request.validate();
  return request;
}

std::vector<std::vector<double>> map_rows(const VisibilityMap& map) {
  std::vector<std::vector<double>> rows;
  const bool two_axes = map.axes.size() == 2;
  for (int i = 0; i < map.axes[0].count; ++i) {
    const int count2 = two_axes ? map.axes[1].count : 1;
    for (int j = 0; j < count2; ++j) {
      if (two_axes) {
        rows.push_back({map.axes[0].value(i), map.axes[1].value(j), map.values(i, j)});
      } else {
        rows.push_back({map.axes[0].value(i), map.values(i, j)});
      }
    }
  }
  return rows;
}

Json axis_to_json(const SweepAxis& axis) {
  Json j;
  j["param"] = to_string(axis.param);
  j["start"] = axis.start;
  j["stop"] = axis.stop;
  j["count"] = axis.count;
  return j;
}

Json map_sidecar(const VisibilityMap& map, const TimeGrid& grid) {
  Json j;
  j["mode"] = to_string(map.mode);
  Json axes = Json::array();
  for (const SweepAxis& axis : map.axes) axes.push_back(axis_to_json(axis));
  j["axes"] = axes;
  j["base"] = system_to_json(map.base);
  if (map.mode == SweepMode::reference) j["reference"] = system_to_json(map.reference);
  j["grid"] = grid_to_json(grid);
  j["warnings"] = map.warnings;
  return j;
}

}  // namespace

std::vector<std::string> cmd_simulate(const RunConfig& config, unsigned n_threads) {
  const ModelSpec model = config.system.build();
  const Trajectory traj = evolve(model, config.grid);
  const PhotonWavefunction phi = photon_wavefunction(traj, model);
  (void)n_threads;

  const std::string phi_path = config.output_prefix + "_phi.csv";
  write_csv(phi_path, {"t", "phi_out"}, wavefunction_rows(phi));

  Json summary;
  summary["command"] = "simulate";
  summary["efficiency"] = phi.efficiency;
  summary["system"] = system_to_json(config.system);
  summary["grid"] = grid_to_json(config.grid);
  const std::string summary_path = config.output_prefix + "_summary.json";
  write_json(summary_path, summary);

  return {phi_path, summary_path};
}

std::vector<std::string> cmd_hom(const RunConfig& config_a, const RunConfig& config_b,
                                 unsigned n_threads) {
  if (!(config_a.grid == config_b.grid)) {
    throw std::invalid_argument("hom: the two configs must share the same grid");
  }
  const SimulationProducts a = simulate_system(config_a.system, config_a.grid, n_threads);
  const SimulationProducts b = simulate_system(config_b.system, config_b.grid, n_threads);
  const CoherenceMatrix ga = normalize_coherence(a.coherence);
  const CoherenceMatrix gb = normalize_coherence(b.coherence);

  int stride = config_a.hom ? config_a.hom->tau_stride : 0;
  if (stride == 0) stride = auto_tau_stride(config_a.grid.n_steps);
  const HOMResult result = visibility(ga, gb, stride, n_threads);

  std::vector<std::vector<double>> rows;
  rows.reserve(result.tau_values.size());
  for (std::size_t i = 0; i < result.tau_values.size(); ++i) {
    rows.push_back({result.tau_values[i], result.g2_values[i]});
  }
  const std::string g2_path = config_a.output_prefix + "_g2.csv";
  write_csv(g2_path, {"tau", "g2"}, rows);

  Json summary;
  summary["command"] = "hom";
  summary["g2_zero"] = result.g2_zero;
  summary["g2_limit_numeric"] = result.g2_limit_numeric;
  summary["visibility"] = result.visibility;
  summary["overlap_zero"] = result.overlap_zero;
  summary["raw_overlap"] =
      result.overlap_zero * a.phi.efficiency * b.phi.efficiency;
  summary["efficiency_a"] = a.phi.efficiency;
  summary["efficiency_b"] = b.phi.efficiency;
  summary["system_a"] = system_to_json(config_a.system);
  summary["system_b"] = system_to_json(config_b.system);
  summary["grid"] = grid_to_json(config_a.grid);
  const std::string json_path = config_a.output_prefix + "_hom.json";
  write_json(json_path, summary);

  return {g2_path, json_path};
}

std::vector<std::string> cmd_sweep(const RunConfig& config, unsigned n_threads) {
  const SweepRequest request = sweep_request_from(config);

  if (config.sweep->optimize) {
    const ModelSpec ref_model = request.reference.build();
    const CoherenceMatrix reference_g =
        first_order_coherence(ref_model, request.grid, n_threads);
    const auto [before, after] =
        optimized_sweep(request, reference_g, *config.sweep->optimize, n_threads);

    const bool two_axes = request.axes.size() == 2;
    const std::vector<std::string> header =
        two_axes ? std::vector<std::string>{to_string(request.axes[0].param),
                                            to_string(request.axes[1].param), "V"}
                 : std::vector<std::string>{to_string(request.axes[0].param), "V"};
    const std::string before_path = config.output_prefix + "_map_before.csv";
    const std::string after_path = config.output_prefix + "_map_after.csv";
    write_csv(before_path, header, map_rows(before));
    write_csv(after_path, header, map_rows(after));

    Json sidecar = map_sidecar(after, request.grid);
    sidecar["reference"] = system_to_json(request.reference);
    sidecar["optimize"] = {{"eta", config.sweep->optimize->eta},
                           {"gain", config.sweep->optimize->gain},
                           {"max_iterations", config.sweep->optimize->max_iterations},
                           {"error_tolerance", config.sweep->optimize->error_tolerance},
                           {"n_segments", config.sweep->optimize->n_segments}};
    const std::string sidecar_path = config.output_prefix + "_map.json";
    write_json(sidecar_path, sidecar);
    return {before_path, after_path, sidecar_path};
  }

  const VisibilityMap map = sweep_visibility(request, n_threads);
  const bool two_axes = request.axes.size() == 2;
  const std::vector<std::string> header =
      two_axes ? std::vector<std::string>{to_string(request.axes[0].param),
                                          to_string(request.axes[1].param), "V"}
               : std::vector<std::string>{to_string(request.axes[0].param), "V"};
  const std::string map_path = config.output_prefix + "_map.csv";
  write_csv(map_path, header, map_rows(map));
  const std::string sidecar_path = config.output_prefix + "_map.json";
  write_json(sidecar_path, map_sidecar(map, request.grid));
  return {map_path, sidecar_path};
}

std::vector<std::string> cmd_optimize(const RunConfig& config, unsigned n_threads) {
  if (!config.optimize) throw std::invalid_argument("config has no optimize section");
  if (config.system.type != SystemType::lambda) {
    throw std::invalid_argument("optimize: the interfered system must be lambda-type");
  }
  const OptimizeBlock& block = *config.optimize;

  const SimulationProducts ref =
      simulate_system(block.reference, config.grid, n_threads);
  const TargetDataset target =
      discretize_wavefunction(ref.phi, block.config.n_segments);
  const CoherenceMatrix reference_gt = normalize_coherence(ref.coherence);
  const DriveField initial = block.initial ? *block.initial : block.reference.drive;

  // Wavefunction and visibility with the unoptimized (initial) drive.
  SystemRecord before_record = config.system;
  before_record.drive = initial;
  const SimulationProducts before =
      simulate_system(before_record, config.grid, n_threads);
  const double before_v =
      before.coherence.is_empty()
          ? 0.0
          : visibility(reference_gt, normalize_coherence(before.coherence)).visibility;

  const OptimizationResult result = optimize_drive(
      target, config.system.lambda(), reference_gt, block.config, initial, n_threads);

  SystemRecord after_record = config.system;
  after_record.drive = result.drive;
  const SimulationProducts after = simulate_system(after_record, config.grid, n_threads);

  std::vector<std::vector<double>> knot_rows;
  for (std::size_t i = 0; i < result.drive.knots.size(); ++i) {
    knot_rows.push_back({static_cast<double>(i) * result.drive.dt, result.drive.knots[i]});
  }
  const std::string drive_path = config.output_prefix + "_drive.csv";
  write_csv(drive_path, {"t", "omega_d"}, knot_rows);

  std::vector<std::vector<double>> history_rows;
  for (std::size_t i = 0; i < result.visibility_history.size(); ++i) {
    history_rows.push_back({static_cast<double>(i + 1), result.visibility_history[i]});
  }
  const std::string history_path = config.output_prefix + "_history.csv";
  write_csv(history_path, {"iteration", "V"}, history_rows);

  const std::string before_path = config.output_prefix + "_phi_before.csv";
  const std::string after_path = config.output_prefix + "_phi_after.csv";
  write_csv(before_path, {"t", "phi_out"}, wavefunction_rows(before.phi));
  write_csv(after_path, {"t", "phi_out"}, wavefunction_rows(after.phi));

  Json summary;
  summary["command"] = "optimize";
  summary["status"] = to_string(result.status);
  summary["iterations"] = result.iterations;
  summary["final_visibility"] = result.final_visibility;
  summary["best_visibility"] = result.best_visibility;
  summary["initial_visibility"] = before_v;
  summary["system"] = system_to_json(config.system);
  summary["reference"] = system_to_json(block.reference);
  summary["initial_drive"] = drive_to_json(initial);
  summary["grid"] = grid_to_json(config.grid);
  const std::string summary_path = config.output_prefix + "_optimize.json";
  write_json(summary_path, summary);

  return {drive_path, history_path, before_path, after_path, summary_path};
}

}  // namespace cavityhom
