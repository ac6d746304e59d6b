#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cavityhom/commands.hpp"
#include "cavityhom/version.hpp"

namespace py = pybind11;
using namespace cavityhom;

namespace {

// Reference-target drive optimization in one call: simulate the reference,
// bin its wavefunction into the target dataset, then run the feedback loop
// on the interfered system.
OptimizationResult optimize_pair(const SystemRecord& reference, const SystemRecord& interfered,
                                 const TimeGrid& grid, const OptimizerConfig& config,
                                 std::optional<DriveField> initial, unsigned n_threads) {
  if (reference.type != SystemType::lambda || interfered.type != SystemType::lambda) {
    throw std::invalid_argument("optimize_pair: both systems must be lambda-type");
  }
  const ModelSpec ref_model = reference.build();
  const Trajectory traj = evolve(ref_model, grid);
  const PhotonWavefunction phi = photon_wavefunction(traj, ref_model);
  const TargetDataset target = discretize_wavefunction(phi, config.n_segments);
  const CoherenceMatrix ref_gt =
      normalize_coherence(first_order_coherence(ref_model, grid, n_threads));
  return optimize_drive(target, interfered.lambda(), ref_gt, config,
                        initial ? *initial : reference.drive, n_threads);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cavity-QED single-photon sources: emission, HOM visibility, drive optimization";
  m.attr("__version__") = kVersion;

  py::enum_<SystemType>(m, "SystemType")
      .value("two_level", SystemType::two_level)
      .value("lambda_type", SystemType::lambda);

  py::enum_<Gamma32Target>(m, "Gamma32Target")
      .value("g0", Gamma32Target::g0)
      .value("g1", Gamma32Target::g1);

  py::class_<ZeroDrive>(m, "ZeroDrive").def(py::init<>());

  py::class_<GaussianDrive>(m, "GaussianDrive")
      .def(py::init<double, double, double>(), py::arg("amplitude"), py::arg("center"),
           py::arg("width"))
      .def_readwrite("amplitude", &GaussianDrive::amplitude)
      .def_readwrite("center", &GaussianDrive::center)
      .def_readwrite("width", &GaussianDrive::width);

  py::class_<PiecewiseLinearDrive>(m, "PiecewiseLinearDrive")
      .def(py::init<std::vector<double>, double>(), py::arg("knots"), py::arg("dt"))
      .def_readwrite("knots", &PiecewiseLinearDrive::knots)
      .def_readwrite("dt", &PiecewiseLinearDrive::dt);

  m.def("drive_eval", &drive_eval, py::arg("drive"), py::arg("t"),
        "Drive amplitude at time t.");

  py::class_<TimeGrid>(m, "TimeGrid")
      .def(py::init<double, int, int>(), py::arg("t_end") = 40.0, py::arg("n_steps") = 800,
           py::arg("substeps") = 1)
      .def_readwrite("t_end", &TimeGrid::t_end)
      .def_readwrite("n_steps", &TimeGrid::n_steps)
      .def_readwrite("substeps", &TimeGrid::substeps)
      .def_property_readonly("dt", &TimeGrid::dt)
      .def("times", [](const TimeGrid& g) {
        std::vector<double> t(g.n_samples());
        for (int i = 0; i < g.n_samples(); ++i) t[i] = g.time(i);
        return t;
      });

  py::class_<SystemRecord>(m, "SystemRecord")
      .def(py::init<>())
      .def_readwrite("type", &SystemRecord::type)
      .def_readwrite("delta_c", &SystemRecord::delta_c)
      .def_readwrite("delta_d", &SystemRecord::delta_d)
      .def_readwrite("g", &SystemRecord::g)
      .def_readwrite("kappa", &SystemRecord::kappa)
      .def_readwrite("gamma", &SystemRecord::gamma)
      .def_readwrite("gamma12_fraction", &SystemRecord::gamma12_fraction)
      .def_readwrite("gamma32_fraction", &SystemRecord::gamma32_fraction)
      .def_readwrite("gamma32_target", &SystemRecord::gamma32_target)
      .def_readwrite("drive", &SystemRecord::drive);

  py::class_<PhotonWavefunction>(m, "PhotonWavefunction")
      .def_readonly("grid", &PhotonWavefunction::grid)
      .def_readonly("values", &PhotonWavefunction::values)
      .def_readonly("efficiency", &PhotonWavefunction::efficiency);

  py::class_<CoherenceMatrix>(m, "CoherenceMatrix")
      .def_readonly("grid", &CoherenceMatrix::grid)
      .def_readonly("entries", &CoherenceMatrix::entries)
      .def_readonly("photon_number", &CoherenceMatrix::photon_number)
      .def("is_empty", &CoherenceMatrix::is_empty);

  py::class_<HOMResult>(m, "HOMResult")
      .def_readonly("tau_values", &HOMResult::tau_values)
      .def_readonly("g2_values", &HOMResult::g2_values)
      .def_readonly("g2_zero", &HOMResult::g2_zero)
      .def_readonly("g2_limit", &HOMResult::g2_limit)
      .def_readonly("g2_limit_numeric", &HOMResult::g2_limit_numeric)
      .def_readonly("visibility", &HOMResult::visibility)
      .def_readonly("overlap_zero", &HOMResult::overlap_zero);

  py::class_<OptimizerConfig>(m, "OptimizerConfig")
      .def(py::init<>())
      .def_readwrite("eta", &OptimizerConfig::eta)
      .def_readwrite("gain", &OptimizerConfig::gain)
      .def_readwrite("max_iterations", &OptimizerConfig::max_iterations)
      .def_readwrite("error_tolerance", &OptimizerConfig::error_tolerance)
      .def_readwrite("n_segments", &OptimizerConfig::n_segments);

  py::class_<OptimizationResult>(m, "OptimizationResult")
      .def_readonly("drive", &OptimizationResult::drive)
      .def_readonly("visibility_history", &OptimizationResult::visibility_history)
      .def_readonly("final_visibility", &OptimizationResult::final_visibility)
      .def_readonly("best_visibility", &OptimizationResult::best_visibility)
      .def_readonly("iterations", &OptimizationResult::iterations)
      .def_property_readonly(
          "status", [](const OptimizationResult& r) { return to_string(r.status); });

  m.def(
      "simulate",
      [](const SystemRecord& record, const TimeGrid& grid) {
        const ModelSpec model = record.build();
        return photon_wavefunction(evolve(model, grid), model);
      },
      py::arg("system"), py::arg("grid") = TimeGrid{},
      "Emitted photon flux over the grid.");

  m.def(
      "coherence",
      [](const SystemRecord& record, const TimeGrid& grid, unsigned n_threads) {
        return first_order_coherence(record.build(), grid, n_threads);
      },
      py::arg("system"), py::arg("grid") = TimeGrid{}, py::arg("n_threads") = 0,
      "Two-time field coherence kappa <a^dag(t) a(t')> on the grid.");

  m.def("normalize_coherence", &normalize_coherence, py::arg("coherence"));
  m.def("hom_correlation", &hom_correlation, py::arg("ga"), py::arg("gb"), py::arg("tau"));
  m.def("visibility", &visibility, py::arg("ga"), py::arg("gb"), py::arg("tau_stride") = 0,
        py::arg("n_threads") = 0);

  m.def(
      "pair_visibility",
      [](const SystemRecord& a, const SystemRecord& b, const TimeGrid& grid,
         unsigned n_threads) {
        const CoherenceMatrix ga =
            normalize_coherence(first_order_coherence(a.build(), grid, n_threads));
        const CoherenceMatrix gb =
            normalize_coherence(first_order_coherence(b.build(), grid, n_threads));
        return visibility(ga, gb);
      },
      py::arg("system_a"), py::arg("system_b"), py::arg("grid") = TimeGrid{},
      py::arg("n_threads") = 0, "HOM visibility between two systems.");

  m.def("optimize_pair", &optimize_pair, py::arg("reference"), py::arg("interfered"),
        py::arg("grid") = TimeGrid{}, py::arg("config") = OptimizerConfig{},
        py::arg("initial") = std::nullopt, py::arg("n_threads") = 0,
        "Optimize the interfered system's drive toward the reference wavefunction.");
}
