#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "cavityhom/linalg.hpp"

namespace cavityhom {

// Two-level emitter in a single-mode cavity, single-excitation basis
// {|e,0>, |g,1>, |g,0>}. The truncation is exact: at most one quantum exists
// and neither decay channel can repopulate an emitted photon.
struct TwoLevelParams {
  double delta_c = 0.0;  // atom-cavity detuning
  double g = 1.0;        // coupling strength
  double kappa = 1.0;    // cavity decay rate
  double gamma = 0.0;    // free-space spontaneous emission rate

  void validate() const;
};

// Where the free-space decay channel of the three-level system deposits the
// atom: |g,0> (photon lost, standard) or |g,1> (photon into the cavity).
enum class Gamma32Target { g0, g1 };

// Three-level emitter, basis {|u,0>, |e,0>, |g,1>, |g,0>}. The drive couples
// |u,0> <-> |e,0>, the cavity couples |e,0> <-> |g,1>.
struct LambdaParams {
  double delta_c = 0.0;  // cavity detuning from the e-g transition
  double delta_d = 0.0;  // drive detuning from the u-e transition
  double g = 1.0;
  double kappa = 1.0;
  double gamma = 0.0;                     // total excited-state decay rate
  double gamma12_fraction = 5.0 / 9.0;    // share decaying back to |u>
  double gamma32_fraction = 4.0 / 9.0;    // share decaying to |g>
  Gamma32Target gamma32_target = Gamma32Target::g0;

  void validate() const;
};

// Time-dependent real drive amplitude.
struct ZeroDrive {};
struct GaussianDrive {
  double amplitude = 0.0;
  double center = 0.0;
  double width = 1.0;
};
// Linear interpolation between knots I_0..I_N at times i*dt; clamps to I_0
// before t=0 and to I_N after t=N*dt.
struct PiecewiseLinearDrive {
  std::vector<double> knots;
  double dt = 1.0;
};
using DriveField = std::variant<ZeroDrive, GaussianDrive, PiecewiseLinearDrive>;

void validate_drive(const DriveField& d);
double drive_eval(const DriveField& d, double t);

// A ready-to-propagate system: Hamiltonian of time, collapse operators with
// rate factors pre-multiplied, initial state, and the cavity field operator
// whose decay channel is the photon output.
struct ModelSpec {
  int dim = 0;
  std::function<Operator(double)> hamiltonian;  // pure; safe to call concurrently
  std::vector<Operator> collapse_ops;
  DensityMatrix initial_state;
  Operator cavity_lowering;
  double kappa = 0.0;  // output rate: phi_out(t) = kappa <a^dag a>(t)
  std::vector<std::string> basis_labels;
};

ModelSpec build_two_level(const TwoLevelParams& p);
ModelSpec build_lambda(const LambdaParams& p, const DriveField& drive);

// One record covering both system types, as used by the CLI, sweeps and the
// Python surface. delta_d, the gamma split and the drive are ignored for
// two-level systems (their excitation pulse is not simulated; the initial
// state is the excited state).
enum class SystemType { two_level, lambda };

struct SystemRecord {
  SystemType type = SystemType::lambda;
  double delta_c = 0.0;
  double delta_d = 0.0;
  double g = 1.0;
  double kappa = 1.0;
  double gamma = 0.0;
  double gamma12_fraction = 5.0 / 9.0;
  double gamma32_fraction = 4.0 / 9.0;
  Gamma32Target gamma32_target = Gamma32Target::g0;
  DriveField drive = ZeroDrive{};

  TwoLevelParams two_level() const;
  LambdaParams lambda() const;
  ModelSpec build() const;
};

}  // namespace cavityhom
