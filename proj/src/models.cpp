#include "cavityhom/models.hpp"

#include <cmath>
#include <stdexcept>

namespace cavityhom {

namespace {

// Basis indices of the single-excitation truncations.
namespace two_level_basis {
constexpr int e0 = 0;
constexpr int g1 = 1;
constexpr int g0 = 2;
constexpr int dim = 3;
}  // namespace two_level_basis

namespace lambda_basis {
constexpr int u0 = 0;
constexpr int e0 = 1;
constexpr int g1 = 2;
constexpr int g0 = 3;
constexpr int dim = 4;
}  // namespace lambda_basis

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be finite");
}

}  // namespace

void TwoLevelParams::validate() const {
  require_finite(delta_c, "delta_c");
  require_finite(g, "g");
  require_finite(kappa, "kappa");
  require_finite(gamma, "gamma");
  if (g <= 0.0) throw std::invalid_argument("g must be > 0");
  if (kappa <= 0.0) throw std::invalid_argument("kappa must be > 0");
  if (gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
}

void LambdaParams::validate() const {
  require_finite(delta_c, "delta_c");
  require_finite(delta_d, "delta_d");
  require_finite(g, "g");
  require_finite(kappa, "kappa");
  require_finite(gamma, "gamma");
  require_finite(gamma12_fraction, "gamma12_fraction");
  require_finite(gamma32_fraction, "gamma32_fraction");
  if (g <= 0.0) throw std::invalid_argument("g must be > 0");
  if (kappa <= 0.0) throw std::invalid_argument("kappa must be > 0");
  if (gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
  if (gamma12_fraction < 0.0 || gamma12_fraction > 1.0 ||
      gamma32_fraction < 0.0 || gamma32_fraction > 1.0) {
    throw std::invalid_argument("gamma fractions must lie in [0, 1]");
  }
  if (std::abs(gamma12_fraction + gamma32_fraction - 1.0) > 1e-12) {
    throw std::invalid_argument("gamma12_fraction + gamma32_fraction must equal 1");
  }
}

void validate_drive(const DriveField& d) {
  if (const auto* gauss = std::get_if<GaussianDrive>(&d)) {
    require_finite(gauss->amplitude, "drive amplitude");
    require_finite(gauss->center, "drive center");
    require_finite(gauss->width, "drive width");
    if (gauss->width <= 0.0) throw std::invalid_argument("Gaussian drive width must be > 0");
  } else if (const auto* pwl = std::get_if<PiecewiseLinearDrive>(&d)) {
    if (pwl->knots.size() < 2) {
      throw std::invalid_argument("piecewise-linear drive needs at least 2 knots");
    }
    if (!std::isfinite(pwl->dt) || pwl->dt <= 0.0) {
      throw std::invalid_argument("piecewise-linear drive dt must be > 0");
    }
    for (double k : pwl->knots) require_finite(k, "drive knot");
  }
}

double drive_eval(const DriveField& d, double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("drive_eval: t must be finite");
  if (std::holds_alternative<ZeroDrive>(d)) return 0.0;
  if (const auto* gauss = std::get_if<GaussianDrive>(&d)) {
    const double x = (t - gauss->center) / gauss->width;
    return gauss->amplitude * std::exp(-x * x);
  }
  const auto& pwl = std::get<PiecewiseLinearDrive>(d);
  const auto n = static_cast<long>(pwl.knots.size()) - 1;
  if (t <= 0.0) return pwl.knots.front();
  if (t >= static_cast<double>(n) * pwl.dt) return pwl.knots.back();
  const auto i = static_cast<long>(t / pwl.dt);
  const double t_i = static_cast<double>(i) * pwl.dt;
  return pwl.knots[i] + (pwl.knots[i + 1] - pwl.knots[i]) * (t - t_i) / pwl.dt;
}

ModelSpec build_two_level(const TwoLevelParams& p) {
  using namespace two_level_basis;
  p.validate();

  Operator h = Operator::Zero(dim, dim);
  h(g1, g1) = p.delta_c;
  h(g1, e0) = p.g;
  h(e0, g1) = p.g;

  std::vector<Operator> collapse;
  collapse.push_back(std::sqrt(p.kappa) * transition_op(g0, g1, dim));
  if (p.gamma > 0.0) {
    collapse.push_back(std::sqrt(p.gamma) * transition_op(g0, e0, dim));
  }

  return ModelSpec{
      dim,
      [h](double) { return h; },
      std::move(collapse),
      DensityMatrix(transition_op(e0, e0, dim)),
      transition_op(g0, g1, dim),
      p.kappa,
      {"|e,0>", "|g,1>", "|g,0>"},
  };
}

ModelSpec build_lambda(const LambdaParams& p, const DriveField& drive) {
  using namespace lambda_basis;
  p.validate();
  validate_drive(drive);

  Operator h0 = Operator::Zero(dim, dim);
  h0(g1, g1) = p.delta_c;
  h0(g1, e0) = p.g;
  h0(e0, g1) = p.g;

  const double delta_d = p.delta_d;
  auto hamiltonian = [h0, drive, delta_d](double t) {
    Operator h = h0;
    const double omega = drive_eval(drive, t);
    const Complex phase = std::exp(Complex(0.0, -delta_d * t));
    h(e0, u0) = omega * phase;
    h(u0, e0) = omega * std::conj(phase);
    return h;
  };

  std::vector<Operator> collapse;
  collapse.push_back(std::sqrt(p.kappa) * transition_op(g0, g1, dim));
  if (p.gamma > 0.0) {
    const double gamma12 = p.gamma * p.gamma12_fraction;
    const double gamma32 = p.gamma * p.gamma32_fraction;
    if (gamma12 > 0.0) {
      collapse.push_back(std::sqrt(gamma12) * transition_op(u0, e0, dim));
    }
    if (gamma32 > 0.0) {
      const int target = p.gamma32_target == Gamma32Target::g0 ? g0 : g1;
      collapse.push_back(std::sqrt(gamma32) * transition_op(target, e0, dim));
    }
  }

  return ModelSpec{
      dim,
      std::move(hamiltonian),
      std::move(collapse),
      DensityMatrix(transition_op(u0, u0, dim)),
      transition_op(g0, g1, dim),
      p.kappa,
      {"|u,0>", "|e,0>", "|g,1>", "|g,0>"},
  };
}

TwoLevelParams SystemRecord::two_level() const {
  return TwoLevelParams{delta_c, g, kappa, gamma};
}

LambdaParams SystemRecord::lambda() const {
  return LambdaParams{delta_c, delta_d,          g,
                      kappa,   gamma,            gamma12_fraction,
                      gamma32_fraction, gamma32_target};
}

ModelSpec SystemRecord::build() const {
  if (type == SystemType::two_level) return build_two_level(two_level());
  return build_lambda(lambda(), drive);
}

}  // namespace cavityhom
