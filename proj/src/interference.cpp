#include "cavityhom/interference.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cavityhom/parallel.hpp"

namespace cavityhom {

namespace {

void require_same_grid(const CoherenceMatrix& ga, const CoherenceMatrix& gb) {
  if (!(ga.grid == gb.grid)) {
    throw std::invalid_argument("coherence grids do not match");
  }
}

void require_normalized(const CoherenceMatrix& g) {
  if (std::abs(g.photon_number - 1.0) > 1e-6) {
    throw std::invalid_argument("coherence is not normalized (photon_number = " +
                                std::to_string(g.photon_number) + ")");
  }
}

// Re sum_{ij} w_i w_j conj(GA(i, j)) GB(i - shift, j), zero-padded.
double shifted_overlap(const CoherenceMatrix& ga, const CoherenceMatrix& gb, int shift) {
  const TimeGrid& grid = ga.grid;
  const int n = grid.n_samples();
  Eigen::VectorXcd w(n);
  for (int i = 0; i < n; ++i) w(i) = trapezoid_weight(grid, i);

  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const int k = i - shift;
    if (k < 0 || k >= n) continue;
    const Complex row_dot =
        (ga.entries.row(i).conjugate().cwiseProduct(gb.entries.row(k)) * w)(0, 0);
    sum += trapezoid_weight(grid, i) * row_dot.real();
  }
  return sum;
}

int shift_from_tau(const TimeGrid& grid, double tau) {
  const double steps = tau / grid.dt();
  const double rounded = std::round(steps);
  if (std::abs(steps - rounded) > 1e-9 * std::max(1.0, std::abs(steps))) {
    throw std::invalid_argument("tau must be a multiple of the grid dt");
  }
  return static_cast<int>(rounded);
}

}  // namespace

CoherenceMatrix normalize_coherence(const CoherenceMatrix& g) {
  if (g.is_empty()) throw std::runtime_error("no photon emitted");
  CoherenceMatrix out{g.grid, g.entries / g.photon_number, 1.0};
  return out;
}

double hom_correlation(const CoherenceMatrix& ga, const CoherenceMatrix& gb, double tau) {
  require_same_grid(ga, gb);
  require_normalized(ga);
  require_normalized(gb);
  const int shift = shift_from_tau(ga.grid, tau);
  return 0.5 * (1.0 - shifted_overlap(ga, gb, shift));
}

HOMResult visibility(const CoherenceMatrix& ga, const CoherenceMatrix& gb, int tau_stride,
                     unsigned n_threads) {
  require_same_grid(ga, gb);
  require_normalized(ga);
  require_normalized(gb);
  const TimeGrid& grid = ga.grid;

  HOMResult result;
  result.overlap_zero = shifted_overlap(ga, gb, 0);
  result.g2_zero = 0.5 * (1.0 - result.overlap_zero);
  result.g2_limit_numeric = 0.5 * (1.0 - shifted_overlap(ga, gb, grid.n_steps));
  result.visibility = 1.0 - result.g2_zero / result.g2_limit;

  if (tau_stride == 0) {
    result.tau_values = {0.0, grid.t_end};
    result.g2_values = {result.g2_zero, result.g2_limit_numeric};
    return result;
  }
  if (tau_stride < 0 || grid.n_steps % tau_stride != 0) {
    throw std::invalid_argument("tau_stride must divide n_steps");
  }

  const int count = 2 * (grid.n_steps / tau_stride) + 1;
  result.tau_values.resize(count);
  result.g2_values.resize(count);
  parallel_for(
      static_cast<std::size_t>(count),
      [&](std::size_t idx) {
        const int shift = -grid.n_steps + static_cast<int>(idx) * tau_stride;
        result.tau_values[idx] = shift * grid.dt();
        result.g2_values[idx] = 0.5 * (1.0 - shifted_overlap(ga, gb, shift));
      },
      n_threads);
  return result;
}

}  // namespace cavityhom
