#include <doctest.h>

#include <cmath>

#include "cavityhom/interference.hpp"

using namespace cavityhom;

namespace {

const TimeGrid kGrid{40.0, 800};
const TimeGrid kGridPure{40.0, 800, 32};

CoherenceMatrix coherence_of(const ModelSpec& m, const TimeGrid& grid = kGrid) {
  return first_order_coherence(m, grid);
}

// gamma = 0 sources are pure; integrate them on the substepped grid
CoherenceMatrix lambda_coherence(double g, double kappa, double gamma) {
  LambdaParams p;
  p.g = g;
  p.kappa = kappa;
  p.gamma = gamma;
  return coherence_of(build_lambda(p, GaussianDrive{6.0, 15.0, 5.0}),
                      gamma > 0.0 ? kGrid : kGridPure);
}

double diag_integral(const CoherenceMatrix& g) {
  std::vector<double> diag(g.grid.n_samples());
  for (int i = 0; i < g.grid.n_samples(); ++i) diag[i] = g.entries(i, i).real();
  return trapezoid(g.grid, diag);
}

}  // namespace

TEST_SUITE("interference") {
  TEST_CASE("normalization fixes the diagonal integral to one") {
    const CoherenceMatrix g = lambda_coherence(1.0, 1.0, 1.0);
    const CoherenceMatrix gt = normalize_coherence(g);
    CHECK(std::abs(diag_integral(gt) - 1.0) <= 1e-10);

    SUBCASE("idempotence") {
      const CoherenceMatrix gtt = normalize_coherence(gt);
      CHECK((gtt.entries - gt.entries).cwiseAbs().maxCoeff() <= 1e-12);
    }
    SUBCASE("scale invariance") {
      CoherenceMatrix scaled{g.grid, 3.0 * g.entries, 3.0 * g.photon_number};
      const CoherenceMatrix gs = normalize_coherence(scaled);
      CHECK((gs.entries - gt.entries).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }

  TEST_CASE("lossy two-level source still normalizes exactly") {
    const CoherenceMatrix g = coherence_of(build_two_level({0.0, 1.0, 1.0, 1.0}), kGridPure);
    CHECK(g.photon_number < 1.0);
    CHECK(std::abs(diag_integral(normalize_coherence(g)) - 1.0) <= 1e-10);
  }

  TEST_CASE("empty coherence is refused") {
    LambdaParams p;
    const CoherenceMatrix g = coherence_of(build_lambda(p, ZeroDrive{}));
    CHECK(g.is_empty());
    CHECK_THROWS_WITH_AS(normalize_coherence(g), "no photon emitted", std::runtime_error);
  }

  TEST_CASE("identical pure photons interfere perfectly") {
    const CoherenceMatrix gt =
        normalize_coherence(coherence_of(build_two_level({0.0, 1.0, 1.0, 0.0}), kGridPure));
    CHECK(std::abs(hom_correlation(gt, gt, 0.0)) <= 1e-3);
    CHECK(std::abs(hom_correlation(gt, gt, kGrid.t_end) - 0.5) <= 1e-3);
  }

  TEST_CASE("correlation envelope rises from zero toward one half") {
    for (bool lambda_type : {false, true}) {
      CoherenceMatrix gt = lambda_type
                               ? normalize_coherence(lambda_coherence(1.0, 1.0, 0.0))
                               : normalize_coherence(
                                     coherence_of(build_two_level({0.0, 1.0, 1.0, 0.0}), kGridPure));
      CHECK(hom_correlation(gt, gt, 0.0) <= 1e-3);
      // approaches 1/2 from either side once the wavepackets separate
      double prev_gap = 1.0;
      for (double tau : {10.0, 20.0, 30.0, 40.0}) {
        const double g2 = hom_correlation(gt, gt, tau);
        CHECK(g2 >= -1e-6);
        CHECK(g2 <= 1.0 + 1e-6);
        const double gap = std::abs(g2 - 0.5);
        CHECK(gap <= prev_gap + 1e-9);
        prev_gap = gap;
      }
      CHECK(prev_gap <= 1e-3);
    }
  }

  TEST_CASE("correlation rejects mismatched grids") {
    const CoherenceMatrix a = normalize_coherence(lambda_coherence(1.0, 1.0, 0.0));
    LambdaParams p;
    p.gamma = 1.0;
    CoherenceMatrix b = normalize_coherence(
        first_order_coherence(build_lambda(p, GaussianDrive{6.0, 15.0, 5.0}), {40.0, 400, 2}));
    CHECK_THROWS_AS(hom_correlation(a, b, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(hom_correlation(a, a, 0.013), std::invalid_argument);
  }

  TEST_CASE("identical sources reach unit visibility") {
    const CoherenceMatrix two =
        normalize_coherence(coherence_of(build_two_level({0.0, 1.0, 1.0, 0.0}), kGridPure));
    CHECK(std::abs(visibility(two, two).visibility - 1.0) <= 1e-3);

    const CoherenceMatrix lam = normalize_coherence(lambda_coherence(1.0, 1.0, 0.0));
    CHECK(std::abs(visibility(lam, lam).visibility - 1.0) <= 1e-3);
  }

  TEST_CASE("reference versus detuned-parameter source sits near one half") {
    const CoherenceMatrix ref = normalize_coherence(lambda_coherence(5.0, 1.25, 1.0));
    const CoherenceMatrix other = normalize_coherence(lambda_coherence(4.0, 4.5, 1.0));
    const HOMResult r = visibility(ref, other);
    CHECK(r.visibility >= 0.35);
    CHECK(r.visibility <= 0.65);
  }

  TEST_CASE("visibility is symmetric and bounded") {
    const CoherenceMatrix a = normalize_coherence(lambda_coherence(5.0, 1.25, 1.0));
    const CoherenceMatrix b = normalize_coherence(lambda_coherence(4.0, 4.5, 1.0));
    const CoherenceMatrix c = normalize_coherence(lambda_coherence(2.0, 0.8, 0.5));
    const CoherenceMatrix d =
        normalize_coherence(coherence_of(build_two_level({0.5, 1.0, 2.0, 0.3}), kGridPure));

    const CoherenceMatrix* kernels[] = {&a, &b, &c, &d};
    for (const CoherenceMatrix* x : kernels) {
      for (const CoherenceMatrix* y : kernels) {
        const double vxy = visibility(*x, *y).visibility;
        const double vyx = visibility(*y, *x).visibility;
        CHECK(std::abs(vxy - vyx) <= 1e-9);
        CHECK(vxy >= -1e-6);
        CHECK(vxy <= 1.0 + 1e-6);
      }
    }
  }

  TEST_CASE("self-interference dominates cross-interference") {
    const CoherenceMatrix a = normalize_coherence(lambda_coherence(5.0, 1.25, 1.0));
    const CoherenceMatrix b = normalize_coherence(lambda_coherence(4.0, 4.5, 1.0));
    const CoherenceMatrix c = normalize_coherence(lambda_coherence(1.0, 1.0, 1.0));
    const double vaa = visibility(a, a).visibility;
    CHECK(vaa >= visibility(a, b).visibility);
    CHECK(vaa >= visibility(a, c).visibility);
  }

  TEST_CASE("numeric limit cross-check for fully decayed photons") {
    const CoherenceMatrix gt =
        normalize_coherence(coherence_of(build_two_level({0.0, 1.0, 1.0, 0.0}), kGridPure));
    // flux beyond T/2 is below 1e-6 for this system
    const HOMResult r = visibility(gt, gt);
    CHECK(std::abs(r.g2_limit_numeric - 0.5) <= 1e-3);
    CHECK(r.g2_limit == 0.5);
  }

  TEST_CASE("tau sweep includes endpoints and zero") {
    const CoherenceMatrix gt = normalize_coherence(lambda_coherence(1.0, 1.0, 0.0));
    const HOMResult r = visibility(gt, gt, 100);
    REQUIRE(r.tau_values.size() == 17);
    CHECK(r.tau_values.front() == doctest::Approx(-40.0));
    CHECK(r.tau_values.back() == doctest::Approx(40.0));
    CHECK(r.tau_values[8] == doctest::Approx(0.0));
    CHECK(r.g2_values[8] == doctest::Approx(r.g2_zero));
    CHECK_THROWS_AS(visibility(gt, gt, 7), std::invalid_argument);
  }
}
