#include <doctest.h>

#include <cmath>

#include "cavityhom/models.hpp"

using namespace cavityhom;

namespace {

int count_nonzero(const Operator& a, double tol = 0.0) {
  int n = 0;
  for (int j = 0; j < a.cols(); ++j) {
    for (int i = 0; i < a.rows(); ++i) {
      if (std::abs(a(i, j)) > tol) ++n;
    }
  }
  return n;
}

}  // namespace

TEST_SUITE("models") {
  TEST_CASE("resonant two-level Hamiltonian has only the coupling entries") {
    const ModelSpec m = build_two_level({0.0, 1.0, 1.0, 0.0});
    const Operator h = m.hamiltonian(0.0);
    CHECK(count_nonzero(h) == 2);
    CHECK(h(0, 1) == Complex(1.0, 0.0));
    CHECK(h(1, 0) == Complex(1.0, 0.0));
  }

  TEST_CASE("two-level baseline collapse set") {
    const ModelSpec m = build_two_level({0.0, 1.0, 1.0, 1.0});
    REQUIRE(m.collapse_ops.size() == 2);
    for (const Operator& c : m.collapse_ops) {
      CHECK(count_nonzero(c) == 1);
      CHECK(c.cwiseAbs().maxCoeff() == doctest::Approx(1.0));
    }
  }

  TEST_CASE("two-level initial state is the excited state") {
    const ModelSpec m = build_two_level({0.0, 1.0, 1.0, 0.0});
    CHECK(m.initial_state.population(0) == doctest::Approx(1.0));
    CHECK(m.dim == 3);
    CHECK(m.kappa == 1.0);
  }

  TEST_CASE("two-level rejects invalid parameters") {
    CHECK_THROWS_AS(build_two_level({0.0, 0.0, 1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(build_two_level({0.0, 1.0, -1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(build_two_level({0.0, 1.0, 1.0, -0.5}), std::invalid_argument);
  }

  TEST_CASE("lambda Hamiltonian structure and drive phases") {
    LambdaParams p;
    p.delta_c = 0.7;
    p.delta_d = 0.3;
    p.g = 2.0;
    p.kappa = 1.0;
    const DriveField drive = GaussianDrive{6.0, 15.0, 5.0};
    const ModelSpec m = build_lambda(p, drive);
    CHECK(m.dim == 4);

    for (double t : {0.0, 3.7, 15.0, 33.3}) {
      const Operator h = m.hamiltonian(t);
      CHECK(hermiticity_defect(h) <= 1e-10);
      CHECK(h(2, 2).real() == doctest::Approx(0.7));
      CHECK(h(2, 1) == Complex(2.0, 0.0));
      const double omega = drive_eval(drive, t);
      const Complex expected = omega * std::exp(Complex(0.0, -0.3 * t));
      CHECK(std::abs(h(1, 0) - expected) <= 1e-12);
    }
  }

  TEST_CASE("resonant drive leaves the Hamiltonian real") {
    LambdaParams p;
    const DriveField drive = GaussianDrive{6.0, 15.0, 5.0};
    const ModelSpec m = build_lambda(p, drive);
    for (double t : {1.0, 12.5, 19.0}) {
      const Operator h = m.hamiltonian(t);
      CHECK(h(1, 0).imag() == doctest::Approx(0.0));
      CHECK(h(1, 0).real() == doctest::Approx(drive_eval(drive, t)));
    }
  }

  TEST_CASE("lambda collapse channels and rates") {
    LambdaParams p;
    p.gamma = 0.9;
    const ModelSpec m = build_lambda(p, ZeroDrive{});
    REQUIRE(m.collapse_ops.size() == 3);
    for (const Operator& c : m.collapse_ops) CHECK(count_nonzero(c) == 1);
    // cavity sqrt(kappa), gamma12 = 5/9 gamma to |u,0>, gamma32 = 4/9 gamma to |g,0>
    CHECK(m.collapse_ops[0](3, 2).real() == doctest::Approx(1.0));
    CHECK(m.collapse_ops[1](0, 1).real() == doctest::Approx(std::sqrt(0.5)));
    CHECK(m.collapse_ops[2](3, 1).real() == doctest::Approx(std::sqrt(0.4)));
  }

  TEST_CASE("gamma32_target g1 routes spontaneous emission into the cavity") {
    LambdaParams p;
    p.gamma = 0.9;
    p.gamma32_target = Gamma32Target::g1;
    const ModelSpec m = build_lambda(p, ZeroDrive{});
    REQUIRE(m.collapse_ops.size() == 3);
    CHECK(m.collapse_ops[2](2, 1).real() == doctest::Approx(std::sqrt(0.4)));
  }

  TEST_CASE("lambda rejects inconsistent gamma split") {
    LambdaParams p;
    p.gamma12_fraction = 0.6;
    p.gamma32_fraction = 0.5;
    CHECK_THROWS_AS(build_lambda(p, ZeroDrive{}), std::invalid_argument);
  }

  TEST_CASE("drive_eval matches the closed forms") {
    const DriveField gauss = GaussianDrive{6.0, 15.0, 5.0};
    CHECK(drive_eval(gauss, 15.0) == doctest::Approx(6.0));
    CHECK(drive_eval(gauss, 20.0) == doctest::Approx(6.0 * std::exp(-1.0)));

    const DriveField pwl = PiecewiseLinearDrive{{0.0, 2.0}, 1.0};
    CHECK(drive_eval(pwl, 0.5) == doctest::Approx(1.0));
    CHECK(drive_eval(pwl, -3.0) == doctest::Approx(0.0));
    CHECK(drive_eval(pwl, 7.0) == doctest::Approx(2.0));

    CHECK(drive_eval(ZeroDrive{}, 12.0) == 0.0);
  }

  TEST_CASE("drive validation") {
    CHECK_THROWS_AS(validate_drive(GaussianDrive{1.0, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate_drive(PiecewiseLinearDrive{{1.0}, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate_drive(PiecewiseLinearDrive{{0.0, 1.0}, -1.0}),
                    std::invalid_argument);
  }

  TEST_CASE("collapse operators never map out of the basis") {
    const ModelSpec two = build_two_level({0.3, 1.5, 2.0, 0.7});
    LambdaParams p;
    p.gamma = 1.0;
    const ModelSpec lam = build_lambda(p, GaussianDrive{6.0, 15.0, 5.0});
    for (const ModelSpec* m : {&two, &lam}) {
      for (const Operator& c : m->collapse_ops) CHECK(count_nonzero(c) == 1);
    }
  }
}
