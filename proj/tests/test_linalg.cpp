#include <doctest.h>

#include <random>

#include "cavityhom/linalg.hpp"

using namespace cavityhom;

namespace {

Operator random_operator(int dim, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Operator a(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) a(i, j) = Complex(dist(rng), dist(rng));
  }
  return a;
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("transition_op places a single unit entry") {
    const Operator p = transition_op(0, 0, 2);
    CHECK(p(0, 0) == Complex(1.0, 0.0));
    CHECK(p(0, 1) == Complex(0.0, 0.0));
    CHECK(p(1, 0) == Complex(0.0, 0.0));
    CHECK(p(1, 1) == Complex(0.0, 0.0));
  }

  TEST_CASE("transition_op maps basis vectors") {
    const Operator op = transition_op(0, 1, 2);
    Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(2);
    e1(1) = 1.0;
    const Eigen::VectorXcd mapped = op * e1;
    CHECK(mapped(0) == Complex(1.0, 0.0));
    CHECK(mapped(1) == Complex(0.0, 0.0));
  }

  TEST_CASE("transition_op adjoint swaps indices (all pairs, dim <= 4)") {
    for (int dim = 1; dim <= 4; ++dim) {
      for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
          const Operator lhs = dagger(transition_op(i, j, dim));
          const Operator rhs = transition_op(j, i, dim);
          CHECK((lhs - rhs).cwiseAbs().maxCoeff() == 0.0);
        }
      }
    }
  }

  TEST_CASE("transition_op rejects out-of-range indices") {
    CHECK_THROWS_AS(transition_op(2, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(transition_op(0, -1, 2), std::invalid_argument);
    CHECK_THROWS_AS(transition_op(0, 0, 0), std::invalid_argument);
  }

  TEST_CASE("dagger of the identity is the identity") {
    const Operator id = Operator::Identity(3, 3);
    CHECK((dagger(id) - id).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("dagger is an involution on random matrices") {
    std::mt19937 rng(7);
    for (int dim = 1; dim <= 6; ++dim) {
      const Operator a = random_operator(dim, rng);
      CHECK((dagger(dagger(a)) - a).cwiseAbs().maxCoeff() == 0.0);
      // direct entrywise conjugate transpose
      const Operator d = dagger(a);
      for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) CHECK(d(i, j) == std::conj(a(j, i)));
      }
    }
  }

  TEST_CASE("dagger of |0><1| is |1><0|") {
    CHECK((dagger(transition_op(0, 1, 2)) - transition_op(1, 0, 2)).cwiseAbs().maxCoeff() ==
          0.0);
  }

  TEST_CASE("commutator of an operator with itself vanishes") {
    std::mt19937 rng(11);
    const Operator a = random_operator(4, rng);
    CHECK(commutator(a, a).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("commutator of diag(1,0) with |0><1|") {
    const Operator proj = transition_op(0, 0, 2);
    const Operator hop = transition_op(0, 1, 2);
    // brute-force 2x2 products: diag(1,0)|0><1| = |0><1|, |0><1|diag(1,0) = 0
    CHECK((commutator(proj, hop) - hop).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("identity commutes with everything") {
    std::mt19937 rng(13);
    const Operator b = random_operator(5, rng);
    const Operator id = Operator::Identity(5, 5);
    CHECK(commutator(id, b).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("commutator rejects mismatched dimensions") {
    CHECK_THROWS_AS(commutator(Operator::Identity(2, 2), Operator::Identity(3, 3)),
                    std::invalid_argument);
  }

  TEST_CASE("matrix multiplication associativity within 1e-12") {
    std::mt19937 rng(17);
    for (int dim = 2; dim <= 6; ++dim) {
      const Operator a = random_operator(dim, rng);
      const Operator b = random_operator(dim, rng);
      const Operator c = random_operator(dim, rng);
      const Operator lhs = (a * b) * c;
      const Operator rhs = a * (b * c);
      const double scale = lhs.cwiseAbs().maxCoeff();
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, scale));
    }
  }

  TEST_CASE("density matrix accepts valid states") {
    Operator rho = Operator::Zero(2, 2);
    rho(0, 0) = 0.25;
    rho(1, 1) = 0.75;
    const DensityMatrix dm(rho);
    CHECK(dm.population(1) == doctest::Approx(0.75));
  }

  TEST_CASE("density matrix rejects invariant violations") {
    Operator not_hermitian = Operator::Zero(2, 2);
    not_hermitian(0, 0) = 1.0;
    not_hermitian(0, 1) = Complex(0.0, 1e-3);
    CHECK_THROWS_AS(DensityMatrix{not_hermitian}, std::invalid_argument);

    Operator wrong_trace = Operator::Identity(2, 2);
    CHECK_THROWS_AS(DensityMatrix{wrong_trace}, std::invalid_argument);

    Operator negative = Operator::Zero(2, 2);
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix{negative}, std::invalid_argument);
  }

  TEST_CASE("state vector norm bound") {
    Eigen::VectorXcd ok(2);
    ok << Complex(0.6, 0.0), Complex(0.0, 0.5);
    CHECK_NOTHROW(StateVector{ok});

    Eigen::VectorXcd too_big(2);
    too_big << Complex(1.0, 0.0), Complex(0.5, 0.0);
    CHECK_THROWS_AS(StateVector{too_big}, std::invalid_argument);
  }
}
