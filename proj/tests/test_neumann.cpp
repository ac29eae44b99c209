#include <cmath>

#include "doctest.h"

#include "helpers.hpp"

#include "qem/neumann.hpp"

using namespace qem;

TEST_SUITE_BEGIN("neumann");

TEST_CASE("coefficient values for small orders") {
  CHECK(coefficients(0) == std::vector<long long>{1});
  CHECK(coefficients(1) == std::vector<long long>{2, -1});
  CHECK(coefficients(2) == std::vector<long long>{3, -3, 1});
  CHECK_THROWS_AS(coefficients(31), ParameterError);
  CHECK_THROWS_AS(coefficients(-1), ParameterError);
}

TEST_CASE("coefficients alternate in sign and sum to one") {
  for (int K = 0; K <= 20; ++K) {
    const auto c = coefficients(K);
    REQUIRE(c.size() == static_cast<std::size_t>(K + 1));
    long long sum = 0;
    for (int k = 0; k <= K; ++k) {
      CHECK((k % 2 == 0 ? c[k] > 0 : c[k] < 0));
      sum += c[k];
    }
    CHECK(sum == 1);
  }
}

TEST_CASE("squared coefficients sum to the central-binomial cap") {
  for (int K = 0; K <= 15; ++K) {
    const auto c = coefficients(K);
    long long sumsq = 0;
    for (long long v : c) sumsq += v * v;
    CHECK(sumsq == delta_cap(K));
  }
  CHECK(delta_cap(1) == 5);
  CHECK(delta_cap(2) == 19);
}

TEST_CASE("combine") {
  const auto c2 = coefficients(2);
  // Constant series: the coefficients sum to 1.
  const std::vector<double> constant{0.37, 0.37, 0.37};
  CHECK(combine(constant, c2) == doctest::Approx(0.37).epsilon(1e-15));

  // Geometric series (1-p)^k collapses to 1 - p^(K+1).
  const double p = 0.2;
  std::vector<double> geometric;
  for (int k = 1; k <= 3; ++k) geometric.push_back(std::pow(1.0 - p, k));
  CHECK(combine(geometric, c2) == doctest::Approx(1.0 - std::pow(p, 3)).epsilon(1e-14));
  CHECK(combine(geometric, c2) == doctest::Approx(0.992).epsilon(1e-14));

  const std::vector<double> ones{1.0, 1.0, 1.0};
  CHECK(combine(ones, c2) == 1.0);

  CHECK_THROWS_AS(combine(ones, coefficients(1)), StructuralError);
}

TEST_CASE("combine is linear") {
  SeededStream stream(19, "test-combine", 0, 0);
  const auto c = coefficients(4);
  std::vector<double> u(5), v(5), w(5);
  for (int i = 0; i < 5; ++i) {
    u[i] = stream.next_unit();
    v[i] = stream.next_unit();
  }
  const double a = 1.7, b = -0.3;
  for (int i = 0; i < 5; ++i) w[i] = a * u[i] + b * v[i];
  CHECK(combine(w, c) ==
        doctest::Approx(a * combine(u, c) + b * combine(v, c)).epsilon(1e-12));
}

TEST_CASE("optimal truncation orders") {
  CHECK(optimal_K_gem(0.01, 0.1, 1.0) == 1);
  CHECK(optimal_K_gem(0.01, 0.657, 1.0) == 10);
  CHECK(optimal_K_gem(0.01, 0.2, 1.0) == 2);
  CHECK(optimal_K_gem(0.01, 0.0, 1.0) == 0);
  CHECK_THROWS_AS(optimal_K_gem(0.01, 1.0, 1.0), MethodInapplicableError);

  CHECK(optimal_K_mem(0.01, 0.3) == 3);
  CHECK(optimal_K_mem(0.01, 0.657) == 10);
  CHECK(optimal_K_mem(0.01, 1e-12) == 0);
  CHECK_THROWS_AS(optimal_K_mem(0.01, 1.2), MethodInapplicableError);
  CHECK_THROWS_AS(optimal_K_mem(0.0, 0.3), ParameterError);
}

TEST_CASE("optimal K is monotone in epsilon and xi") {
  double previous = 1e9;
  for (double eps = 0.001; eps < 0.5; eps *= 2.0) {
    const double k = optimal_K_mem(eps, 0.4);
    CHECK(k <= previous);
    previous = k;
  }
  previous = -1;
  for (int i = 1; i <= 19; ++i) {
    const double k = optimal_K_mem(0.01, 0.05 * i);
    CHECK(k >= previous);
    previous = k;
  }
}

TEST_CASE("per-term shot budgets") {
  CHECK(shots_per_term(1, 0.01, 0.01) == 1528772);
  CHECK(shots_per_term(0, 0.1, 0.05) == 1065);
  CHECK_THROWS_AS(shots_per_term(31, 0.01, 0.01), ParameterError);
  CHECK_THROWS_AS(shots_per_term(1, 0.0, 0.01), ParameterError);
}

TEST_CASE("remainder bounds") {
  CHECK(remainder_bound_gem(0.5, 1.0, 3) == doctest::Approx(0.0625).epsilon(1e-15));
  CHECK(remainder_bound_mem(0.657, 10) <= 0.01);
  CHECK(remainder_bound_gem(0.5, 1.0, 4) ==
        doctest::Approx(0.5 * remainder_bound_gem(0.5, 1.0, 3)).epsilon(1e-14));
  for (int K = 0; K < 6; ++K)
    CHECK(remainder_bound_mem(0.7, K + 1) < remainder_bound_mem(0.7, K));
}

TEST_CASE("series identity residual vanishes") {
  CHECK(matrix_identity_residual(RMatrix::Identity(5, 5), 3) == 0.0);
  CHECK(matrix_identity_residual(RMatrix::Zero(4, 4), 2) == 0.0);

  SeededStream stream(29, "test-residual", 0, 0);
  const RMatrix a = test::random_stochastic_matrix(8, stream);
  CHECK(matrix_identity_residual(a, 4) < 1e-10);

  // Independent telescoping route: sum_{k=0..K} (I-A)^k A = I - (I-A)^{K+1}.
  const int K = 4;
  const RMatrix identity = RMatrix::Identity(8, 8);
  RMatrix sum = RMatrix::Zero(8, 8);
  RMatrix power = identity;
  for (int k = 0; k <= K; ++k) {
    sum += power * a;
    power = power * (identity - a);
  }
  CHECK((sum + power - identity).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("residual stays small on random stochastic matrices") {
  for (int trial = 0; trial < 100; ++trial) {
    SeededStream stream(41, "test-residual-grid", 0, trial);
    const Eigen::Index dim = 4 + (trial % 13);
    const RMatrix a = test::random_stochastic_matrix(dim, stream);
    for (int K = 0; K <= 6; ++K) CHECK(matrix_identity_residual(a, K) < 1e-10);
  }
}

TEST_CASE("plan serialization carries the schedule fields") {
  const TruncationPlan plan = make_plan_mem(0.01, 0.01, 0.3);
  CHECK(plan.K == 3);
  CHECK(plan.delta_cap == 69);
  CHECK(plan.overhead() == doctest::Approx(64.0));
  const auto j = plan.to_json();
  for (const char* key : {"K", "coeffs", "delta_cap", "shots_per_term", "epsilon", "delta", "xi"})
    CHECK(j.contains(key));
  CHECK(j["K"] == 3);
  CHECK(j["coeffs"].size() == 4);
}

TEST_SUITE_END();
