#pragma once

#include <span>
#include <vector>

#include "qem/linalg.hpp"

#include "json.hpp"

namespace qem {

//=========================================================================
// Truncated-series mathematics: coefficients, optimal order, remainder
// bounds, and Hoeffding sample budgets.
//=========================================================================

// Coefficients stay exact in 64-bit integers up to this order.
inline constexpr int kMaxTruncationOrder = 30;

// Signed binomial coefficients c_K(k) = (-1)^k binom(K+1, k+1) for
// k = 0..K. They alternate in sign starting positive and sum to 1.
std::vector<long long> coefficients(int K);

// binom(2K+2, K+1) - 1, which also equals the sum of squared
// coefficients of order K.
long long delta_cap(int K);

// sum_k coeffs[k] * values[k]; the estimator combination step.
double combine(std::span<const double> values, std::span<const long long> coeffs);

// Smallest K with norm * xi^(K+1) <= epsilon, floored at 0. A vanishing
// noise resistance gives K = 0; xi >= 1 is rejected because the series
// does not converge.
int optimal_K_gem(double epsilon, double xi_g, double obs_inf_norm);
int optimal_K_mem(double epsilon, double xi_m);

// Per-term shot budget: ceil(2 (K+1) delta_cap(K) log2(2/delta) / eps^2).
long long shots_per_term(int K, double epsilon, double delta);

double remainder_bound_gem(double xi_g, double obs_inf_norm, int K);
double remainder_bound_mem(double xi_m, int K);

// Max-entry norm of I - sum_{k=1}^{K+1} c_K(k-1) A^k - (I-A)^{K+1}.
// The expression is a polynomial identity, so the result is numerical
// noise for any square A of moderate size.
double matrix_identity_residual(const RMatrix& a, int K);

// The full mitigation schedule for one pipeline run.
struct TruncationPlan {
  int K = 0;
  std::vector<long long> coeffs;
  long long delta_cap = 0;
  long long shots_per_term = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  double xi = 0.0;

  // Shot overhead relative to the unmitigated estimator.
  double overhead() const;

  nlohmann::json to_json() const;
};

TruncationPlan make_plan_gem(double epsilon, double delta, double xi_g, double obs_inf_norm);
TruncationPlan make_plan_mem(double epsilon, double delta, double xi_m);

}  // namespace qem
