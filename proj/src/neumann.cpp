#include "qem/neumann.hpp"

#include <cmath>

#include "qem/errors.hpp"

namespace qem {

namespace {

void check_order(int K) {
  if (K < 0) throw ParameterError("truncation order must be >= 0");
  if (K > kMaxTruncationOrder)
    throw ParameterError("truncation order " + std::to_string(K) +
                         " exceeds the exact-arithmetic cap of " +
                         std::to_string(kMaxTruncationOrder));
}

void check_probability(double value, const char* what) {
  if (!(value > 0.0 && value < 1.0))
    throw ParameterError(std::string(what) + " must lie in (0, 1), got " + std::to_string(value));
}

// Row `row` of Pascal's triangle by integer additions; every entry of
// rows up to 62 fits in a signed 64-bit integer.
std::vector<long long> pascal_row(int row) {
  std::vector<long long> r{1};
  for (int i = 1; i <= row; ++i) {
    std::vector<long long> next(i + 1, 1);
    for (int j = 1; j < i; ++j) next[j] = r[j - 1] + r[j];
    r = std::move(next);
  }
  return r;
}

// Guards against upward rounding noise when the ratio lands exactly on
// an integer boundary.
int ceil_floor_zero(double x) {
  const double k = std::ceil(x - 1e-9);
  return k < 0.0 ? 0 : static_cast<int>(k);
}

}  // namespace

std::vector<long long> coefficients(int K) {
  check_order(K);
  const auto row = pascal_row(K + 1);  // binom(K+1, .)
  std::vector<long long> coeffs(K + 1);
  for (int k = 0; k <= K; ++k) coeffs[k] = (k % 2 == 0) ? row[k + 1] : -row[k + 1];
  return coeffs;
}

long long delta_cap(int K) {
  check_order(K);
  return pascal_row(2 * K + 2)[K + 1] - 1;
}

double combine(std::span<const double> values, std::span<const long long> coeffs) {
  if (values.size() != coeffs.size())
    throw StructuralError("combine: " + std::to_string(values.size()) + " values vs " +
                          std::to_string(coeffs.size()) + " coefficients");
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    sum += static_cast<double>(coeffs[i]) * values[i];
  return sum;
}

int optimal_K_gem(double epsilon, double xi_g, double obs_inf_norm) {
  check_probability(epsilon, "epsilon");
  if (obs_inf_norm < 0.0) throw ParameterError("observable norm must be >= 0");
  if (xi_g >= 1.0)
    throw MethodInapplicableError("gate noise resistance xi_g = " + std::to_string(xi_g) +
                                  " violates the xi_g < 1 requirement; the method fails");
  if (xi_g <= 0.0 || obs_inf_norm == 0.0) return 0;
  return ceil_floor_zero((std::log(epsilon) - std::log(obs_inf_norm)) / std::log(xi_g) - 1.0);
}

int optimal_K_mem(double epsilon, double xi_m) {
  check_probability(epsilon, "epsilon");
  if (xi_m >= 1.0)
    throw MethodInapplicableError("measurement noise resistance xi_m = " + std::to_string(xi_m) +
                                  " violates the xi_m < 1 requirement; the device is too noisy "
                                  "to be applicable");
  if (xi_m <= 0.0) return 0;
  return ceil_floor_zero(std::log(epsilon) / std::log(xi_m) - 1.0);
}

long long shots_per_term(int K, double epsilon, double delta) {
  check_order(K);
  check_probability(epsilon, "epsilon");
  check_probability(delta, "delta");
  const long double cap = static_cast<long double>(delta_cap(K));
  const long double raw = 2.0L * (K + 1) * cap * std::log2(2.0L / delta) /
                          (static_cast<long double>(epsilon) * epsilon);
  if (raw >= 9.0e18L) throw ResourceLimitError("shots_per_term: budget overflows 64-bit range");
  const long long m = static_cast<long long>(std::ceil(raw));
  return m < 1 ? 1 : m;
}

double remainder_bound_gem(double xi_g, double obs_inf_norm, int K) {
  if (xi_g >= 1.0)
    throw MethodInapplicableError("remainder bound requires xi_g < 1");
  return obs_inf_norm * std::pow(xi_g, K + 1);
}

double remainder_bound_mem(double xi_m, int K) {
  if (xi_m >= 1.0)
    throw MethodInapplicableError("remainder bound requires xi_m < 1");
  return std::pow(xi_m, K + 1);
}

double matrix_identity_residual(const RMatrix& a, int K) {
  check_order(K);
  if (a.rows() != a.cols()) throw StructuralError("matrix_identity_residual: matrix not square");
  const Eigen::Index d = a.rows();
  const RMatrix identity = RMatrix::Identity(d, d);
  const auto coeffs = coefficients(K);

  RMatrix series = RMatrix::Zero(d, d);
  RMatrix power = identity;
  for (int k = 1; k <= K + 1; ++k) {
    power = power * a;
    series += static_cast<double>(coeffs[k - 1]) * power;
  }
  RMatrix tail = identity;
  const RMatrix complement = identity - a;
  for (int k = 0; k <= K; ++k) tail = tail * complement;

  return (identity - series - tail).cwiseAbs().maxCoeff();
}

double TruncationPlan::overhead() const { return std::pow(4.0, K); }

nlohmann::json TruncationPlan::to_json() const {
  return nlohmann::json{{"K", K},
                        {"coeffs", coeffs},
                        {"delta_cap", delta_cap},
                        {"shots_per_term", shots_per_term},
                        {"epsilon", epsilon},
                        {"delta", delta},
                        {"xi", xi}};
}

namespace {

TruncationPlan finish_plan(int K, double epsilon, double delta, double xi) {
  TruncationPlan plan;
  plan.K = K;
  plan.coeffs = coefficients(K);
  plan.delta_cap = qem::delta_cap(K);
  plan.shots_per_term = qem::shots_per_term(K, epsilon, delta);
  plan.epsilon = epsilon;
  plan.delta = delta;
  plan.xi = xi;
  return plan;
}

}  // namespace

TruncationPlan make_plan_gem(double epsilon, double delta, double xi_g, double obs_inf_norm) {
  return finish_plan(optimal_K_gem(epsilon, xi_g, obs_inf_norm), epsilon, delta, xi_g);
}

TruncationPlan make_plan_mem(double epsilon, double delta, double xi_m) {
  return finish_plan(optimal_K_mem(epsilon, xi_m), epsilon, delta, xi_m);
}

}  // namespace qem
