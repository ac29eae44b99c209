#include "qem/mem.hpp"

#include <cmath>

namespace qem {

namespace {

constexpr const char* kStreamPurpose = "mem";

void check_config(const MemConfig& cfg) {
  const Eigen::Index d = Eigen::Index(1) << cfg.n;
  if (cfg.n < 1 || cfg.n > kMaxDiagQubits)
    throw ResourceLimitError("mem: qubit count must be in [1, " +
                             std::to_string(kMaxDiagQubits) + "]");
  if (cfg.true_dist.size() != d) throw StructuralError("mem: state vector must have length 2^n");
  if (cfg.observable.dim() != d) throw StructuralError("mem: observable dimension mismatch");
  if (cfg.error.dim() != d) throw StructuralError("mem: error matrix dimension mismatch");
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0) || !(cfg.delta > 0.0 && cfg.delta < 1.0))
    throw ParameterError("mem: epsilon and delta must lie in (0, 1)");
  const double mass = cfg.true_dist.sum();
  if (cfg.true_dist.minCoeff() < -1e-12 || std::abs(mass - 1.0) > 1e-9)
    throw StructuralError("mem: state vector is not a probability distribution");
}

RVector clipped(const RVector& v) {
  RVector out = v;
  for (Eigen::Index i = 0; i < out.size(); ++i)
    if (out(i) < 0.0) out(i) = 0.0;
  return out;
}

}  // namespace

MemConfig MemConfig::from_state(const DensityMatrix& state, DiagonalObservable obs,
                                ErrorMatrix error) {
  MemConfig cfg{state.qubits(), state.diagonal(), std::move(obs), std::move(error)};
  return cfg;
}

std::uint64_t sequential_measure(const ErrorMatrix& a, const RVector& true_dist, int k,
                                 SeededStream& stream) {
  if (k < 1) throw ParameterError("sequential_measure: k must be >= 1");
  if (a.dim() != true_dist.size())
    throw StructuralError("sequential_measure: dimension mismatch");
  std::uint64_t x = categorical_sample(true_dist, stream);
  for (int step = 0; step < k; ++step)
    x = categorical_sample(a.entries().col(static_cast<Eigen::Index>(x)), stream);
  return x;
}

SequentialMeasurer::SequentialMeasurer(const ErrorMatrix& a, const RVector& true_dist)
    : initial_(true_dist) {
  if (a.dim() != true_dist.size())
    throw StructuralError("SequentialMeasurer: dimension mismatch");
  columns_.reserve(static_cast<std::size_t>(a.dim()));
  for (Eigen::Index j = 0; j < a.dim(); ++j) columns_.emplace_back(a.entries().col(j));
}

std::uint64_t SequentialMeasurer::draw(int k, SeededStream& stream) const {
  if (k < 1) throw ParameterError("SequentialMeasurer: k must be >= 1");
  std::uint64_t x = initial_.draw(stream);
  for (int step = 0; step < k; ++step) x = columns_[static_cast<std::size_t>(x)].draw(stream);
  return x;
}

std::vector<double> exact_series_mem(const MemConfig& cfg, int K) {
  check_config(cfg);
  if (K < 0) throw ParameterError("mem: truncation order must be >= 0");
  std::vector<double> series;
  series.reserve(K + 1);
  RVector v = cfg.true_dist;
  for (int k = 1; k <= K + 1; ++k) {
    v = cfg.error.entries() * v;
    series.push_back(cfg.observable.diag().dot(v));
  }
  return series;
}

EstimateSummary sample_eta_mem(const MemConfig& cfg, int k, long long shots) {
  check_config(cfg);
  if (k < 1) throw ParameterError("mem: order k must be >= 1");
  if (shots < 1) throw ParameterError("mem: shot count must be >= 1");
  RVector v = cfg.true_dist;
  for (int step = 0; step < k; ++step) v = cfg.error.entries() * v;
  return sample_diagonal_mean(clipped(v), cfg.observable.diag(), shots, cfg.seed, kStreamPurpose,
                              static_cast<std::uint64_t>(k), cfg.delta, cfg.threads);
}

MitigationReport mitigate_mem(const MemConfig& cfg) {
  check_config(cfg);
  const double xi = noise_resistance_meas(cfg.error);
  if (xi >= 1.0)
    throw MethodInapplicableError("mem: noise resistance xi_m = " + std::to_string(xi) +
                                  " violates the xi_m < 1 requirement; the measurement device "
                                  "is too noisy to be applicable");

  MitigationReport report;
  const int K = cfg.k_override ? *cfg.k_override : optimal_K_mem(cfg.epsilon, xi);
  if (K < 0 || K > kMaxTruncationOrder)
    throw ParameterError("mem: truncation order override out of range");
  report.plan.K = K;
  report.plan.coeffs = coefficients(K);
  report.plan.delta_cap = delta_cap(K);
  report.plan.shots_per_term =
      cfg.m_override ? *cfg.m_override : shots_per_term(K, cfg.epsilon, cfg.delta);
  if (report.plan.shots_per_term < 1) throw ParameterError("mem: shot override must be >= 1");
  report.plan.epsilon = cfg.epsilon;
  report.plan.delta = cfg.delta;
  report.plan.xi = xi;
  report.guarantee = (cfg.k_override || cfg.m_override) ? "none" : "hoeffding";

  const std::vector<double> exact = exact_series_mem(cfg, K);

  std::vector<double> sampled(K + 1);
  report.per_order.resize(K + 1);
  RVector v = cfg.true_dist;
  for (int k = 1; k <= K + 1; ++k) {
    v = cfg.error.entries() * v;
    const EstimateSummary summary =
        sample_diagonal_mean(clipped(v), cfg.observable.diag(), report.plan.shots_per_term,
                             cfg.seed, kStreamPurpose, static_cast<std::uint64_t>(k), cfg.delta,
                             cfg.threads);
    sampled[k - 1] = summary.mean;
    report.per_order[k - 1] = {k, exact[k - 1], summary.mean, summary.std_error};
  }

  report.combined_exact = combine(exact, report.plan.coeffs);
  report.combined_sampled = combine(sampled, report.plan.coeffs);
  report.ideal = cfg.observable.diag().dot(cfg.true_dist);
  report.remainder_bound = remainder_bound_mem(xi, K);
  return report;
}

}  // namespace qem
