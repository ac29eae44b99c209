#include "qem/gem.hpp"

#include <cmath>

namespace qem {

namespace {

constexpr const char* kStreamPurpose = "gem";

void check_config(const GemConfig& cfg) {
  if (cfg.state.qubits() != cfg.observable.qubits())
    throw StructuralError("gem: state and observable qubit counts differ");
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0) || !(cfg.delta > 0.0 && cfg.delta < 1.0))
    throw ParameterError("gem: epsilon and delta must lie in (0, 1)");
  if (cfg.state.qubits() > kMaxPtmQubits)
    throw ResourceLimitError("gem: exact simulation is capped at " +
                             std::to_string(kMaxPtmQubits) + " qubits");
}

// Outcome distribution after k channel applications, reused across the
// k = 1..K+1 loop by evolving the state once per step.
RVector outcome_distribution(const DensityMatrix& rho) {
  RVector probs = rho.diagonal();
  for (Eigen::Index i = 0; i < probs.size(); ++i)
    if (probs(i) < 0.0) probs(i) = 0.0;
  return probs;
}

}  // namespace

std::vector<double> exact_series_gem(const GemConfig& cfg, int K) {
  check_config(cfg);
  if (K < 0) throw ParameterError("gem: truncation order must be >= 0");
  const int n = cfg.state.qubits();

  const PauliTransferMatrix ptm = noise_ptm(cfg.noise, n);
  const RRowVector obs_row = observable_vec(cfg.observable);
  const RVector state_col = state_vec(cfg.state);

  std::vector<double> series;
  series.reserve(K + 1);
  RRowVector row = obs_row;
  DensityMatrix evolved = cfg.state;
  for (int k = 1; k <= K + 1; ++k) {
    row = row * ptm.entries();
    const double via_ptm = row.dot(state_col);
    evolved = apply_noise(cfg.noise, evolved, 1);
    const double via_kraus = exact_expectation(cfg.observable, evolved);
    if (std::abs(via_ptm - via_kraus) > 1e-9)
      throw std::logic_error("gem: transfer-matrix and Kraus evolutions disagree at order " +
                             std::to_string(k));
    series.push_back(via_ptm);
  }
  return series;
}

EstimateSummary sample_eta_gem(const GemConfig& cfg, int k, long long shots) {
  check_config(cfg);
  if (k < 1) throw ParameterError("gem: order k must be >= 1");
  if (shots < 1) throw ParameterError("gem: shot count must be >= 1");
  const RVector probs = outcome_distribution(apply_noise(cfg.noise, cfg.state, k));
  return sample_diagonal_mean(probs, cfg.observable.diag(), shots, cfg.seed, kStreamPurpose,
                              static_cast<std::uint64_t>(k), cfg.delta, cfg.threads);
}

MitigationReport mitigate_gem(const GemConfig& cfg) {
  check_config(cfg);
  const int n = cfg.state.qubits();

  const PauliTransferMatrix ptm = noise_ptm(cfg.noise, n);
  const double xi = noise_resistance_gate(ptm);
  if (xi >= 1.0)
    throw MethodInapplicableError("gem: noise resistance xi_g = " + std::to_string(xi) +
                                  " violates the xi_g < 1 requirement");
  const double norm = observable_inf_norm(cfg.observable);

  MitigationReport report;
  const int K = cfg.k_override ? *cfg.k_override : optimal_K_gem(cfg.epsilon, xi, norm);
  if (K < 0 || K > kMaxTruncationOrder)
    throw ParameterError("gem: truncation order override out of range");
  report.plan.K = K;
  report.plan.coeffs = coefficients(K);
  report.plan.delta_cap = delta_cap(K);
  report.plan.shots_per_term =
      cfg.m_override ? *cfg.m_override : shots_per_term(K, cfg.epsilon, cfg.delta);
  if (report.plan.shots_per_term < 1) throw ParameterError("gem: shot override must be >= 1");
  report.plan.epsilon = cfg.epsilon;
  report.plan.delta = cfg.delta;
  report.plan.xi = xi;
  report.guarantee = (cfg.k_override || cfg.m_override) ? "none" : "hoeffding";

  const std::vector<double> exact = exact_series_gem(cfg, K);

  std::vector<double> sampled(K + 1);
  report.per_order.resize(K + 1);
  DensityMatrix evolved = cfg.state;
  for (int k = 1; k <= K + 1; ++k) {
    evolved = apply_noise(cfg.noise, evolved, 1);
    const EstimateSummary summary =
        sample_diagonal_mean(outcome_distribution(evolved), cfg.observable.diag(),
                             report.plan.shots_per_term, cfg.seed, kStreamPurpose,
                             static_cast<std::uint64_t>(k), cfg.delta, cfg.threads);
    sampled[k - 1] = summary.mean;
    report.per_order[k - 1] = {k, exact[k - 1], summary.mean, summary.std_error};
  }

  report.combined_exact = combine(exact, report.plan.coeffs);
  report.combined_sampled = combine(sampled, report.plan.coeffs);
  report.ideal = exact_expectation(cfg.observable, cfg.state);
  report.remainder_bound = remainder_bound_gem(xi, norm, K);
  return report;
}

}  // namespace qem
