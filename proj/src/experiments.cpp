#include "qem/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace qem {

std::string format_g12(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::vector<SweepRow> run_sweep_k(double epsilon, double xi_min, double xi_max, int steps) {
  if (steps < 1) throw ParameterError("sweep: need at least one grid point");
  if (!(xi_min > 0.0 && xi_max < 1.0 && xi_min <= xi_max))
    throw ParameterError("sweep: noise-resistance range must satisfy 0 < min <= max < 1");
  std::vector<SweepRow> rows;
  rows.reserve(steps);
  for (int i = 0; i < steps; ++i) {
    const double xi =
        steps == 1 ? xi_min : xi_min + (xi_max - xi_min) * static_cast<double>(i) / (steps - 1);
    rows.push_back({xi, optimal_K_mem(epsilon, xi)});
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "xi,K\n";
  for (const auto& row : rows) out << format_g12(row.xi) << "," << row.K << "\n";
}

nlohmann::json sweep_to_json(const std::vector<SweepRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : rows) out.push_back({{"xi", row.xi}, {"K", row.K}});
  return out;
}

std::vector<Fig4Row> run_fig4(const std::vector<double>& p_values, double epsilon, double delta,
                              std::uint64_t seed, std::optional<long long> shots, int threads) {
  if (p_values.empty()) throw ParameterError("fig4: empty parameter grid");
  if (!shots) {
    long long total = 0;
    for (double p : p_values) {
      const int K = optimal_K_gem(epsilon, p, 1.0);
      total += static_cast<long long>(K + 1) * shots_per_term(K, epsilon, delta);
    }
    if (total > kMaxScheduledDraws)
      throw ResourceLimitError("fig4: full budget schedules " + std::to_string(total) +
                               " draws, above the cap of " + std::to_string(kMaxScheduledDraws) +
                               "; pass a shot override to run at reduced scale");
  }
  std::vector<Fig4Row> rows(p_values.size());
  parallel_for(static_cast<std::int64_t>(p_values.size()), threads, [&](std::int64_t i) {
    const double p = p_values[static_cast<std::size_t>(i)];
    GemConfig cfg{DensityMatrix::computational_basis(1, 0), z_observable(1),
                  GateNoiseSpec::depolarizing(p)};
    cfg.epsilon = epsilon;
    cfg.delta = delta;
    cfg.seed = derive_seed(seed, static_cast<std::uint64_t>(i));
    cfg.m_override = shots;
    cfg.threads = 1;
    const MitigationReport report = mitigate_gem(cfg);
    Fig4Row& row = rows[static_cast<std::size_t>(i)];
    row.p = p;
    row.K = report.plan.K;
    row.M = report.plan.shots_per_term;
    row.ideal = report.ideal;
    row.noisy = report.per_order.front().exact;
    row.mitigated_exact = report.combined_exact;
    row.mitigated_sampled = report.combined_sampled;
    row.std_error = report.combined_std_error();
  });
  return rows;
}

void write_fig4_csv(std::ostream& out, const std::vector<Fig4Row>& rows) {
  out << "p,K,M,ideal,noisy,mitigated_exact,mitigated_sampled,stderr\n";
  for (const auto& row : rows) {
    out << format_g12(row.p) << "," << row.K << "," << row.M << "," << format_g12(row.ideal)
        << "," << format_g12(row.noisy) << "," << format_g12(row.mitigated_exact) << ","
        << format_g12(row.mitigated_sampled) << "," << format_g12(row.std_error) << "\n";
  }
}

nlohmann::json fig4_to_json(const std::vector<Fig4Row>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : rows)
    out.push_back({{"p", row.p},
                   {"K", row.K},
                   {"M", row.M},
                   {"ideal", row.ideal},
                   {"noisy", row.noisy},
                   {"mitigated_exact", row.mitigated_exact},
                   {"mitigated_sampled", row.mitigated_sampled},
                   {"stderr", row.std_error}});
  return out;
}

Fig6Result run_fig6(int n, double target_xi, int trials, double epsilon, double delta,
                    std::uint64_t seed, std::optional<long long> shots, int threads) {
  if (trials < 1) throw ParameterError("fig6: need at least one trial");
  const ErrorMatrix error = random_error_matrix(n, target_xi, seed);
  const DiagonalObservable obs = z_observable(n);
  const RVector uniform = RVector::Constant(Eigen::Index(1) << n, 1.0 / double(Eigen::Index(1) << n));

  Fig6Result result;
  result.xi_m = noise_resistance_meas(error);
  result.ideal = obs.diag().dot(uniform);

  const int K = optimal_K_mem(epsilon, result.xi_m);
  const long long planned = shots_per_term(K, epsilon, delta);
  if (!shots) {
    const long long total = static_cast<long long>(trials) * (K + 1) * planned;
    if (total > kMaxScheduledDraws)
      throw ResourceLimitError(
          "fig6: full budget needs M = " + std::to_string(planned) + " shots per term (" +
          std::to_string(total) + " draws in total over " + std::to_string(trials) +
          " trials), above the cap of " + std::to_string(kMaxScheduledDraws) +
          "; pass a shot override to run at reduced scale");
  }
  result.K = K;
  result.shots_per_term = shots ? *shots : planned;
  result.guarantee = shots ? "none" : "hoeffding";

  // Oracle values for the unmitigated estimator.
  const RVector after_one = error.entries() * uniform;
  result.exact_noisy_bias = obs.diag().dot(after_one) - result.ideal;
  const double second_moment = obs.diag().cwiseProduct(obs.diag()).dot(after_one);
  const double var = std::max(0.0, second_moment - std::pow(obs.diag().dot(after_one), 2));
  result.noisy_std_error = std::sqrt(var / static_cast<double>(result.shots_per_term));

  // Expectation of the mitigated estimator, from the exact series.
  {
    MemConfig oracle{n, uniform, obs, error};
    oracle.epsilon = epsilon;
    oracle.delta = delta;
    result.combined_exact = combine(exact_series_mem(oracle, K), coefficients(K));
  }

  result.rows.resize(static_cast<std::size_t>(trials));
  parallel_for(trials, threads, [&](std::int64_t t) {
    MemConfig cfg{n, uniform, obs, error};
    cfg.epsilon = epsilon;
    cfg.delta = delta;
    cfg.seed = derive_seed(seed, static_cast<std::uint64_t>(t));
    cfg.k_override = K;
    cfg.m_override = result.shots_per_term;
    cfg.threads = 1;
    MitigationReport report = mitigate_mem(cfg);
    result.rows[static_cast<std::size_t>(t)] = {static_cast<int>(t),
                                                report.per_order.front().sampled,
                                                report.combined_sampled};
  });
  return result;
}

void write_fig6_csv(std::ostream& out, const Fig6Result& result) {
  out << "trial,noisy,mitigated\n";
  for (const auto& row : result.rows)
    out << row.trial << "," << format_g12(row.noisy) << "," << format_g12(row.mitigated) << "\n";
}

nlohmann::json fig6_to_json(const Fig6Result& result) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : result.rows)
    out.push_back({{"trial", row.trial}, {"noisy", row.noisy}, {"mitigated", row.mitigated}});
  return out;
}

nlohmann::json fig6_meta(const Fig6Result& result) {
  return nlohmann::json{{"xi_m", result.xi_m},
                        {"ideal", result.ideal},
                        {"exact_noisy_bias", result.exact_noisy_bias},
                        {"noisy_std_error", result.noisy_std_error},
                        {"combined_exact", result.combined_exact},
                        {"K", result.K},
                        {"shots_per_term", result.shots_per_term},
                        {"trials", result.rows.size()},
                        {"guarantee", result.guarantee}};
}

}  // namespace qem
