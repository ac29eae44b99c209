#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qem/gem.hpp"
#include "qem/mem.hpp"

namespace qem {

//=========================================================================
// Experiment runners behind the CLI subcommands. All outputs are
// deterministic in the seed and independent of the worker-thread count.
//=========================================================================

// Formats one number with 12 significant digits, the CSV convention.
std::string format_g12(double value);

struct SweepRow {
  double xi = 0.0;
  int K = 0;
};

// Truncation order over a noise-resistance grid (columns: xi,K).
std::vector<SweepRow> run_sweep_k(double epsilon, double xi_min, double xi_max, int steps);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
nlohmann::json sweep_to_json(const std::vector<SweepRow>& rows);

struct Fig4Row {
  double p = 0.0;
  int K = 0;
  long long M = 0;
  double ideal = 0.0;
  double noisy = 0.0;
  double mitigated_exact = 0.0;
  double mitigated_sampled = 0.0;
  double std_error = 0.0;
};

// Depolarizing-noise study on a parameter grid with the state |0><0| and
// observable Z per qubit (columns: p,K,M,ideal,noisy,mitigated_exact,
// mitigated_sampled,stderr). shots overrides the per-term budget.
std::vector<Fig4Row> run_fig4(const std::vector<double>& p_values, double epsilon, double delta,
                              std::uint64_t seed, std::optional<long long> shots, int threads);
void write_fig4_csv(std::ostream& out, const std::vector<Fig4Row>& rows);
nlohmann::json fig4_to_json(const std::vector<Fig4Row>& rows);

struct Fig6Result {
  struct Row {
    int trial = 0;
    double noisy = 0.0;
    double mitigated = 0.0;
  };
  std::vector<Row> rows;
  double xi_m = 0.0;
  double ideal = 0.0;
  // Exact expectation of the noisy estimator and its per-shot standard
  // error, both oracle-computed from the error matrix.
  double exact_noisy_bias = 0.0;
  double noisy_std_error = 0.0;
  // Expectation of the mitigated estimator (the combined exact series);
  // bias reduction shows up as |combined_exact - ideal| << |noisy bias|.
  double combined_exact = 0.0;
  int K = 0;
  long long shots_per_term = 0;
  std::string guarantee = "hoeffding";
};

// Repeated measurement-error mitigation trials on the maximal
// superposition state with observable Z per qubit and a seeded random
// error matrix (columns: trial,noisy,mitigated). Without a shot override
// the full planned budget must fit the draw cap below.
Fig6Result run_fig6(int n, double target_xi, int trials, double epsilon, double delta,
                    std::uint64_t seed, std::optional<long long> shots, int threads);
void write_fig6_csv(std::ostream& out, const Fig6Result& result);
nlohmann::json fig6_to_json(const Fig6Result& result);
nlohmann::json fig6_meta(const Fig6Result& result);

// Refusal threshold for the total number of categorical draws a figure
// run may schedule without an explicit shot override.
inline constexpr long long kMaxScheduledDraws = 100'000'000'000LL;

}  // namespace qem
