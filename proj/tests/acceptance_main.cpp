// Acceptance suite: runs every stated criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exits with the number of
// failed criteria. The CLI binary path is taken from argv[1] (used by the
// reproducibility criterion).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <sys/wait.h>

#include "qem/experiments.hpp"

#include "helpers.hpp"

namespace fs = std::filesystem;
using namespace qem;

namespace {

int g_threads = 1;
std::string g_cli_path;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double run_timed(const std::function<Outcome()>& fn, Outcome& out) {
  const auto start = std::chrono::steady_clock::now();
  try {
    out = fn();
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("exception: ") + e.what();
  }
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) { return format_g12(v); }

//------------------------------------------------------------------ 1
Outcome criterion_neumann_identity() {
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    SeededStream stream(2024, "accept-identity", 0, trial);
    const Eigen::Index dim = 4 + (trial % 13);  // 4..16
    const RMatrix a = test::random_stochastic_matrix(dim, stream);
    for (int K = 0; K <= 6; ++K) worst = std::max(worst, matrix_identity_residual(a, K));
  }
  return {worst <= 1e-10, "max residual " + fmt(worst) + " (limit 1e-10)"};
}

//------------------------------------------------------------------ 2
Outcome criterion_coefficients() {
  for (int K = 0; K <= 15; ++K) {
    const auto c = coefficients(K);
    long long sum = 0, sumsq = 0;
    for (long long v : c) {
      sum += v;
      sumsq += v * v;
    }
    if (sum != 1) return {false, "coefficient sum != 1 at K=" + std::to_string(K)};
    if (sumsq != delta_cap(K))
      return {false, "squared sum mismatch at K=" + std::to_string(K)};
  }
  return {true, "sum and squared-sum identities exact for K=0..15"};
}

//------------------------------------------------------------------ 3
Outcome criterion_ptm_layer() {
  double worst_product = 0.0;
  for (int pair = 0; pair < 50; ++pair) {
    const int n = 1 + pair % 2;
    SeededStream stream(77, "accept-ptm", n, pair);
    const auto m = test::random_kraus_channel(n, 2 + pair % 3, stream);
    const auto nn = test::random_kraus_channel(n, 2 + (pair + 1) % 3, stream);
    const RMatrix direct = ptm_from_kraus(test::compose_kraus(m, nn)).entries();
    const RMatrix product = ptm_from_kraus(m).entries() * ptm_from_kraus(nn).entries();
    worst_product = std::max(worst_product, (direct - product).cwiseAbs().maxCoeff());
  }
  if (worst_product > 1e-10)
    return {false, "multiplicativity residual " + fmt(worst_product) + " > 1e-10"};

  double worst_form = 0.0;
  for (int i = 0; i <= 10; ++i) {
    const double p = 0.05 * i;
    worst_form = std::max(worst_form,
        std::abs(noise_resistance_gate(ptm_from_kraus(
            make_channel(GateNoiseSpec::depolarizing(p)))) - p));
    worst_form = std::max(worst_form,
        std::abs(noise_resistance_gate(ptm_from_kraus(
            make_channel(GateNoiseSpec::dephasing(p)))) - 2.0 * p));
    worst_form = std::max(worst_form,
        std::abs(noise_resistance_gate(ptm_from_kraus(
            make_channel(GateNoiseSpec::amplitude_damping(p)))) - 2.0 * p));
  }
  if (worst_form > 1e-12)
    return {false, "catalog closed-form deviation " + fmt(worst_form) + " > 1e-12"};
  return {true, "50 composition pairs <= " + fmt(worst_product) +
                    ", catalog forms <= " + fmt(worst_form)};
}

//------------------------------------------------------------------ 4
Outcome criterion_optimal_order_point() {
  if (optimal_K_mem(0.01, 0.657) != 10)
    return {false, "K(0.01, 0.657) = " + std::to_string(optimal_K_mem(0.01, 0.657))};
  if (optimal_K_gem(0.01, 0.657, 1.0) != 10)
    return {false, "gem-flavored K at 0.657 differs"};
  for (int i = 1; i <= 200; ++i) {
    const double xi = 0.657 * i / 200.0;
    if (optimal_K_mem(0.01, xi) > 10)
      return {false, "K exceeds 10 at xi=" + fmt(xi)};
  }
  return {true, "K(0.657) = 10 and K <= 10 on the 200-point grid"};
}

//------------------------------------------------------------------ 5
Outcome criterion_gem_depolarizing() {
  // Exact branch on the parameter grid.
  for (int i = 1; i <= 10; ++i) {
    const double p = 0.05 * i;
    const int K = optimal_K_gem(0.01, p, 1.0);
    GemConfig cfg{DensityMatrix::computational_basis(1, 0), z_observable(1),
                  GateNoiseSpec::depolarizing(p)};
    const auto series = exact_series_gem(cfg, K);
    const double combined = combine(series, coefficients(K));
    const double expected = 1.0 - std::pow(p, K + 1);
    if (std::abs(combined - expected) > 1e-12)
      return {false, "closed form broken at p=" + fmt(p) + ": " + fmt(combined) + " vs " +
                         fmt(expected)};
    if (std::abs(1.0 - combined) > 0.01 + 1e-12)
      return {false, "residual error above epsilon at p=" + fmt(p)};
  }

  // Sampled branch at full planned budgets.
  int within = 0;
  const int trials = 100;
  std::vector<double> deviations(trials, 0.0);
  parallel_for(trials, g_threads, [&](std::int64_t t) {
    GemConfig cfg{DensityMatrix::computational_basis(1, 0), z_observable(1),
                  GateNoiseSpec::depolarizing(0.2)};
    cfg.epsilon = 0.05;
    cfg.delta = 0.05;
    cfg.seed = derive_seed(5150, static_cast<std::uint64_t>(t));
    const auto report = mitigate_gem(cfg);
    deviations[static_cast<std::size_t>(t)] = std::abs(report.combined_sampled - 1.0);
  });
  for (double dev : deviations)
    if (dev <= 0.1) ++within;  // 2 * epsilon
  return {within >= 95, "exact closed forms to 1e-12; sampled within 2*eps in " +
                            std::to_string(within) + "/100 trials (need >= 95)"};
}

//------------------------------------------------------------------ 6
Outcome criterion_mem_bound() {
  double worst_slack = -1.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 4;
    SeededStream maker(4096, "accept-mem-bound", n, trial);
    const double target = 0.08 + 0.016 * trial;  // 0.08 .. 0.864
    const auto a = random_error_matrix(n, target, derive_seed(640, trial));
    const auto rho = test::random_density_matrix(n, maker);
    const auto obs = test::random_diag_observable(n, maker);
    MemConfig cfg = MemConfig::from_state(rho, obs, a);
    const double xi = noise_resistance_meas(a);
    const double ideal = obs.diag().dot(rho.diagonal());
    const auto series = exact_series_mem(cfg, 6);
    for (int K = 0; K <= 6; ++K) {
      const double combined =
          combine(std::span(series.data(), static_cast<std::size_t>(K + 1)), coefficients(K));
      const double slack = std::abs(ideal - combined) - remainder_bound_mem(xi, K);
      worst_slack = std::max(worst_slack, slack);
      if (slack > 1e-12)
        return {false, "bound violated by " + fmt(slack) + " at trial " + std::to_string(trial) +
                           ", K=" + std::to_string(K)};
    }
  }
  return {true, "50 triples, K=0..6, worst slack " + fmt(worst_slack) + " (limit 1e-12)"};
}

//------------------------------------------------------------------ 7
Outcome criterion_chain_law() {
  const auto a = random_error_matrix(2, 0.5, 321);
  SeededStream maker(9000, "accept-chain-state", 0, 0);
  const auto rho = test::random_density_matrix(2, maker);
  const RVector dist = rho.diagonal();

  RVector expected = dist;
  for (int step = 0; step < 3; ++step) expected = a.entries() * expected;

  const SequentialMeasurer measurer(a, dist);
  std::vector<long long> counts(4, 0);
  SeededStream stream(9001, "accept-chain-draw", 3, 0);
  const int draws = 1'000'000;
  for (int i = 0; i < draws; ++i) counts[measurer.draw(3, stream)]++;

  double tv = 0.0;
  for (int x = 0; x < 4; ++x)
    tv += std::abs(static_cast<double>(counts[x]) / draws - expected(x));
  tv *= 0.5;
  return {tv <= 0.005, "TV distance " + fmt(tv) + " after 1e6 chained draws (limit 0.005)"};
}

//------------------------------------------------------------------ 8
Outcome criterion_mem_scaled() {
  const Fig6Result result = run_fig6(8, 0.30, 200, 0.01, 0.01, 4242, std::nullopt, g_threads);
  int within = 0;
  for (const auto& row : result.rows)
    if (std::abs(row.mitigated - result.ideal) <= 0.02) ++within;

  const double bias = std::abs(result.exact_noisy_bias);
  const bool bias_visible = bias > 5.0 * result.noisy_std_error;
  const bool concentrated = within >= 196;  // 98% of 200
  std::string detail = std::to_string(within) + "/200 mitigated within 0.02 (need >= 196); "
                       "exact noisy bias " + fmt(result.exact_noisy_bias) + " vs 5*SE " +
                       fmt(5.0 * result.noisy_std_error);
  return {concentrated && bias_visible, detail};
}

//------------------------------------------------------------------ 9
Outcome criterion_unbiasedness() {
  const int runs = 200;
  std::vector<double> means(runs), variances(runs);
  double exact = 0.0;
  parallel_for(runs, g_threads, [&](std::int64_t run) {
    GemConfig cfg{DensityMatrix::computational_basis(1, 0), z_observable(1),
                  GateNoiseSpec::depolarizing(0.2)};
    cfg.seed = derive_seed(777, static_cast<std::uint64_t>(run));
    cfg.k_override = 2;
    cfg.m_override = 2'000;
    const auto report = mitigate_gem(cfg);
    means[static_cast<std::size_t>(run)] = report.combined_sampled;
    const double se = report.combined_std_error();
    variances[static_cast<std::size_t>(run)] = se * se;
    if (run == 0) exact = report.combined_exact;
  });
  double grand = 0.0, pooled_var = 0.0;
  for (int run = 0; run < runs; ++run) {
    grand += means[run];
    pooled_var += variances[run];
  }
  grand /= runs;
  const double pooled_se = std::sqrt(pooled_var) / runs;
  const double gap = std::abs(grand - exact);
  return {gap <= 4.0 * pooled_se, "grand mean gap " + fmt(gap) + " vs 4*pooled SE " +
                                      fmt(4.0 * pooled_se) + " over 200 runs"};
}

//------------------------------------------------------------------ 10
int run_command(const std::string& command) {
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "<missing:" + path.string() + ">";
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Outcome criterion_reproducibility() {
  if (g_cli_path.empty()) return {false, "CLI path not supplied on the command line"};
  const fs::path dir = fs::temp_directory_path() / "qem_acceptance_repro";
  fs::remove_all(dir);
  fs::create_directories(dir);

  struct Job {
    std::string name;
    std::string args;
    std::vector<std::string> outputs;
  };
  const std::vector<Job> jobs = {
      {"sweep", "sweep-k --xi-min 0.001 --xi-max 0.999 --steps 200", {"out.csv"}},
      {"fig4", "fig4 --p-min 0 --p-max 0.5 --p-step 0.05 --shots 20000 --seed 31", {"out.csv"}},
      {"gem", "gem --parameter 0.2 --K 2 --shots 20000 --seed 31", {"out.json"}},
      {"mem", "mem --qubits 3 --target-xi 0.3 --shots 5000 --seed 31", {"out.json"}},
      {"fig6", "fig6 --qubits 3 --target-xi 0.4 --trials 6 --shots 3000 --seed 31",
       {"out.csv", "out.meta.json"}},
  };

  for (const auto& job : jobs) {
    std::vector<std::string> baselines;
    for (const int threads : {1, 8}) {
      for (const auto& suffix : job.outputs) fs::remove(dir / suffix);
      const std::string output = (dir / "out").string() +
                                 (job.outputs.front() == "out.csv" ? ".csv" : ".json");
      const std::string command = g_cli_path + " " + job.args + " --threads " +
                                  std::to_string(threads) + " --output " + output + " > " +
                                  (dir / "log.txt").string() + " 2>&1";
      if (run_command(command) != 0)
        return {false, job.name + " exited nonzero at threads=" + std::to_string(threads)};
      std::string combined;
      for (const auto& suffix : job.outputs) combined += read_file(dir / suffix);
      if (threads == 1) {
        baselines.push_back(std::move(combined));
      } else if (combined != baselines.front()) {
        return {false, job.name + ": outputs differ between 1 and 8 threads"};
      }
    }
    // Re-run at one thread to confirm byte-stability across repeats.
    const std::string output = (dir / "out").string() +
                               (job.outputs.front() == "out.csv" ? ".csv" : ".json");
    const std::string command = g_cli_path + " " + job.args + " --threads 1 --output " + output +
                                " > " + (dir / "log.txt").string() + " 2>&1";
    if (run_command(command) != 0) return {false, job.name + " re-run exited nonzero"};
    std::string combined;
    for (const auto& suffix : job.outputs) combined += read_file(dir / suffix);
    if (combined != baselines.front())
      return {false, job.name + ": repeat run with identical flags differs"};
  }
  return {true, "5 commands byte-identical across repeats and 1 vs 8 threads"};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> fn;
  double time_limit;  // seconds; 0 = no hard limit beyond the harness timeout
};

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli_path = argv[1];
  const unsigned hw = std::thread::hardware_concurrency();
  g_threads = hw == 0 ? 2 : static_cast<int>(hw);

  const std::vector<Criterion> criteria = {
      {1, "neumann-identity", criterion_neumann_identity, 5.0},
      {2, "coefficient-identities", criterion_coefficients, 1.0},
      {3, "ptm-layer", criterion_ptm_layer, 10.0},
      {4, "optimal-order-point", criterion_optimal_order_point, 1.0},
      {5, "gem-depolarizing", criterion_gem_depolarizing, 600.0},
      {6, "mem-truncation-bound", criterion_mem_bound, 10.0},
      {7, "sequential-measurement-law", criterion_chain_law, 10.0},
      {8, "mem-scaled-budget", criterion_mem_scaled, 3600.0},
      {9, "unbiasedness", criterion_unbiasedness, 60.0},
      {10, "reproducibility", criterion_reproducibility, 60.0},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    Outcome outcome;
    const double seconds = run_timed(criterion.fn, outcome);
    const bool in_time = criterion.time_limit <= 0.0 || seconds <= criterion.time_limit;
    const bool pass = outcome.pass && in_time;
    if (!pass) ++failures;
    std::printf("[%s] %2d %-28s %s [%.1fs%s]\n", pass ? "PASS" : "FAIL", criterion.id,
                criterion.name, outcome.detail.c_str(), seconds,
                in_time ? "" : " OVER TIME LIMIT");
    std::fflush(stdout);
  }
  std::printf("%d/%zu acceptance criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures;
}
