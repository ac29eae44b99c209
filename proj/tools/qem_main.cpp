#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qem/experiments.hpp"

namespace {

using namespace qem;

// Exit codes: 0 success, 2 usage/parameter error, 3 method inapplicable
// (noise resistance >= 1), 4 resource cap exceeded.
constexpr int kExitUsage = 2;
constexpr int kExitInapplicable = 3;
constexpr int kExitResource = 4;

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot open output file " + path);
  return out;
}

std::string sidecar_path(const std::string& path) {
  for (const std::string suffix : {".csv", ".json"}) {
    if (path.size() > suffix.size() &&
        path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0)
      return path.substr(0, path.size() - suffix.size()) + ".meta.json";
  }
  return path + ".meta.json";
}

GateNoiseSpec parse_noise(const std::string& kind, double parameter) {
  if (kind == "depolarizing") return GateNoiseSpec::depolarizing(parameter);
  if (kind == "dephasing") return GateNoiseSpec::dephasing(parameter);
  if (kind == "amplitude-damping") return GateNoiseSpec::amplitude_damping(parameter);
  throw ParameterError("unknown noise kind: " + kind);
}

void print_report_line(const MitigationReport& r) {
  std::printf("ideal=%s noisy=%s mitigated=%s (exact_series=%s, remainder_bound=%s, K=%d, M=%lld, guarantee=%s)\n",
              format_g12(r.ideal).c_str(), format_g12(r.per_order.front().sampled).c_str(),
              format_g12(r.combined_sampled).c_str(), format_g12(r.combined_exact).c_str(),
              format_g12(r.remainder_bound).c_str(), r.plan.K, r.plan.shots_per_term,
              r.guarantee.c_str());
}

struct CommonOpts {
  std::uint64_t seed = 1;
  int threads = 1;
  double epsilon = 0.01;
  double delta = 0.01;
};

void add_format(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "Tabular output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_tolerances = true) {
  cmd->add_option("--seed", opts.seed, "Master seed for all random streams")
      ->envname("QEM_SEED")
      ->capture_default_str();
  cmd->add_option("--threads", opts.threads, "Worker threads (does not change results)")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();
  if (with_tolerances) {
    cmd->add_option("--epsilon", opts.epsilon, "Target precision")->capture_default_str();
    cmd->add_option("--delta", opts.delta, "Confidence parameter")->capture_default_str();
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Truncated-series quantum error mitigation simulator"};
  app.require_subcommand(1);

  // plan ------------------------------------------------------------------
  auto* plan_cmd = app.add_subcommand("plan", "Print the truncation schedule for a noise level");
  CommonOpts plan_opts;
  std::string plan_mode = "gem";
  double plan_xi = 0.0;
  double plan_obs_norm = 1.0;
  std::string plan_output;
  plan_cmd->add_option("--mode", plan_mode, "Pipeline flavor")
      ->check(CLI::IsMember({"gem", "mem"}))
      ->capture_default_str();
  plan_cmd->add_option("--xi", plan_xi, "Noise resistance")->required();
  plan_cmd->add_option("--obs-norm", plan_obs_norm, "Observable vector norm (gem mode)")
      ->capture_default_str();
  plan_cmd->add_option("--output", plan_output, "Write the plan as JSON to this path");
  add_common(plan_cmd, plan_opts);

  // gem -------------------------------------------------------------------
  auto* gem_cmd = app.add_subcommand("gem", "Run gate-error mitigation on |0..0> with Z^n");
  CommonOpts gem_opts;
  std::string gem_noise = "depolarizing";
  double gem_parameter = 0.0;
  int gem_qubits = 1;
  std::optional<int> gem_k;
  std::optional<long long> gem_shots;
  std::string gem_output = "gem_report.json";
  gem_cmd->add_option("--noise", gem_noise, "Noise kind")
      ->check(CLI::IsMember({"depolarizing", "dephasing", "amplitude-damping"}))
      ->capture_default_str();
  gem_cmd->add_option("--parameter", gem_parameter, "Noise parameter in [0,1]")->required();
  gem_cmd->add_option("--qubits", gem_qubits, "Register size")->check(CLI::Range(1, kMaxPtmQubits))
      ->capture_default_str();
  gem_cmd->add_option("--K", gem_k, "Override the truncation order (drops the guarantee)");
  gem_cmd->add_option("--shots", gem_shots, "Override the per-term shot budget (drops the guarantee)");
  gem_cmd->add_option("--output", gem_output, "Report path")->capture_default_str();
  add_common(gem_cmd, gem_opts);

  // mem -------------------------------------------------------------------
  auto* mem_cmd = app.add_subcommand("mem", "Run measurement-error mitigation on |Phi> with Z^n");
  CommonOpts mem_opts;
  int mem_qubits = 2;
  double mem_target_xi = -1.0;
  std::string mem_error_csv;
  std::optional<int> mem_k;
  std::optional<long long> mem_shots;
  std::string mem_output = "mem_report.json";
  mem_cmd->add_option("--qubits", mem_qubits, "Register size")
      ->check(CLI::Range(1, kMaxDiagQubits))
      ->capture_default_str();
  auto* xi_opt = mem_cmd->add_option("--target-xi", mem_target_xi,
                                     "Generate a random error matrix with this noise resistance");
  auto* csv_opt = mem_cmd->add_option("--error-csv", mem_error_csv,
                                      "Load the error matrix from a CSV file");
  xi_opt->excludes(csv_opt);
  mem_cmd->add_option("--K", mem_k, "Override the truncation order (drops the guarantee)");
  mem_cmd->add_option("--shots", mem_shots, "Override the per-term shot budget (drops the guarantee)");
  mem_cmd->add_option("--output", mem_output, "Report path")->capture_default_str();
  add_common(mem_cmd, mem_opts);

  // sweep-k ----------------------------------------------------------------
  auto* sweep_cmd = app.add_subcommand("sweep-k", "Truncation order over a noise-resistance grid");
  CommonOpts sweep_opts;
  double sweep_xi_min = 0.001, sweep_xi_max = 0.999;
  int sweep_steps = 500;
  std::string sweep_output = "sweep_k.csv";
  std::string sweep_format = "csv";
  sweep_cmd->add_option("--xi-min", sweep_xi_min, "Grid start")->capture_default_str();
  sweep_cmd->add_option("--xi-max", sweep_xi_max, "Grid end")->capture_default_str();
  sweep_cmd->add_option("--steps", sweep_steps, "Grid points")->capture_default_str();
  sweep_cmd->add_option("--output", sweep_output, "Output path")->capture_default_str();
  add_format(sweep_cmd, sweep_format);
  add_common(sweep_cmd, sweep_opts);

  // fig4 -------------------------------------------------------------------
  auto* fig4_cmd = app.add_subcommand("fig4", "Depolarizing-noise mitigation over a parameter grid");
  CommonOpts fig4_opts;
  double fig4_p_min = 0.0, fig4_p_max = 0.5, fig4_p_step = 0.05;
  std::optional<long long> fig4_shots;
  std::string fig4_output = "fig4.csv";
  std::string fig4_format = "csv";
  fig4_cmd->add_option("--p-min", fig4_p_min, "Grid start")->capture_default_str();
  fig4_cmd->add_option("--p-max", fig4_p_max, "Grid end")->capture_default_str();
  fig4_cmd->add_option("--p-step", fig4_p_step, "Grid step")->capture_default_str();
  fig4_cmd->add_option("--shots", fig4_shots, "Per-term shot override (full budget otherwise)");
  fig4_cmd->add_option("--output", fig4_output, "Output path")->capture_default_str();
  add_format(fig4_cmd, fig4_format);
  add_common(fig4_cmd, fig4_opts);

  // fig6 -------------------------------------------------------------------
  auto* fig6_cmd = app.add_subcommand("fig6", "Repeated measurement-error mitigation trials");
  CommonOpts fig6_opts;
  int fig6_qubits = 8;
  double fig6_target_xi = 0.3;
  int fig6_trials = 200;
  std::optional<long long> fig6_shots;
  std::string fig6_output = "fig6.csv";
  fig6_cmd->add_option("--qubits", fig6_qubits, "Register size")
      ->check(CLI::Range(1, kMaxDiagQubits))
      ->capture_default_str();
  fig6_cmd->add_option("--target-xi", fig6_target_xi, "Noise resistance of the random error matrix")
      ->capture_default_str();
  fig6_cmd->add_option("--trials", fig6_trials, "Number of repeated mitigations")
      ->capture_default_str();
  std::string fig6_format = "csv";
  fig6_cmd->add_option("--shots", fig6_shots, "Per-term shot override (full budget otherwise)");
  fig6_cmd->add_option("--output", fig6_output, "Output path; a .meta.json sidecar is written too")
      ->capture_default_str();
  add_format(fig6_cmd, fig6_format);
  add_common(fig6_cmd, fig6_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (plan_cmd->parsed()) {
    if (!(plan_xi >= 0.0 && plan_xi < 1.0))
      throw ParameterError("--xi = " + std::to_string(plan_xi) +
                           " is out of range: the method requires noise resistance xi < 1");
    const TruncationPlan plan =
        plan_mode == "gem"
            ? make_plan_gem(plan_opts.epsilon, plan_opts.delta, plan_xi, plan_obs_norm)
            : make_plan_mem(plan_opts.epsilon, plan_opts.delta, plan_xi);
    std::printf("plan: mode=%s K=%d Delta=%lld M=%lld overhead=%s\n", plan_mode.c_str(), plan.K,
                plan.delta_cap, plan.shots_per_term, format_g12(plan.overhead()).c_str());
    const std::string dump = plan.to_json().dump(2);
    if (plan_output.empty()) {
      std::printf("%s\n", dump.c_str());
    } else {
      open_output(plan_output) << dump << "\n";
      std::printf("wrote %s\n", plan_output.c_str());
    }
    return 0;
  }

  if (gem_cmd->parsed()) {
    GemConfig cfg{DensityMatrix::computational_basis(gem_qubits, 0), z_observable(gem_qubits),
                  parse_noise(gem_noise, gem_parameter)};
    cfg.epsilon = gem_opts.epsilon;
    cfg.delta = gem_opts.delta;
    cfg.seed = gem_opts.seed;
    cfg.k_override = gem_k;
    cfg.m_override = gem_shots;
    cfg.threads = gem_opts.threads;
    const MitigationReport report = mitigate_gem(cfg);
    open_output(gem_output) << report.to_json().dump(2) << "\n";
    print_report_line(report);
    std::printf("wrote %s\n", gem_output.c_str());
    return 0;
  }

  if (mem_cmd->parsed()) {
    if (mem_error_csv.empty() && mem_target_xi < 0.0)
      throw ParameterError("mem: provide --target-xi or --error-csv");
    ErrorMatrix error = mem_error_csv.empty()
                            ? random_error_matrix(mem_qubits, mem_target_xi, mem_opts.seed)
                            : ErrorMatrix::load_csv(mem_error_csv);
    if (error.qubits() != mem_qubits)
      throw ParameterError("mem: error matrix is for " + std::to_string(error.qubits()) +
                           " qubits but --qubits is " + std::to_string(mem_qubits));
    MemConfig cfg = MemConfig::from_state(max_superposition_state(mem_qubits),
                                          z_observable(mem_qubits), std::move(error));
    cfg.epsilon = mem_opts.epsilon;
    cfg.delta = mem_opts.delta;
    cfg.seed = mem_opts.seed;
    cfg.k_override = mem_k;
    cfg.m_override = mem_shots;
    cfg.threads = mem_opts.threads;
    const MitigationReport report = mitigate_mem(cfg);
    open_output(mem_output) << report.to_json().dump(2) << "\n";
    print_report_line(report);
    std::printf("wrote %s\n", mem_output.c_str());
    return 0;
  }

  if (sweep_cmd->parsed()) {
    const auto rows = run_sweep_k(sweep_opts.epsilon, sweep_xi_min, sweep_xi_max, sweep_steps);
    auto out = open_output(sweep_output);
    write_sweep_csv(out, rows);
    std::printf("wrote %s (%zu rows)\n", sweep_output.c_str(), rows.size());
    return 0;
  }

  if (fig4_cmd->parsed()) {
    if (fig4_p_step <= 0.0) throw ParameterError("fig4: --p-step must be positive");
    std::vector<double> grid;
    for (int i = 0;; ++i) {
      const double p = fig4_p_min + fig4_p_step * i;
      if (p > fig4_p_max + 1e-12) break;
      grid.push_back(p);
    }
    const auto rows = run_fig4(grid, fig4_opts.epsilon, fig4_opts.delta, fig4_opts.seed,
                               fig4_shots, fig4_opts.threads);
    auto out = open_output(fig4_output);
    write_fig4_csv(out, rows);
    std::printf("wrote %s (%zu rows)\n", fig4_output.c_str(), rows.size());
    return 0;
  }

  if (fig6_cmd->parsed()) {
    const Fig6Result result =
        run_fig6(fig6_qubits, fig6_target_xi, fig6_trials, fig6_opts.epsilon, fig6_opts.delta,
                 fig6_opts.seed, fig6_shots, fig6_opts.threads);
    auto out = open_output(fig6_output);
    write_fig6_csv(out, result);
    const std::string meta_path = sidecar_path(fig6_output);
    open_output(meta_path) << fig6_meta(result).dump(2) << "\n";
    std::printf("wrote %s and %s (xi_m=%s, exact_noisy_bias=%s)\n", fig6_output.c_str(),
                meta_path.c_str(), format_g12(result.xi_m).c_str(),
                format_g12(result.exact_noisy_bias).c_str());
    return 0;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const qem::MethodInapplicableError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInapplicable;
  } catch (const qem::ResourceLimitError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitResource;
  } catch (const std::invalid_argument& e) {  // ParameterError, StructuralError
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
