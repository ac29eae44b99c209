#pragma once

#include <cstdint>
#include <optional>

#include "qem/noise_models.hpp"
#include "qem/report.hpp"
#include "qem/sampling.hpp"

namespace qem {

//=========================================================================
// Gate-error mitigation: noisy expectation values under k sequential
// channel applications, combined into the mitigated estimate.
//=========================================================================

struct GemConfig {
  DensityMatrix state;
  DiagonalObservable observable;
  GateNoiseSpec noise;
  double epsilon = 0.01;
  double delta = 0.01;
  std::uint64_t seed = 0;
  std::optional<int> k_override;
  std::optional<long long> m_override;
  int threads = 1;
};

// Exact noisy values E^(k) = <<O| [N]^k |rho>> for k = 1 .. K+1. Each
// value is computed through the transfer matrix and through repeated
// Kraus application; the two routes must agree to 1e-9.
std::vector<double> exact_series_gem(const GemConfig& cfg, int K);

// Monte Carlo estimate of E^(k): the outcome law after k sequential
// channel applications is sampled shot by shot (measurement itself is
// treated as ideal here).
EstimateSummary sample_eta_gem(const GemConfig& cfg, int k, long long shots);

// Full pipeline: plan, exact series, sampled series, combination.
MitigationReport mitigate_gem(const GemConfig& cfg);

}  // namespace qem
