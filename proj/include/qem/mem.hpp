#pragma once

#include <cstdint>
#include <optional>

#include "qem/noise_models.hpp"
#include "qem/report.hpp"
#include "qem/sampling.hpp"

namespace qem {

//=========================================================================
// Measurement-error mitigation: sequential noisy readout as a Markov
// chain through the error matrix.
//=========================================================================

struct MemConfig {
  int n = 1;
  // Outcome probabilities of the prepared state; the dense density
  // matrix is never needed because the observable is diagonal.
  RVector true_dist;
  DiagonalObservable observable;
  ErrorMatrix error;
  double epsilon = 0.01;
  double delta = 0.01;
  std::uint64_t seed = 0;
  std::optional<int> k_override;
  std::optional<long long> m_override;
  int threads = 1;

  static MemConfig from_state(const DensityMatrix& state, DiagonalObservable obs,
                              ErrorMatrix error);
};

// One physical chain draw: sample the true outcome, then push it through
// the noisy readout k times. The outcome law is A^k * true_dist.
std::uint64_t sequential_measure(const ErrorMatrix& a, const RVector& true_dist, int k,
                                 SeededStream& stream);

// Prepared per-column samplers for bulk chain draws.
class SequentialMeasurer {
public:
  SequentialMeasurer(const ErrorMatrix& a, const RVector& true_dist);
  std::uint64_t draw(int k, SeededStream& stream) const;

private:
  CategoricalSampler initial_;
  std::vector<CategoricalSampler> columns_;
};

// Exact noisy values E^(k) = sum_x O(x) (A^k p)(x) for k = 1 .. K+1,
// by iterated matrix-vector products (A^k is never formed densely).
std::vector<double> exact_series_mem(const MemConfig& cfg, int K);

// Monte Carlo estimate of E^(k). Draws come from the precomputed vector
// A^k p, which has exactly the law of the physical chain.
EstimateSummary sample_eta_mem(const MemConfig& cfg, int k, long long shots);

// Full pipeline: plan, exact series, sampled series, combination.
MitigationReport mitigate_mem(const MemConfig& cfg);

}  // namespace qem
