#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "qem/quantum_core.hpp"

namespace qem {

//=========================================================================
// Seeded, reproducible Monte Carlo primitives.
//=========================================================================

// Stateless 64-bit avalanche mix (splitmix finalizer).
std::uint64_t mix64(std::uint64_t x);

// Derives an independent master seed for a labelled sub-experiment
// (e.g. one trial of a repeated study).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// A deterministic random stream addressed by (master seed, purpose tag,
// k index, round index). Identical labels give identical sequences no
// matter which thread runs them; distinct labels give independent
// streams. The generator is xoshiro256** (period 2^256 - 1) seeded from
// an avalanche hash of the labels.
class SeededStream {
public:
  SeededStream(std::uint64_t master_seed, std::string_view purpose, std::uint64_t k,
               std::uint64_t round);

  std::uint64_t next_u64();
  // Uniform double in [0, 1) with 53 random bits.
  double next_unit();

private:
  std::uint64_t s_[4];
};

// One categorical draw by inverse-CDF scan. probs must be nonnegative
// (entries >= -1e-12 are clipped) and sum to 1 within 1e-9; the vector is
// renormalized internally.
std::uint64_t categorical_sample(const RVector& probs, SeededStream& stream);

// Alias-table sampler for repeated draws from one fixed distribution;
// one uniform per draw. Construction is deterministic.
class CategoricalSampler {
public:
  explicit CategoricalSampler(const RVector& probs);

  std::uint64_t draw(SeededStream& stream) const {
    const double r = stream.next_unit() * static_cast<double>(size_);
    std::uint64_t j = static_cast<std::uint64_t>(r);
    if (j >= size_) j = size_ - 1;
    return (r - static_cast<double>(j)) < accept_[j] ? j : alias_[j];
  }

  std::uint64_t size() const { return size_; }

private:
  std::uint64_t size_;
  std::vector<double> accept_;
  std::vector<std::uint32_t> alias_;
};

// Validated copy of a probability vector: clips tiny negative mass and
// renormalizes. Shared by the samplers above.
RVector normalized_distribution(const RVector& probs);

struct EstimateSummary {
  double mean = 0.0;
  long long shots = 0;
  // Hoeffding half width at confidence delta for values bounded by 1:
  // sqrt(2 log2(2/delta) / shots).
  double half_width = 0.0;
  // Population standard error; at most 1/sqrt(shots) for bounded values.
  double std_error = 0.0;
};

// Mean of O over a list of measured outcomes.
EstimateSummary empirical_observable_mean(const std::vector<std::uint64_t>& outcomes,
                                          const DiagonalObservable& obs, double delta = 0.01);

// Runs fn(i) once for every i in [0, count) across the given number of
// worker threads. Results must be written to per-index slots so the
// outcome is independent of scheduling.
void parallel_for(std::int64_t count, int threads, const std::function<void(std::int64_t)>& fn);

// Draws `shots` outcomes from `probs` and averages obs_diag over them.
// Work is split into fixed-size blocks; block b uses the stream
// (seed, purpose, k, b) and partial sums are combined in block order, so
// the result is bit-identical for any thread count.
EstimateSummary sample_diagonal_mean(const RVector& probs, const RVector& obs_diag,
                                     long long shots, std::uint64_t seed,
                                     std::string_view purpose, std::uint64_t k, double delta,
                                     int threads);

}  // namespace qem
