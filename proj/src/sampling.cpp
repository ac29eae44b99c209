#include "qem/sampling.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace qem {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t rotl64(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(mix64(master) ^ mix64(index * kGolden + 1));
}

SeededStream::SeededStream(std::uint64_t master_seed, std::string_view purpose, std::uint64_t k,
                           std::uint64_t round) {
  std::uint64_t key = mix64(master_seed ^ fnv1a(purpose));
  key = mix64(key ^ (k * kGolden));
  key = mix64(key ^ rotl64(round, 32) ^ round);
  // Expand the key into the xoshiro state.
  std::uint64_t x = key;
  for (auto& word : s_) word = mix64(x = x + kGolden);
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

std::uint64_t SeededStream::next_u64() {
  const std::uint64_t result = rotl64(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl64(s_[3], 45);
  return result;
}

double SeededStream::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

RVector normalized_distribution(const RVector& probs) {
  if (probs.size() == 0) throw ParameterError("categorical distribution is empty");
  RVector out = probs;
  double total = 0.0;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (out(i) < -1e-12)
      throw ParameterError("categorical distribution has negative mass at index " +
                           std::to_string(i));
    if (out(i) < 0.0) out(i) = 0.0;
    total += out(i);
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw ParameterError("categorical distribution sums to " + std::to_string(total) +
                         ", expected 1");
  out /= total;
  return out;
}

std::uint64_t categorical_sample(const RVector& probs, SeededStream& stream) {
  const RVector p = normalized_distribution(probs);
  const double u = stream.next_unit();
  double acc = 0.0;
  const Eigen::Index d = p.size();
  for (Eigen::Index i = 0; i < d; ++i) {
    acc += p(i);
    if (u < acc) return static_cast<std::uint64_t>(i);
  }
  return static_cast<std::uint64_t>(d - 1);
}

CategoricalSampler::CategoricalSampler(const RVector& probs) {
  const RVector p = normalized_distribution(probs);
  const std::uint64_t d = static_cast<std::uint64_t>(p.size());
  size_ = d;
  accept_.assign(d, 1.0);
  alias_.assign(d, 0);
  for (std::uint64_t i = 0; i < d; ++i) alias_[i] = static_cast<std::uint32_t>(i);

  std::vector<double> scaled(d);
  std::vector<std::uint32_t> small, large;
  for (std::uint64_t i = 0; i < d; ++i) {
    scaled[i] = p(static_cast<Eigen::Index>(i)) * static_cast<double>(d);
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
  }
  while (!small.empty() && !large.empty()) {
    const std::uint32_t s = small.back();
    small.pop_back();
    const std::uint32_t l = large.back();
    accept_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] -= 1.0 - scaled[s];
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Leftover slots keep accept = 1 (self-aliased).
}

EstimateSummary empirical_observable_mean(const std::vector<std::uint64_t>& outcomes,
                                          const DiagonalObservable& obs, double delta) {
  if (outcomes.empty()) throw ParameterError("empirical_observable_mean: no outcomes");
  if (delta <= 0.0 || delta >= 1.0)
    throw ParameterError("empirical_observable_mean: delta must be in (0,1)");
  long double sum = 0.0L, sumsq = 0.0L;
  for (std::uint64_t x : outcomes) {
    if (x >= static_cast<std::uint64_t>(obs.dim()))
      throw StructuralError("empirical_observable_mean: outcome out of range");
    const double v = obs(x);
    sum += v;
    sumsq += static_cast<long double>(v) * v;
  }
  const auto m = static_cast<long long>(outcomes.size());
  EstimateSummary out;
  out.shots = m;
  out.mean = static_cast<double>(sum / m);
  const double var = std::max(0.0, static_cast<double>(sumsq / m) - out.mean * out.mean);
  out.std_error = std::sqrt(var / static_cast<double>(m));
  out.half_width = std::sqrt(2.0 * std::log2(2.0 / delta) / static_cast<double>(m));
  return out;
}

void parallel_for(std::int64_t count, int threads, const std::function<void(std::int64_t)>& fn) {
  if (count <= 0) return;
  if (threads < 1) threads = 1;
  const int workers = static_cast<int>(std::min<std::int64_t>(threads, count));
  if (workers == 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::int64_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  for (auto& t : pool) t.join();
}

EstimateSummary sample_diagonal_mean(const RVector& probs, const RVector& obs_diag,
                                     long long shots, std::uint64_t seed,
                                     std::string_view purpose, std::uint64_t k, double delta,
                                     int threads) {
  if (shots < 1) throw ParameterError("sample_diagonal_mean: shot count must be >= 1");
  if (probs.size() != obs_diag.size())
    throw StructuralError("sample_diagonal_mean: dimension mismatch");
  const CategoricalSampler sampler(probs);

  constexpr long long kBlock = 1 << 16;
  const auto n_blocks = (shots + kBlock - 1) / kBlock;
  std::vector<std::pair<double, double>> partial(static_cast<std::size_t>(n_blocks));

  parallel_for(n_blocks, threads, [&](std::int64_t b) {
    SeededStream stream(seed, purpose, k, static_cast<std::uint64_t>(b));
    const long long lo = b * kBlock;
    const long long hi = std::min(shots, lo + kBlock);
    double s = 0.0, s2 = 0.0;
    for (long long i = lo; i < hi; ++i) {
      const double v = obs_diag(static_cast<Eigen::Index>(sampler.draw(stream)));
      s += v;
      s2 += v * v;
    }
    partial[static_cast<std::size_t>(b)] = {s, s2};
  });

  long double sum = 0.0L, sumsq = 0.0L;
  for (const auto& [s, s2] : partial) {
    sum += s;
    sumsq += s2;
  }
  EstimateSummary out;
  out.shots = shots;
  out.mean = static_cast<double>(sum / shots);
  const double var = std::max(0.0, static_cast<double>(sumsq / shots) - out.mean * out.mean);
  out.std_error = std::sqrt(var / static_cast<double>(shots));
  out.half_width = std::sqrt(2.0 * std::log2(2.0 / delta) / static_cast<double>(shots));
  return out;
}

}  // namespace qem
