#pragma once

// AR(1) data generation and the Monte Carlo harness for Type I error,
// empirical power and empirical detectable effect sizes.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "nof1/error.hpp"
#include "nof1/estimate.hpp"
#include "nof1/types.hpp"

namespace nof1 {

// Counter-based stream: SplitMix64 over a key mixed from
// (seed, stream, substream). Streams with different keys are independent
// for Monte Carlo purposes and need no shared state.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  StreamRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream = 0) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }
  result_type operator()() noexcept;

 private:
  std::uint64_t state_;
};

// Stationary AR(1): z_1 ~ N(0, sigma^2), z_j = rho z_{j-1} + e_j with
// e_j ~ N(0, sigma^2 (1 - rho^2)); y_j = mean[j] + z_j. An empty mean
// sequence means zero mean.
template <class Urbg>
Series gen_ar1(std::size_t m, double rho, double sigma, std::span<const double> mean, Urbg& rng) {
  if (!(std::abs(rho) < 1.0)) throw DomainError("gen_ar1: |rho| must be below 1");
  if (!(sigma > 0.0)) throw DomainError("gen_ar1: sigma must be positive");
  if (!mean.empty() && mean.size() != m) throw DomainError("gen_ar1: mean length mismatch");
  std::normal_distribution<double> normal;
  const double innov = sigma * std::sqrt(1.0 - rho * rho);
  Series out;
  out.values.resize(m);
  double z = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    z = j == 0 ? sigma * normal(rng) : rho * z + innov * normal(rng);
    out.values[j] = (mean.empty() ? 0.0 : mean[j]) + z;
  }
  return out;
}

// Two AR(1)(rho) series whose starting values and innovations are
// bivariate normal with correlation rho_pair, so corr(y_A,j, y_B,j) =
// rho_pair at every j and y_A - y_B is AR(1)(rho) with variance
// 2 sigma^2 (1 - rho_pair).
template <class Urbg>
std::pair<Series, Series> gen_paired(std::size_t m, double rho, double rho_pair, double sigma,
                                     std::span<const double> mean_a,
                                     std::span<const double> mean_b, Urbg& rng) {
  if (!(std::abs(rho) < 1.0)) throw DomainError("gen_paired: |rho| must be below 1");
  if (!(rho_pair >= 0.0 && rho_pair < 1.0)) throw DomainError("gen_paired: rho_pair must be in [0, 1)");
  if (!(sigma > 0.0)) throw DomainError("gen_paired: sigma must be positive");
  if ((!mean_a.empty() && mean_a.size() != m) || (!mean_b.empty() && mean_b.size() != m)) {
    throw DomainError("gen_paired: mean length mismatch");
  }
  std::normal_distribution<double> normal;
  const double innov = std::sqrt(1.0 - rho * rho);
  const double cross = std::sqrt(1.0 - rho_pair * rho_pair);
  std::pair<Series, Series> out;
  out.first.label = "A";
  out.second.label = "B";
  out.first.values.resize(m);
  out.second.values.resize(m);
  double za = 0.0;
  double zb = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double u = normal(rng);
    const double v = rho_pair * u + cross * normal(rng);
    if (j == 0) {
      za = sigma * u;
      zb = sigma * v;
    } else {
      za = rho * za + sigma * innov * u;
      zb = rho * zb + sigma * innov * v;
    }
    out.first.values[j] = (mean_a.empty() ? 0.0 : mean_a[j]) + za;
    out.second.values[j] = (mean_b.empty() ? 0.0 : mean_b[j]) + zb;
  }
  return out;
}

// How a non-null effect is expressed.
enum class EffectScale {
  Sigma,    // delta in units of the analyzed series' sd (the power module's units)
  Response  // raw shift in mean (level) or slope (rate) of treatment A
};

struct McEffect {
  double value = 0.0;
  EffectScale scale = EffectScale::Sigma;
};

struct McConfig {
  TestKind kind = TestKind::PairedLevel;
  std::vector<std::size_t> m_values;  // m_A = m_B = m for two-sample kinds
  std::vector<double> rho_values;
  std::vector<double> rho_pair_values;
  double sigma2 = 1.0;
  std::size_t replicates = 10000;
  double alpha = 0.05;
  TailSide side = TailSide::Upper;
  std::optional<McEffect> effect;  // nullopt: null hypothesis (Type I error)
  std::uint64_t seed = 0;

  // Kind minimum through 12 plus {30, 50, 100}; rho in {-0.33, 0, 0.33,
  // 0.67}; rho_pair {0.33, 0.67} paired, {0} two-sample.
  static McConfig defaults(TestKind kind, std::uint64_t seed);
};

void validate(const McConfig& config);

struct McCellKey {
  std::size_t m = 0;
  double rho = 0.0;
  double rho_pair = 0.0;
};

// Cells in m-major, then rho, then rho_pair order.
std::vector<McCellKey> cells_of(const McConfig& config);

struct McCell {
  McCellKey key;
  std::size_t replicates = 0;  // attempted
  std::size_t excluded = 0;    // degenerate replicates
  double serial_rate = 0.0;
  double usual_rate = 0.0;
  double serial_mcse = 0.0;
  double usual_mcse = 0.0;
  double mean_r = 0.0;  // mean correlation used by the serial test
};

struct McSummary {
  McConfig config;
  std::vector<McCell> cells;
};

struct RunOptions {
  unsigned threads = 0;  // 0: hardware concurrency
};

McSummary run_monte_carlo(const McConfig& config, RunOptions options = {});

struct EffectSizeCell {
  McCellKey key;
  double theoretical = 0.0;  // serial test, rho known
  double serial_empirical = 0.0;
  double usual_empirical = 0.0;
  double serial_ratio = 0.0;
  double usual_ratio = 0.0;
};

// Bisection on delta (sigma units) until the simulated power of `method`
// is within 0.005 of target_power or the bracket is narrower than 0.005
// times the theoretical effect.
// All probes for a cell reuse the same replicate streams.
double empirical_detectable_effect(const McConfig& config, const McCellKey& cell, Method method,
                                   double target_power = 0.80, RunOptions options = {});

std::vector<EffectSizeCell> effect_size_grid(const McConfig& config, double target_power = 0.80,
                                             RunOptions options = {});

}  // namespace nof1
