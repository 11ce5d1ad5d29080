#include "nof1/mc_sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "nof1/ar1_math.hpp"
#include "nof1/power.hpp"
#include "nof1/serial_tests.hpp"

namespace nof1 {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Stream identity of a cell: independent of where the cell sits in a grid,
// so a cell simulated alone reproduces the same replicates.
std::uint64_t cell_stream(TestKind kind, const McCellKey& key, std::uint64_t purpose) noexcept {
  std::uint64_t h = mix64(static_cast<std::uint64_t>(kind) + kGolden * (purpose + 1));
  h = mix64(h ^ static_cast<std::uint64_t>(key.m));
  h = mix64(h ^ std::bit_cast<std::uint64_t>(key.rho));
  h = mix64(h ^ std::bit_cast<std::uint64_t>(key.rho_pair));
  return h;
}

constexpr std::uint64_t kPurposeRates = 0;
constexpr std::uint64_t kPurposeEffectSearch = 1;

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs fn(i) for i in [0, n) over contiguous blocks. fn must only touch
// state owned by index i.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  threads = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = n * t / threads;
    const std::size_t end = n * (t + 1) / threads;
    pool.emplace_back([&, t, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct Outcome {
  bool valid = false;
  bool serial_reject = false;
  bool usual_reject = false;
  double r = 0.0;
};

// Mean sequence of treatment A carrying the effect; B always has mean 0.
std::vector<double> effect_means(const McConfig& cfg, const McCellKey& key, double value,
                                 EffectScale scale) {
  if (value == 0.0) return {};
  const double sigma = std::sqrt(cfg.sigma2);
  double shift = value;
  if (scale == EffectScale::Sigma) {
    const double sd = is_paired(cfg.kind) ? sigma * std::sqrt(2.0 * (1.0 - key.rho_pair)) : sigma;
    shift *= sd;
  }
  std::vector<double> mean(key.m, shift);
  if (is_rate(cfg.kind)) {
    const double mid = 0.5 * (static_cast<double>(key.m) + 1.0);
    for (std::size_t j = 0; j < key.m; ++j) mean[j] = shift * (static_cast<double>(j + 1) - mid);
  }
  return mean;
}

Outcome simulate_replicate(const McConfig& cfg, const McCellKey& key, std::uint64_t stream,
                           std::size_t rep, std::span<const double> mean_a, bool want_serial,
                           bool want_usual) {
  StreamRng rng(cfg.seed, stream, rep);
  auto [a, b] = gen_paired(key.m, key.rho, key.rho_pair, std::sqrt(cfg.sigma2), mean_a, {}, rng);
  Outcome out;
  try {
    if (is_paired(cfg.kind)) {
      Series d;
      d.label = "A-B";
      d.values.resize(key.m);
      for (std::size_t j = 0; j < key.m; ++j) d.values[j] = a.values[j] - b.values[j];
      if (want_serial) {
        const TestResult s = run_test(cfg.kind, Method::Serial, d, nullptr, cfg.side);
        out.serial_reject = s.p_value < cfg.alpha;
        out.r = s.rho_used;
      }
      if (want_usual) {
        out.usual_reject = run_test(cfg.kind, Method::Usual, d, nullptr, cfg.side).p_value < cfg.alpha;
      }
    } else {
      if (want_serial) {
        const TestResult s = run_test(cfg.kind, Method::Serial, a, &b, cfg.side);
        out.serial_reject = s.p_value < cfg.alpha;
        out.r = s.rho_used;
      }
      if (want_usual) {
        out.usual_reject = run_test(cfg.kind, Method::Usual, a, &b, cfg.side).p_value < cfg.alpha;
      }
    }
    out.valid = true;
  } catch (const DegenerateDataError&) {
    out.valid = false;
  }
  return out;
}

double mcse(double p, std::size_t n) {
  return n == 0 ? 0.0 : std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

// Simulated rejection rate of one method at effect delta (sigma units).
double probe_power(const McConfig& cfg, const McCellKey& key, Method method, double delta,
                   const RunOptions& options) {
  if (cfg.side == TailSide::Lower) delta = -delta;
  const auto mean_a = effect_means(cfg, key, delta, EffectScale::Sigma);
  const std::uint64_t stream = cell_stream(cfg.kind, key, kPurposeEffectSearch);
  std::vector<Outcome> outcomes(cfg.replicates);
  const bool serial = method == Method::Serial;
  parallel_for(cfg.replicates, options.threads, [&](std::size_t i) {
    outcomes[i] = simulate_replicate(cfg, key, stream, i, mean_a, serial, !serial);
  });
  std::size_t valid = 0;
  std::size_t rejected = 0;
  for (const auto& o : outcomes) {
    if (!o.valid) continue;
    ++valid;
    rejected += serial ? o.serial_reject : o.usual_reject;
  }
  if (valid == 0) throw DegenerateDataError("every replicate in the cell was degenerate");
  return static_cast<double>(rejected) / static_cast<double>(valid);
}

}  // namespace

StreamRng::StreamRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream) noexcept
    : state_(mix64(mix64(mix64(seed) ^ (stream + kGolden)) ^ (substream * kGolden + 1))) {}

StreamRng::result_type StreamRng::operator()() noexcept {
  state_ += kGolden;
  return mix64(state_);
}

McConfig McConfig::defaults(TestKind kind, std::uint64_t seed) {
  McConfig c;
  c.kind = kind;
  c.seed = seed;
  for (std::size_t m = minimum_length(kind); m <= 12; ++m) c.m_values.push_back(m);
  for (std::size_t m : {30, 50, 100}) c.m_values.push_back(m);
  c.rho_values = {-0.33, 0.0, 0.33, 0.67};
  if (is_paired(kind)) {
    c.rho_pair_values = {0.33, 0.67};
  } else {
    c.rho_pair_values = {0.0};
  }
  return c;
}

void validate(const McConfig& c) {
  if (c.replicates < 1) throw ValidationError("replicates must be at least 1");
  if (c.m_values.empty() || c.rho_values.empty() || c.rho_pair_values.empty()) {
    throw ValidationError("m, rho and rho_pair value sets must be non-empty");
  }
  for (std::size_t m : c.m_values) check_minimum_size(c.kind, m, m);
  for (double r : c.rho_values) {
    if (!(std::abs(r) < 1.0)) throw ValidationError("rho values must lie in (-1, 1)");
  }
  for (double r : c.rho_pair_values) {
    if (!(r >= 0.0 && r < 1.0)) throw ValidationError("rho_pair values must lie in [0, 1)");
  }
  if (!(c.sigma2 > 0.0) || !std::isfinite(c.sigma2)) throw ValidationError("sigma2 must be positive");
  if (!(c.alpha > 0.0 && c.alpha <= 0.5)) throw ValidationError("alpha must be in (0, 0.5]");
  if (c.effect && !std::isfinite(c.effect->value)) throw ValidationError("effect must be finite");
}

std::vector<McCellKey> cells_of(const McConfig& c) {
  std::vector<McCellKey> out;
  for (std::size_t m : c.m_values) {
    for (double rho : c.rho_values) {
      for (double rp : c.rho_pair_values) out.push_back({m, rho, rp});
    }
  }
  return out;
}

McSummary run_monte_carlo(const McConfig& config, RunOptions options) {
  validate(config);
  McSummary summary;
  summary.config = config;
  std::vector<Outcome> outcomes(config.replicates);
  for (const McCellKey& key : cells_of(config)) {
    const auto mean_a = config.effect
                            ? effect_means(config, key, config.effect->value, config.effect->scale)
                            : std::vector<double>{};
    const std::uint64_t stream = cell_stream(config.kind, key, kPurposeRates);
    parallel_for(config.replicates, options.threads, [&](std::size_t i) {
      outcomes[i] = simulate_replicate(config, key, stream, i, mean_a, true, true);
    });

    McCell cell;
    cell.key = key;
    cell.replicates = config.replicates;
    std::size_t valid = 0;
    std::size_t serial = 0;
    std::size_t usual = 0;
    double r_sum = 0.0;
    for (const auto& o : outcomes) {
      if (!o.valid) {
        ++cell.excluded;
        continue;
      }
      ++valid;
      serial += o.serial_reject;
      usual += o.usual_reject;
      r_sum += o.r;
    }
    if (valid > 0) {
      cell.serial_rate = static_cast<double>(serial) / static_cast<double>(valid);
      cell.usual_rate = static_cast<double>(usual) / static_cast<double>(valid);
      cell.mean_r = r_sum / static_cast<double>(valid);
    }
    cell.serial_mcse = mcse(cell.serial_rate, valid);
    cell.usual_mcse = mcse(cell.usual_rate, valid);
    summary.cells.push_back(cell);
  }
  return summary;
}

double empirical_detectable_effect(const McConfig& config, const McCellKey& cell, Method method,
                                   double target_power, RunOptions options) {
  validate(config);
  if (!(target_power > config.alpha && target_power < 1.0)) {
    throw ValidationError("target power must lie in (alpha, 1)");
  }
  constexpr double kPowerTol = 0.005;
  // Bracket width relative to the theoretical effect. Rate effects are slopes
  // per time step and can be far below 0.005 sigma at large m.
  constexpr double kWidthTol = 0.005;
  constexpr double kMaxDelta = 100.0;
  constexpr int kMaxProbes = 60;

  PowerQuery q;
  q.kind = config.kind;
  q.m_a = cell.m;
  q.rho = clamp_rho(cell.rho);
  q.alpha = config.alpha;
  q.side = config.side;
  q.target_power = target_power;
  const double start = detectable_effect(q);
  const double width_tol = kWidthTol * start;

  auto power = [&](double delta) { return probe_power(config, cell, method, delta, options); };
  double lo = 0.0;
  double hi = std::max(2.0 * start, 0.25);
  int probes = 0;
  for (double pw = power(hi); pw < target_power; pw = power(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > kMaxDelta || ++probes > kMaxProbes) {
      throw ConvergenceError("simulated power never reached the target");
    }
  }
  while (probes++ < kMaxProbes) {
    const double mid = 0.5 * (lo + hi);
    const double pw = power(mid);
    if (std::abs(pw - target_power) <= kPowerTol) return mid;
    if (pw < target_power) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < width_tol) return 0.5 * (lo + hi);
  }
  throw ConvergenceError("empirical detectable effect search did not converge");
}

std::vector<EffectSizeCell> effect_size_grid(const McConfig& config, double target_power,
                                             RunOptions options) {
  validate(config);
  std::vector<EffectSizeCell> out;
  for (const McCellKey& key : cells_of(config)) {
    PowerQuery q;
    q.kind = config.kind;
    q.m_a = key.m;
    q.rho = clamp_rho(key.rho);
    q.alpha = config.alpha;
    q.side = config.side;
    q.target_power = target_power;
    EffectSizeCell cell;
    cell.key = key;
    cell.theoretical = detectable_effect(q);
    cell.serial_empirical = empirical_detectable_effect(config, key, Method::Serial, target_power, options);
    cell.usual_empirical = empirical_detectable_effect(config, key, Method::Usual, target_power, options);
    cell.serial_ratio = cell.serial_empirical / cell.theoretical;
    cell.usual_ratio = cell.usual_empirical / cell.theoretical;
    out.push_back(cell);
  }
  return out;
}

}  // namespace nof1
