#include "qcvol/mc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <thread>

#include "qcvol/analytic.hpp"
#include "qcvol/repr.hpp"

namespace qcvol {

namespace {

constexpr double kVolumeElement = 128.0;  // 2^7

void require_workers(int workers) {
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
}

std::uint64_t share(std::uint64_t total, int workers, int w) {
  const auto k = static_cast<std::uint64_t>(workers);
  return total / k + (static_cast<std::uint64_t>(w) < total % k ? 1 : 0);
}

/// Runs fn(worker) on each worker and returns results in worker order.
template <class Fn>
auto run_workers(int workers, Fn fn) {
  using Result = decltype(fn(0));
  std::vector<Result> results(static_cast<std::size_t>(workers));
  if (workers == 1) {
    results[0] = fn(0);
    return results;
  }
  {
    std::vector<std::jthread> pool;
    pool.reserve(results.size());
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&results, &fn, w] { results[static_cast<std::size_t>(w)] = fn(w); });
    }
  }
  return results;
}

GeneralChannelParams sample_channel(ChannelKind kind, RngStream& rng) {
  return kind == ChannelKind::general ? sequential_sample_general(rng)
                                      : embed_unital(sequential_sample_unital(rng));
}

Rotation3 random_rotation(RngStream& rng) {
  const auto [x, y] = rng.normal_pair();
  const auto [z, unused] = rng.normal_pair();
  (void)unused;
  const double angle = 2.0 * std::numbers::pi * rng.uniform();
  return Rotation3::axis_angle({x, y, z}, angle);
}

}  // namespace

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> values) : values_(std::move(values)) {
  std::sort(values_.begin(), values_.end());
}

double EmpiricalDistribution::mean() const {
  if (values_.empty()) return 0.0;
  return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

double EmpiricalDistribution::std_error() const {
  const std::size_t n = values_.size();
  if (n < 2) return 0.0;
  const double m = mean();
  double ss = 0.0;
  for (double v : values_) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
}

const Histogram& EmpiricalDistribution::bin(int bins, double lo, double hi) {
  if (bins < 1 || !(hi > lo)) throw std::invalid_argument("bin: need bins >= 1 and hi > lo");
  Histogram h;
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int i = 0; i <= bins; ++i) h.edges[i] = lo + (hi - lo) * i / bins;
  h.edges.back() = hi;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  for (double v : values_) {
    const auto idx = static_cast<long>(std::floor((v - lo) / (hi - lo) * bins));
    ++h.counts[static_cast<std::size_t>(std::clamp(idx, 0L, static_cast<long>(bins - 1)))];
  }
  histogram_ = std::move(h);
  return *histogram_;
}

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  constexpr int kTerms = 100;
  if (lambda < 0.2) {
    // Dual (theta-function) form; the alternating series converges too slowly here.
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double sum = 0.0;
    for (int k = 1; k <= kTerms; ++k) {
      const double odd = 2.0 * k - 1.0;
      sum += std::exp(-odd * odd * pi2 / (8.0 * lambda * lambda));
    }
    return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * sum, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int k = 1; k <= kTerms; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1) ? term : -term;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(const EmpiricalDistribution& e, const std::function<double(double)>& cdf) {
  const std::size_t n = e.size();
  if (n == 0) throw std::invalid_argument("ks_test: empty sample");
  if (n < 100) throw SampleTooSmallError("ks_test: asymptotic p-values need n >= 100");
  const double nd = static_cast<double>(n);
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = cdf(e.values()[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / nd - f, f - static_cast<double>(i) / nd});
  }
  return KsResult{d, kolmogorov_survival(std::sqrt(nd) * d), n};
}

KsResult ks_test_two_sample(const EmpiricalDistribution& x, const EmpiricalDistribution& y) {
  if (x.size() == 0 || y.size() == 0) throw std::invalid_argument("ks_test_two_sample: empty sample");
  const double n = static_cast<double>(x.size()), m = static_cast<double>(y.size());
  const double n_eff = n * m / (n + m);
  if (n_eff < 100.0) throw SampleTooSmallError("ks_test_two_sample: effective size below 100");
  const auto& xs = x.values();
  const auto& ys = y.values();
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < xs.size() && j < ys.size()) {
    const double t = std::min(xs[i], ys[j]);
    while (i < xs.size() && xs[i] <= t) ++i;
    while (j < ys.size() && ys[j] <= t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  return KsResult{d, kolmogorov_survival(std::sqrt(n_eff) * d),
                  static_cast<std::size_t>(std::llround(n_eff))};
}

VolumeEstimate estimate_volume(ChannelKind kind, std::uint64_t n, std::uint64_t seed, int workers) {
  if (n == 0) throw std::invalid_argument("estimate_volume: n must be >= 1");
  require_workers(workers);
  const auto accepted = run_workers(workers, [&](int w) {
    RngStream rng(seed, static_cast<std::uint64_t>(w));
    const std::uint64_t trials = share(n, workers, w);
    std::uint64_t hits = 0;
    if (kind == ChannelKind::general) {
      for (std::uint64_t t = 0; t < trials; ++t) hits += rejection_trial_general(rng).has_value();
    } else {
      for (std::uint64_t t = 0; t < trials; ++t) hits += rejection_trial_unital(rng).has_value();
    }
    return hits;
  });
  VolumeEstimate est;
  est.n_trials = n;
  est.n_accepted = std::accumulate(accepted.begin(), accepted.end(), std::uint64_t{0});
  const double box = kind == ChannelKind::general ? general_box_volume() : unital_box_volume();
  const double nd = static_cast<double>(n);
  const double rate = static_cast<double>(est.n_accepted) / nd;
  est.lambda_volume = box * rate;
  est.value = kVolumeElement * est.lambda_volume;
  est.std_error = est.value * std::sqrt((1.0 - rate) / std::max(1.0, nd * rate));
  return est;
}

EmpiricalDistribution pushforward_radii(ChannelKind kind, double r0, std::size_t n,
                                        std::uint64_t seed, int workers) {
  if (!(r0 >= 0.0 && r0 <= 1.0)) throw std::invalid_argument("pushforward_radii: r0 outside [0,1]");
  require_workers(workers);
  const auto parts = run_workers(workers, [&](int w) {
    RngStream rng(seed, static_cast<std::uint64_t>(w));
    const auto count = share(n, workers, w);
    std::vector<double> radii;
    radii.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
      radii.push_back(apply(to_affine(sample_channel(kind, rng)), BlochVector{0.0, 0.0, r0}).norm());
    }
    return radii;
  });
  std::vector<double> all;
  all.reserve(n);
  for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  return EmpiricalDistribution(std::move(all));
}

std::vector<KsResult> invariance_test(int rotation_count, std::size_t n, std::uint64_t seed,
                                      double contraction) {
  if (rotation_count < 1) throw std::invalid_argument("invariance_test: need at least one rotation");
  constexpr double kProbeRadius = 0.7;
  RngStream channel_rng(seed, 0);
  RngStream rotation_rng(seed, 1);

  std::vector<GeneralChannelParams> channels;
  channels.reserve(n);
  std::vector<double> mixed_z, probe_z;
  for (std::size_t i = 0; i < n; ++i) {
    channels.push_back(sequential_sample_general(channel_rng));
    const AffineMap m = to_affine(channels.back());
    mixed_z.push_back(m.v[2]);
    probe_z.push_back(m.v[2] + kProbeRadius * m.T[2][2]);
  }
  const EmpiricalDistribution mixed_ref(std::move(mixed_z));
  const EmpiricalDistribution probe_ref(std::move(probe_z));

  std::vector<KsResult> results;
  results.reserve(2 * static_cast<std::size_t>(rotation_count));
  for (int k = 0; k < rotation_count; ++k) {
    const Rotation3 rotation = random_rotation(rotation_rng);
    std::vector<double> post_z, pre_z;
    post_z.reserve(n);
    pre_z.reserve(n);
    for (const auto& q : channels) {
      const AffineMap post = to_affine(compose_rotation_post(q, rotation));
      const AffineMap pre = to_affine(compose_rotation_pre(q, rotation));
      post_z.push_back(contraction * post.v[2]);
      pre_z.push_back(contraction * (pre.v[2] + kProbeRadius * pre.T[2][2]));
    }
    results.push_back(ks_test_two_sample(EmpiricalDistribution(std::move(post_z)), mixed_ref));
    results.push_back(ks_test_two_sample(EmpiricalDistribution(std::move(pre_z)), probe_ref));
  }
  return results;
}

std::vector<DynamicsStep> iterate_dynamics(ChannelKind kind, double r0, int steps,
                                           std::size_t ensemble, std::uint64_t seed, int workers) {
  if (steps < 1) throw std::invalid_argument("iterate_dynamics: steps must be >= 1");
  if (ensemble < 1) throw std::invalid_argument("iterate_dynamics: ensemble must be >= 1");
  if (!(r0 >= 0.0 && r0 <= 1.0)) throw std::invalid_argument("iterate_dynamics: r0 outside [0,1]");
  require_workers(workers);
  struct Moments {
    std::vector<double> sum, sum_sq;
  };
  const auto parts = run_workers(workers, [&](int w) {
    RngStream rng(seed, static_cast<std::uint64_t>(w));
    Moments m{std::vector<double>(steps, 0.0), std::vector<double>(steps, 0.0)};
    const auto count = share(ensemble, workers, w);
    for (std::uint64_t t = 0; t < count; ++t) {
      BlochVector state{0.0, 0.0, r0};
      for (int s = 0; s < steps; ++s) {
        state = apply(to_affine(sample_channel(kind, rng)), state);
        const double r = state.norm();
        m.sum[s] += r;
        m.sum_sq[s] += r * r;
      }
    }
    return m;
  });
  const double nd = static_cast<double>(ensemble);
  std::vector<DynamicsStep> out(static_cast<std::size_t>(steps));
  for (int s = 0; s < steps; ++s) {
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& p : parts) {
      sum += p.sum[s];
      sum_sq += p.sum_sq[s];
    }
    const double mean = sum / nd;
    const double var = ensemble > 1 ? std::max(0.0, (sum_sq - nd * mean * mean) / (nd - 1.0)) : 0.0;
    out[s] = DynamicsStep{mean, std::sqrt(var / nd)};
  }
  return out;
}

double fixed_point_radius() {
  return bisect([](double r) { return mean_radius_general(r) - r; }, 0.2, 0.5, 1e-9);
}

}  // namespace qcvol
