#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qcvol/sample.hpp"

namespace qcvol {

/// Rejection-sampling volume estimate in the 2^7-scaled measure.
struct VolumeEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t n_trials = 0;
  std::uint64_t n_accepted = 0;
  /// Plain Lebesgue volume of the accepted region (value / 2^7).
  double lambda_volume = 0.0;
};

struct KsResult {
  double d_statistic = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

struct Histogram {
  std::vector<double> edges;
  std::vector<std::uint64_t> counts;
};

/// Sorted sample with an optional histogram.
class EmpiricalDistribution {
 public:
  EmpiricalDistribution() = default;
  explicit EmpiricalDistribution(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double mean() const;
  /// Standard error of the mean.
  double std_error() const;

  /// Equal-width bins over [lo, hi]; values outside are clamped into the end bins.
  const Histogram& bin(int bins, double lo, double hi);
  const std::optional<Histogram>& histogram() const { return histogram_; }

 private:
  std::vector<double> values_;
  std::optional<Histogram> histogram_;
};

class SampleTooSmallError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Survival function of the Kolmogorov distribution, P(K > lambda).
double kolmogorov_survival(double lambda);

/// One-sample KS test against a continuous CDF. Requires n >= 100.
KsResult ks_test(const EmpiricalDistribution& e, const std::function<double(double)>& cdf);

/// Two-sample KS test with effective size n m / (n + m) >= 100.
KsResult ks_test_two_sample(const EmpiricalDistribution& x, const EmpiricalDistribution& y);

/// Splits n trials over `workers` streams (seed, 0..workers-1).
VolumeEstimate estimate_volume(ChannelKind kind, std::uint64_t n, std::uint64_t seed,
                               int workers = 1);

/// Bloch radii of (0,0,r0) pushed through n sequentially sampled channels.
EmpiricalDistribution pushforward_radii(ChannelKind kind, double r0, std::size_t n,
                                        std::uint64_t seed, int workers = 1);

/// For each of rotation_count random rotations O, two KS results in order:
/// z-marginal of O o Q vs Q on the maximally mixed state, then Q o O vs Q on
/// (0,0,0.7). Both arms use the same n channels. `contraction` multiplies the
/// transformed affine map (v and T); values != 1 give a non-measure-preserving
/// negative control.
std::vector<KsResult> invariance_test(int rotation_count, std::size_t n, std::uint64_t seed,
                                      double contraction = 1.0);

struct DynamicsStep {
  double mean_radius = 0.0;
  double std_error = 0.0;
};

/// Mean Bloch radius after each of `steps` applications of fresh random channels.
std::vector<DynamicsStep> iterate_dynamics(ChannelKind kind, double r0, int steps,
                                           std::size_t ensemble, std::uint64_t seed,
                                           int workers = 1);

/// Radius r* with mean_radius_general(r*) = r*, by bisection on [0.2, 0.5].
double fixed_point_radius();

}  // namespace qcvol
