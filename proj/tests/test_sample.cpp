#include <gtest/gtest.h>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "qcvol/analytic.hpp"
#include "qcvol/mc.hpp"
#include "qcvol/repr.hpp"
#include "qcvol/sample.hpp"

namespace qcvol {
namespace {

using Getter = std::function<double(const GeneralChannelParams&)>;
using UnitalGetter = std::function<double(const UnitalChannelParams&)>;

const std::vector<std::pair<const char*, Getter>>& general_coordinates() {
  static const std::vector<std::pair<const char*, Getter>> coords = {
      {"a", [](const auto& p) { return p.a; }},
      {"f", [](const auto& p) { return p.f; }},
      {"b1", [](const auto& p) { return p.b.real(); }},
      {"b2", [](const auto& p) { return p.b.imag(); }},
      {"c1", [](const auto& p) { return p.c.real(); }},
      {"c2", [](const auto& p) { return p.c.imag(); }},
      {"d1", [](const auto& p) { return p.d.real(); }},
      {"d2", [](const auto& p) { return p.d.imag(); }},
      {"e1", [](const auto& p) { return p.e.real(); }},
      {"e2", [](const auto& p) { return p.e.imag(); }},
      {"g1", [](const auto& p) { return p.g.real(); }},
      {"g2", [](const auto& p) { return p.g.imag(); }},
  };
  return coords;
}

const std::vector<std::pair<const char*, UnitalGetter>>& unital_coordinates() {
  static const std::vector<std::pair<const char*, UnitalGetter>> coords = {
      {"a", [](const auto& p) { return p.a; }},
      {"b1", [](const auto& p) { return p.b.real(); }},
      {"b2", [](const auto& p) { return p.b.imag(); }},
      {"c1", [](const auto& p) { return p.c.real(); }},
      {"c2", [](const auto& p) { return p.c.imag(); }},
      {"d1", [](const auto& p) { return p.d.real(); }},
      {"d2", [](const auto& p) { return p.d.imag(); }},
      {"e1", [](const auto& p) { return p.e.real(); }},
      {"e2", [](const auto& p) { return p.e.imag(); }},
  };
  return coords;
}

template <typename Params, typename F>
EmpiricalDistribution collect(const std::vector<Params>& samples, F&& get) {
  std::vector<double> v;
  v.reserve(samples.size());
  for (const auto& p : samples) v.push_back(get(p));
  return EmpiricalDistribution(std::move(v));
}

double beta55_cdf(double x) { return boost::math::ibeta(5.0, 5.0, std::clamp(x, 0.0, 1.0)); }

// Accepted rejection samples are expensive; draw them once for the whole suite.
class RejectionSamples : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    RngStream rng(51, 0);
    general_.reserve(100000);
    for (int i = 0; i < 100000; ++i) general_.push_back(rejection_sample_general(rng));
    RngStream urng(51, 1);
    unital_.reserve(10000);
    for (int i = 0; i < 10000; ++i) unital_.push_back(rejection_sample_unital(urng));
  }
  static std::vector<GeneralChannelParams> general_;
  static std::vector<UnitalChannelParams> unital_;
};

std::vector<GeneralChannelParams> RejectionSamples::general_;
std::vector<UnitalChannelParams> RejectionSamples::unital_;

TEST(Rng, StreamsAreReproducibleAndDistinct) {
  RngStream x(7, 3), y(7, 3), z(7, 4), w(8, 3);
  int same_z = 0, same_w = 0;
  for (int i = 0; i < 1000; ++i) {
    const double u = x.uniform();
    EXPECT_EQ(u, y.uniform());
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    same_z += u == z.uniform();
    same_w += u == w.uniform();
  }
  EXPECT_EQ(same_z, 0);
  EXPECT_EQ(same_w, 0);
  EXPECT_EQ(x.draws(), 1000u);
  EXPECT_EQ(x.seed(), 7u);
  EXPECT_EQ(x.stream_id(), 3u);
}

TEST(Rng, UniformAndNormalMoments) {
  RngStream rng(52, 0);
  const int n = 200000;
  double su = 0, su2 = 0, sn = 0, sn2 = 0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    su += u;
    su2 += u * u;
    const auto [g1, g2] = rng.normal_pair();
    sn += g1 + g2;
    sn2 += g1 * g1 + g2 * g2;
  }
  EXPECT_NEAR(su / n, 0.5, 4 * std::sqrt(1.0 / 12 / n));
  EXPECT_NEAR(su2 / n, 1.0 / 3, 4 * std::sqrt(4.0 / 45 / n));
  EXPECT_NEAR(sn / (2 * n), 0.0, 4 / std::sqrt(2.0 * n));
  EXPECT_NEAR(sn2 / (2 * n), 1.0, 4 * std::sqrt(2.0 / (2 * n)));
}

TEST(Sample, SamplersAreDeterministic) {
  RngStream x(53, 2), y(53, 2);
  for (int i = 0; i < 200; ++i) {
    EXPECT_EQ(sequential_sample_general(x), sequential_sample_general(y));
    EXPECT_EQ(sequential_sample_unital(x), sequential_sample_unital(y));
  }
  RngStream p(53, 5), q(53, 5);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(rejection_sample_general(p), rejection_sample_general(q));
  for (int i = 0; i < 10; ++i) EXPECT_EQ(rejection_sample_unital(p), rejection_sample_unital(q));
}

TEST(Sample, BoxVolumes) {
  const double pi = std::numbers::pi;
  EXPECT_NEAR(general_box_volume(), std::pow(pi / 4, 3) * pi * pi, 1e-15);
  EXPECT_NEAR(general_box_volume(), 4.78156, 1e-5);
  EXPECT_NEAR(unital_box_volume(), std::pow(pi / 4, 2) * pi * pi, 1e-15);
  EXPECT_NEAR(unital_box_volume(), 6.08807, 1e-5);
}

TEST(Sample, RejectionAcceptanceRates) {
  struct Case {
    std::function<bool(RngStream&)> trial;
    double p;
    std::uint64_t n;
  };
  const Case cases[] = {
      {[](RngStream& r) { return rejection_trial_general(r).has_value(); },
       vol_general() / 128.0 / general_box_volume(), 4000000},
      {[](RngStream& r) { return rejection_trial_unital(r).has_value(); },
       vol_unital() / 128.0 / unital_box_volume(), 2000000},
  };
  EXPECT_NEAR(cases[0].p, 2.116e-4, 1e-6);
  EXPECT_NEAR(cases[1].p, 1.058e-3, 1e-6);
  for (const auto& c : cases) {
    RngStream rng(54, 0);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < c.n; ++i) hits += c.trial(rng);
    const double expected = c.p * static_cast<double>(c.n);
    EXPECT_NEAR(static_cast<double>(hits), expected, 3 * std::sqrt(expected * (1 - c.p)));
  }
}

TEST(Sample, RejectionTrialsStayInBox) {
  RngStream rng(55, 0);
  int accepted = 0;
  while (accepted < 200) {
    if (auto p = rejection_trial_general(rng)) {
      ++accepted;
      EXPECT_LE(std::abs(p->b), 0.5);
      EXPECT_LE(std::abs(p->c), 0.5);
      EXPECT_LE(std::abs(p->g), 0.5);
      EXPECT_LE(std::abs(p->d), 1.0);
      EXPECT_LE(std::abs(p->e), 1.0);
      EXPECT_LE(std::norm(p->c), std::min(p->a * p->f, (1 - p->a) * (1 - p->f)));
    }
  }
}

TEST(Sample, SequentialOutputsArePositiveDefinite) {
  RngStream rng(56, 0);
  for (int i = 0; i < 100000; ++i) {
    const auto p = sequential_sample_general(rng);
    ASSERT_TRUE(is_positive_definite(build_choi_general(p), 0.0)) << i;
    ASSERT_TRUE(is_positive_definite(permute_general(build_choi_general(p)), 0.0)) << i;
    const auto u = sequential_sample_unital(rng);
    ASSERT_TRUE(is_positive_definite(build_choi_unital(u), 0.0)) << i;
    const auto v = to_affine(embed_unital(u)).v;
    ASSERT_EQ(v[0], 0.0);
    ASSERT_EQ(v[1], 0.0);
    ASSERT_EQ(v[2], 0.0);
  }
}

TEST(Sample, LastMinorSplitsAroundShiftedCorner) {
  // det A4 = R3 - <(d', g'), T3 (d', g')> with d' = d + b c / a2, g' = g + c conj(e) / a2,
  // R3 = det A3 (f2 - |c|^2 / a2); unital: det A4 = det A3^2 / det A2 - |d'|^2 det A2.
  RngStream rng(57, 0);
  for (int i = 0; i < 2000; ++i) {
    const auto p = sequential_sample_general(rng);
    const auto a = permute_general(build_choi_general(p));
    const double a2 = 1 - p.a, f2 = 1 - p.f;
    const double det3 = leading_minor(a, 3);
    const Complex dp = p.d + p.b * p.c / a2;
    const Complex gp = p.g + p.c * std::conj(p.e) / a2;
    const double t11 = a2 * p.f - std::norm(p.e), t22 = p.a * a2 - std::norm(p.b);
    const Complex t12 = p.b * p.e - a2 * p.c;
    const double form =
        t11 * std::norm(dp) + t22 * std::norm(gp) + 2 * (std::conj(dp) * t12 * gp).real();
    const double r3 = det3 * (f2 - std::norm(p.c) / a2);
    EXPECT_NEAR(r3 - form, leading_minor(a, 4), 1e-12);
    EXPECT_NEAR(t11 * t22 - std::norm(t12), a2 * det3, 1e-12);

    const auto u = sequential_sample_unital(rng);
    const auto au = permute_unital(build_choi_unital(u));
    const double det2 = leading_minor(au, 2), det3u = leading_minor(au, 3);
    const double ua2 = 1 - u.a;
    EXPECT_NEAR(det2, ua2 * ua2 - std::norm(u.e), 1e-14);
    const Complex d2 =
        u.d + (2.0 * u.b * u.c * ua2 - std::conj(u.e) * u.c * u.c - u.b * u.b * u.e) / det2;
    EXPECT_NEAR(det3u * det3u / det2 - std::norm(d2) * det2, leading_minor(au, 4),
                1e-12 * std::max(1.0, det3u * det3u / det2));
  }
}

TEST(Sample, PolynomialDensitySampler) {
  RngStream rng(58, 0);
  // Density 3 x^2 on [0, 1]: CDF x^3.
  std::vector<double> xs;
  for (int i = 0; i < 20000; ++i) {
    xs.push_back(sample_polynomial_density(Polynomial({0.0, 0.0, 1.0}), 0.0, 1.0, rng));
  }
  const auto ks = ks_test(EmpiricalDistribution(xs), [](double x) { return x * x * x; });
  EXPECT_GT(ks.p_value, 0.01);
  // Subinterval and a shifted density (1 + x) on [1, 2]: CDF ((1+x)^2 - 4) / 5.
  xs.clear();
  for (int i = 0; i < 20000; ++i) {
    const double x = sample_polynomial_density(Polynomial({1.0, 1.0}), 1.0, 2.0, rng);
    ASSERT_GE(x, 1.0);
    ASSERT_LE(x, 2.0);
    xs.push_back(x);
  }
  const auto ks2 =
      ks_test(EmpiricalDistribution(xs), [](double x) { return ((1 + x) * (1 + x) - 4) / 5; });
  EXPECT_GT(ks2.p_value, 0.01);
}

TEST(Sample, MajorantBoundsVaf) {
  const double m = v_af_majorant();
  EXPECT_NEAR(m, std::pow(std::numbers::pi, 5) / 480.0, 1e-5);
  for (int i = 0; i <= 200; ++i) {
    for (int j = 0; j <= 200; ++j) EXPECT_LE(v_af(i / 200.0, j / 200.0), m);
  }
}

TEST(Sample, SequentialGeneralZMarginalMatchesEta) {
  RngStream rng(59, 0);
  std::vector<double> z;
  for (int i = 0; i < 20000; ++i) {
    const auto p = sequential_sample_general(rng);
    z.push_back(p.a + p.f - 1.0);
  }
  EXPECT_GT(ks_test(EmpiricalDistribution(z), eta_z_cdf).p_value, 0.01);
}

TEST(Sample, SequentialUnitalAMarginalIsBeta55) {
  RngStream rng(60, 0);
  std::vector<double> a;
  for (int i = 0; i < 20000; ++i) a.push_back(sequential_sample_unital(rng).a);
  EmpiricalDistribution e(a);
  EXPECT_GT(ks_test(e, beta55_cdf).p_value, 0.01);
  EXPECT_NEAR(e.mean(), 0.5, 3 * std::sqrt(1.0 / 44 / a.size()));
  double var = 0.0;
  for (double x : a) var += (x - e.mean()) * (x - e.mean());
  var /= static_cast<double>(a.size() - 1);
  // Standard error of the sample variance is about sigma^2 sqrt(2 / n) here.
  EXPECT_NEAR(var, 1.0 / 44.0, 3 * std::sqrt(2.0 / a.size()) / 44.0);
}

TEST(Sample, RotationPreservesZMarginal) {
  RngStream rng(61, 0);
  const auto r = Rotation3::axis_angle({0.3, -0.5, 0.8}, 1.1);
  std::vector<double> z;
  for (int i = 0; i < 20000; ++i) {
    const auto m = to_affine(compose_rotation_post(sequential_sample_general(rng), r));
    z.push_back(m.v[2]);
  }
  EXPECT_GT(ks_test(EmpiricalDistribution(z), eta_z_cdf).p_value, 0.01);
}

TEST_F(RejectionSamples, AllSamplesPositiveDefinite) {
  for (const auto& p : general_) ASSERT_TRUE(is_positive_definite(build_choi_general(p), 0.0));
  for (const auto& p : unital_) ASSERT_TRUE(is_positive_definite(build_choi_unital(p), 0.0));
}

TEST_F(RejectionSamples, ClassicalMarginalChiSquare) {
  constexpr int bins = 10;
  std::vector<double> observed(bins * bins, 0.0);
  for (const auto& p : general_) {
    const int i = std::min(bins - 1, static_cast<int>(p.a * bins));
    const int j = std::min(bins - 1, static_cast<int>(p.f * bins));
    observed[i * bins + j] += 1;
  }
  // Cells expecting fewer than 5 counts are pooled into one.
  double chi2 = 0.0, pooled_observed = 0.0, pooled_expected = 0.0;
  int cells = 0;
  const double n = static_cast<double>(general_.size());
  for (int i = 0; i < bins; ++i) {
    for (int j = 0; j < bins; ++j) {
      const double a0 = static_cast<double>(i) / bins, a1 = static_cast<double>(i + 1) / bins;
      const double f0 = static_cast<double>(j) / bins, f1 = static_cast<double>(j + 1) / bins;
      const double mass = adaptive_simpson(
                              [&](double a) {
                                return integrate_with_seams([&](double f) { return v_af(a, f); },
                                                            f0, f1, {1.0 - a}, 1e-12);
                              },
                              a0, a1, 1e-12) /
                          vol_general();
      const double expected = n * mass;
      if (expected < 5.0) {
        pooled_observed += observed[i * bins + j];
        pooled_expected += expected;
        continue;
      }
      const double diff = observed[i * bins + j] - expected;
      chi2 += diff * diff / expected;
      ++cells;
    }
  }
  ASSERT_GT(pooled_expected, 5.0);
  chi2 += (pooled_observed - pooled_expected) * (pooled_observed - pooled_expected) / pooled_expected;
  ++cells;
  EXPECT_GT(cells, 80);
  const double dof = cells - 1;
  const double p = boost::math::gamma_q(dof / 2.0, chi2 / 2.0);
  EXPECT_GT(p, 0.01) << "chi2=" << chi2;
}

TEST_F(RejectionSamples, UnitalAMarginalIsBeta55) {
  EXPECT_GT(ks_test(collect(unital_, [](const auto& p) { return p.a; }), beta55_cdf).p_value, 0.01);
}

TEST_F(RejectionSamples, ZMarginalMatchesEta) {
  auto z = collect(general_, [](const auto& p) { return p.a + p.f - 1.0; });
  EXPECT_GT(ks_test(z, eta_z_cdf).p_value, 0.01);
}

TEST_F(RejectionSamples, GeneralSamplersAgreeCoordinatewise) {
  RngStream rng(62, 0);
  std::vector<GeneralChannelParams> seq;
  for (int i = 0; i < 10000; ++i) seq.push_back(sequential_sample_general(rng));
  const std::vector<GeneralChannelParams> rej(general_.begin(), general_.begin() + 10000);
  for (const auto& [name, get] : general_coordinates()) {
    const auto ks = ks_test_two_sample(collect(seq, get), collect(rej, get));
    EXPECT_GT(ks.p_value, 0.01) << name;
  }
}

TEST_F(RejectionSamples, UnitalSamplersAgreeCoordinatewise) {
  RngStream rng(63, 0);
  std::vector<UnitalChannelParams> seq;
  for (int i = 0; i < 10000; ++i) seq.push_back(sequential_sample_unital(rng));
  for (const auto& [name, get] : unital_coordinates()) {
    const auto ks = ks_test_two_sample(collect(seq, get), collect(unital_, get));
    EXPECT_GT(ks.p_value, 0.01) << name;
  }
}

}  // namespace
}  // namespace qcvol
