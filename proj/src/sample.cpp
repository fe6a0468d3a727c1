#include "qcvol/sample.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "qcvol/analytic.hpp"

namespace qcvol {

namespace {

constexpr double kPi = std::numbers::pi;

Complex disk_point(RngStream& rng, double radius) {
  const double r = radius * std::sqrt(rng.uniform());
  const double angle = 2.0 * kPi * rng.uniform();
  return std::polar(r, angle);
}

Complex phase(RngStream& rng) { return std::polar(1.0, 2.0 * kPi * rng.uniform()); }

Polynomial linear(double constant, double slope) { return Polynomial({constant, slope}); }

Polynomial power(const Polynomial& p, int k) {
  Polynomial out({1.0});
  for (int i = 0; i < k; ++i) out = out * p;
  return out;
}

using C2 = std::array<Complex, 2>;

/// Point of the unit ball in C^2 = R^4 with density proportional to (1 - |u|^2)^k.
/// In s = |u|^2 the radial law is proportional to s (1 - s)^k.
C2 ball4_point(RngStream& rng, int k) {
  double s;
  if (k == 0) {
    s = std::sqrt(rng.uniform());
  } else {
    s = sample_polynomial_density(Polynomial({0.0, 1.0}) * power(linear(1.0, -1.0), k), 0.0, 1.0,
                                  rng);
  }
  const auto [x1, x2] = rng.normal_pair();
  const auto [x3, x4] = rng.normal_pair();
  const double norm = std::sqrt(x1 * x1 + x2 * x2 + x3 * x3 + x4 * x4);
  const double scale = std::sqrt(s) / norm;
  return {Complex(x1 * scale, x2 * scale), Complex(x3 * scale, x4 * scale)};
}

/// 2x2 Hermitian positive definite form [[t11, t12], [conj(t12), t22]].
struct Form2 {
  double t11;
  Complex t12;
  double t22;

  double value(const C2& x) const {
    return t11 * std::norm(x[0]) + t22 * std::norm(x[1]) +
           2.0 * (std::conj(x[0]) * t12 * x[1]).real();
  }
};

/// Maps the unit ball onto {y : y^H T y <= rho} by y = sqrt(rho) L^{-H} u, T = L L^H.
C2 whiten(const Form2& t, double rho, const C2& u) {
  const double l11 = std::sqrt(t.t11);
  const Complex upper = t.t12 / l11;
  const double l22 = std::sqrt(t.t22 - std::norm(upper));
  const double scale = std::sqrt(rho);
  const Complex y2 = scale * u[1] / l22;
  const Complex y1 = (scale * u[0] - upper * y2) / l11;
  return {y1, y2};
}

}  // namespace

double general_box_volume() { return std::pow(kPi / 4.0, 3) * kPi * kPi; }

double unital_box_volume() { return std::pow(kPi / 4.0, 2) * kPi * kPi; }

double sample_polynomial_density(const Polynomial& density, double lo, double hi, RngStream& rng) {
  const Polynomial cdf = density.antiderivative();
  const double base = cdf(lo);
  const double target = base + rng.uniform() * (cdf(hi) - base);
  double left = lo, right = hi;
  while (right - left > 1e-12) {
    const double mid = 0.5 * (left + right);
    if (cdf(mid) < target) {
      left = mid;
    } else {
      right = mid;
    }
  }
  return 0.5 * (left + right);
}

double v_af_majorant() {
  static const double majorant = [] {
    constexpr int kGrid = 200;
    double best = 0.0, best_a = 0.5, best_f = 0.5;
    auto scan = [&](double a0, double f0, double half_width) {
      for (int i = 0; i <= kGrid; ++i) {
        for (int j = 0; j <= kGrid; ++j) {
          const double a = std::clamp(a0 - half_width + 2.0 * half_width * i / kGrid, 0.0, 1.0);
          const double f = std::clamp(f0 - half_width + 2.0 * half_width * j / kGrid, 0.0, 1.0);
          const double v = v_af(a, f);
          if (v > best) {
            best = v;
            best_a = a;
            best_f = f;
          }
        }
      }
    };
    scan(0.5, 0.5, 0.5);
    for (double width = 1.0 / kGrid; width > 1e-9; width /= kGrid / 4.0) scan(best_a, best_f, width);
    return best * (1.0 + 1e-6);
  }();
  return majorant;
}

std::optional<GeneralChannelParams> rejection_trial_general(RngStream& rng) {
  GeneralChannelParams p;
  p.a = rng.uniform();
  p.f = rng.uniform();
  const double a2 = 1.0 - p.a, f2 = 1.0 - p.f;
  p.c = disk_point(rng, 0.5);
  const double c2 = std::norm(p.c);
  // Leading 2x2 minor of the permuted matrix, and the 2x2 principal minor on the
  // complementary pair of indices.
  const double minor2 = p.a * p.f - c2;
  if (!(p.a > 0.0 && minor2 > 0.0 && a2 * f2 - c2 > 0.0)) return std::nullopt;
  p.b = disk_point(rng, 0.5);
  p.e = disk_point(rng, 1.0);
  const Form2 t2{p.f, -p.c, p.a};
  if (!(a2 * minor2 - t2.value({p.b, std::conj(p.e)}) > 0.0)) return std::nullopt;
  p.d = disk_point(rng, 1.0);
  p.g = disk_point(rng, 0.5);
  if (!is_positive_definite(permute_general(build_choi_general(p)), 0.0)) return std::nullopt;
  return p;
}

std::optional<UnitalChannelParams> rejection_trial_unital(RngStream& rng) {
  UnitalChannelParams p;
  p.a = rng.uniform();
  const double a2 = 1.0 - p.a;
  p.e = disk_point(rng, 1.0);
  const double minor2 = a2 * a2 - std::norm(p.e);
  if (!(a2 > 0.0 && minor2 > 0.0)) return std::nullopt;
  p.b = disk_point(rng, 0.5);
  p.c = disk_point(rng, 0.5);
  const Form2 t2{a2, -p.e, a2};
  if (!(p.a * minor2 - t2.value({std::conj(p.b), std::conj(p.c)}) > 0.0)) return std::nullopt;
  p.d = disk_point(rng, 1.0);
  if (!is_positive_definite(permute_unital(build_choi_unital(p)), 0.0)) return std::nullopt;
  return p;
}

GeneralChannelParams rejection_sample_general(RngStream& rng) {
  for (;;) {
    if (auto p = rejection_trial_general(rng)) return *p;
  }
}

UnitalChannelParams rejection_sample_unital(RngStream& rng) {
  for (;;) {
    if (auto p = rejection_trial_unital(rng)) return *p;
  }
}

GeneralChannelParams sequential_sample_general(RngStream& rng) {
  const double majorant = v_af_majorant();
  for (;;) {
    GeneralChannelParams p;
    // (a, f) from the classical-channel volume density.
    do {
      p.a = rng.uniform();
      p.f = rng.uniform();
    } while (!(rng.uniform() * majorant < v_af(p.a, p.f)));
    const double a2 = 1.0 - p.a, f2 = 1.0 - p.f;
    const double upper = a2 * f2, lower = p.a * p.f;
    const double c_max = std::min(upper, lower);
    if (!(c_max > 0.0)) continue;

    // |c|^2 with density (upper - s)^2 (lower - s)^2 on [0, c_max]; phase uniform.
    const Polynomial c_density = power(linear(upper, -1.0), 2) * power(linear(lower, -1.0), 2);
    const double c_sq = sample_polynomial_density(c_density, 0.0, c_max, rng);
    p.c = std::sqrt(c_sq) * phase(rng);
    const double minor2 = lower - c_sq;

    // (b, conj e) with density det A3 = R2 - <x, T2 x> on the ellipsoid.
    const Form2 t2{p.f, -p.c, p.a};
    const double r2 = a2 * minor2;
    const C2 be = whiten(t2, r2, ball4_point(rng, 1));
    p.b = be[0];
    p.e = std::conj(be[1]);
    const double minor3 = r2 - t2.value(be);
    if (!(minor3 > 0.0)) continue;

    // Shifted (d, g) uniform on the ellipsoid <y, T3 y> <= R3.
    const Form2 t3{a2 * p.f - std::norm(p.e), p.b * p.e - a2 * p.c, p.a * a2 - std::norm(p.b)};
    const double r3 = minor3 * (f2 - c_sq / a2);
    if (!(r3 > 0.0)) continue;
    const C2 dg = whiten(t3, r3, ball4_point(rng, 0));
    p.d = dg[0] - p.b * p.c / a2;
    p.g = dg[1] - p.c * std::conj(p.e) / a2;
    return p;
  }
}

UnitalChannelParams sequential_sample_unital(RngStream& rng) {
  static const Polynomial beta55 = power(Polynomial({0.0, 1.0}), 4) * power(linear(1.0, -1.0), 4);
  for (;;) {
    UnitalChannelParams p;
    p.a = sample_polynomial_density(beta55, 0.0, 1.0, rng);
    const double a2 = 1.0 - p.a;
    if (!(p.a > 0.0 && a2 > 0.0)) continue;

    // |e|^2 with density (a2^2 - s) on [0, a2^2].
    const double e_sq = sample_polynomial_density(linear(a2 * a2, -1.0), 0.0, a2 * a2, rng);
    p.e = std::sqrt(e_sq) * phase(rng);
    const double minor2 = a2 * a2 - e_sq;
    if (!(minor2 > 0.0)) continue;

    // (conj b, conj c) with density (R2 - <x, T2 x>)^2 on the ellipsoid.
    const Form2 t2{a2, -p.e, a2};
    const double r2 = p.a * minor2;
    const C2 bc = whiten(t2, r2, ball4_point(rng, 2));
    p.b = std::conj(bc[0]);
    p.c = std::conj(bc[1]);
    const double minor3 = r2 - t2.value(bc);
    if (!(minor3 > 0.0)) continue;

    // Shifted d uniform on the disk |d'| <= det A3 / det A2.
    const Complex shift =
        (2.0 * a2 * p.b * p.c - std::conj(p.e) * p.c * p.c - p.b * p.b * p.e) / minor2;
    p.d = disk_point(rng, minor3 / minor2) - shift;
    return p;
  }
}

}  // namespace qcvol
