#include "qcvol/analytic.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qcvol/numeric.hpp"

namespace qcvol {

namespace {

constexpr double kPi = std::numbers::pi;

void require_range(double x, double lo, double hi, const char* what) {
  if (!(x >= lo && x <= hi)) {
    throw std::domain_error(std::string(what) + ": argument " + std::to_string(x) +
                            " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

// z^4 + 7z^3 + 17z^2 + 7z + 1
constexpr std::array<double, 5> kEtaFactor{1.0, 7.0, 17.0, 7.0, 1.0};
// int_0^z eta, z >= 0
constexpr std::array<double, 13> kEtaIntegral{
    0.0, 20.0 / 11.0, 0.0, -20.0 / 3.0, 0.0, 36.0, -70.0, 60.0, -22.5, 0.0, 2.0, 0.0, -5.0 / 33.0};
// r^3 + 6r^2 + 12r + 2
constexpr std::array<double, 4> kKappaFactor{2.0, 12.0, 6.0, 1.0};
constexpr std::array<double, 13> kKappaCdf{
    0.0, 0.0, 0.0, 80.0 / 3.0, 0.0, -288.0, 700.0, -720.0, 315.0, 0.0, -36.0, 0.0, 10.0 / 3.0};
// int_0^t (315/16) s^2 (1 - s^2)^3 ds
constexpr std::array<double, 10> kUnitalCdf{
    0.0, 0.0, 0.0, 105.0 / 16.0, 0.0, -189.0 / 16.0, 0.0, 135.0 / 16.0, 0.0, -35.0 / 16.0};

// Branch of the (a, f) density valid for a + f <= 1, in the unnormalized
// form a^3 f^3 (a^2 f^2 - 5 a a' f f' + 10 a'^2 f'^2), with a' = 1 - a, f' = 1 - f.
double vaf_lower(double a, double f) {
  const double af = a * f;
  const double cf = (1.0 - a) * (1.0 - f);
  return af * af * af * (af * af - 5.0 * af * cf + 10.0 * cf * cf);
}

// z-marginal piece for xi > r0 (xi >= 0), see cdf_upper_tail.
double fz_outer(double xi, double r0) {
  const double r2 = r0 * r0;
  const double poly = 3.0 * std::pow(xi, 4) - 22.0 * xi * xi * r2 + 99.0 * r2 * r2 +
                      21.0 * std::pow(xi, 3) - 154.0 * xi * r2 + 51.0 * xi * xi - 22.0 * r2 +
                      21.0 * xi + 3.0;
  return 20.0 * std::pow(1.0 - xi, 7) / (33.0 * std::pow(1.0 - r2, 6)) * poly;
}

// z-marginal piece for 0 <= xi <= r0.
double fz_inner(double xi, double r0) {
  const double x2 = xi * xi, x4 = x2 * x2, x6 = x4 * x2;
  const double r2 = r0 * r0, r3 = r2 * r0, r4 = r2 * r2, r5 = r4 * r0, r6 = r4 * r2;
  const double poly = 231.0 * x6 - 99.0 * x4 * r2 + 33.0 * x2 * r4 - 5.0 * r6 - 594.0 * x4 * r0 +
                      198.0 * x2 * r3 - 30.0 * r5 + 396.0 * x2 * r2 - 72.0 * r4 + 66.0 * x2 * r0 -
                      82.0 * r3 - 36.0 * r2 - 6.0 * r0;
  return -10.0 / (33.0 * r0 * std::pow(1.0 + r0, 6)) * poly;
}

// P(z' >= xi) for xi > r0.
double cdf_upper_tail(double xi, double r0) {
  const double r2 = r0 * r0;
  const double poly = 10.0 * std::pow(xi, 4) - 88.0 * xi * xi * r2 + 495.0 * r2 * r2 +
                      80.0 * std::pow(xi, 3) - 704.0 * xi * r2 + 228.0 * xi * xi - 198.0 * r2 +
                      144.0 * xi + 33.0;
  return poly * std::pow(1.0 - xi, 8) / (66.0 * std::pow(1.0 - r2, 6));
}

// P(z' < xi) for |xi| <= r0.
double cdf_inner(double xi, double r0) {
  const double x2 = xi * xi, x3 = x2 * xi, x5 = x3 * x2, x7 = x5 * x2;
  const double r2 = r0 * r0, r3 = r2 * r0, r4 = r2 * r2, r5 = r4 * r0, r6 = r4 * r2,
               r7 = r6 * r0;
  const double poly = 660.0 * x7 - 396.0 * x5 * r2 + 220.0 * x3 * r4 - 100.0 * xi * r6 -
                      33.0 * r7 - 2376.0 * x5 * r0 + 1320.0 * x3 * r3 - 600.0 * xi * r5 -
                      198.0 * r6 + 2640.0 * x3 * r2 - 1440.0 * xi * r4 - 495.0 * r5 +
                      440.0 * x3 * r0 - 1640.0 * xi * r3 - 660.0 * r4 - 720.0 * xi * r2 -
                      495.0 * r3 - 120.0 * xi * r0 - 198.0 * r2 - 33.0 * r0;
  return -poly / (66.0 * r0 * std::pow(1.0 + r0, 6));
}

}  // namespace

DensityCurve tabulate(const std::function<double(double)>& f, double lo, double hi, int points,
                      std::vector<double> seams) {
  if (points < 2) throw std::invalid_argument("tabulate: need at least 2 grid points");
  DensityCurve curve;
  curve.grid.reserve(points);
  curve.values.reserve(points);
  for (int i = 0; i < points; ++i) {
    const double x = (i + 1 == points) ? hi : lo + (hi - lo) * i / (points - 1);
    curve.grid.push_back(x);
    curve.values.push_back(f(x));
  }
  curve.normalization = integrate_with_seams(f, lo, hi, std::move(seams));
  return curve;
}

double vol_general() { return 2.0 * std::pow(kPi, 5) / 4725.0; }

double vol_unital() { return 8.0 * std::pow(kPi, 4) / 945.0; }

double v_af(double a, double f) {
  require_range(a, 0.0, 1.0, "v_af");
  require_range(f, 0.0, 1.0, "v_af");
  const double scale = 16.0 * std::pow(kPi, 5) / 45.0;
  if (a + f <= 1.0) return scale * vaf_lower(a, f);
  return scale * vaf_lower(1.0 - a, 1.0 - f);
}

double v_a(double a) {
  require_range(a, 0.0, 1.0, "v_a");
  const double p = a * (1.0 - a);
  return 16.0 * std::pow(kPi, 4) / 3.0 * p * p * p * p;
}

double eta_z(double z) {
  require_range(z, -1.0, 1.0, "eta_z");
  const double t = std::abs(z);
  return 20.0 / 11.0 * horner(kEtaFactor, t) * std::pow(1.0 - t, 7);
}

double eta_z_cdf(double z) {
  require_range(z, -1.0, 1.0, "eta_z_cdf");
  const double half = horner(kEtaIntegral, std::abs(z));
  return clamp01(z >= 0.0 ? 0.5 + half : 0.5 - half);
}

double kappa_mm(double r) {
  require_range(r, 0.0, 1.0, "kappa_mm");
  return 40.0 * r * r * std::pow(1.0 - r, 6) * horner(kKappaFactor, r);
}

double kappa_mm_cdf(double r) {
  require_range(r, 0.0, 1.0, "kappa_mm_cdf");
  return clamp01(horner(kKappaCdf, r));
}

double kappa_unital(double r, double r0) {
  require_range(r, 0.0, 1.0, "kappa_unital");
  if (!(r0 > 0.0 && r0 <= 1.0)) throw std::domain_error("kappa_unital: r0 must lie in (0, 1]");
  if (r >= r0) return 0.0;
  const double gap = r0 * r0 - r * r;
  return 315.0 / 16.0 * r * r * gap * gap * gap / std::pow(r0, 9);
}

double kappa_unital_cdf(double r, double r0) {
  require_range(r, 0.0, 1.0, "kappa_unital_cdf");
  if (!(r0 > 0.0 && r0 <= 1.0)) throw std::domain_error("kappa_unital_cdf: r0 must lie in (0, 1]");
  if (r >= r0) return 1.0;
  return clamp01(horner(kUnitalCdf, r / r0));
}

double kappa_general(double r, double r0) {
  require_range(r, 0.0, 1.0, "kappa_general");
  require_range(r0, 0.0, 1.0, "kappa_general");
  if (r0 == 0.0) return kappa_mm(r);
  const double r2 = r * r, q2 = r0 * r0;
  if (r <= r0) {
    const double poly = 21.0 * r2 * r2 - 6.0 * r2 * q2 - 36.0 * r2 * r0 + q2 * q2 +
                        6.0 * q2 * r0 + 12.0 * q2 + 2.0 * r0;
    return 40.0 * r2 / (r0 * std::pow(1.0 + r0, 6)) * poly;
  }
  const double poly = 21.0 * q2 * q2 - 6.0 * r2 * q2 - 36.0 * r * q2 + r2 * r2 + 6.0 * r2 * r +
                      12.0 * r2 + 2.0 * r;
  return 40.0 * r * std::pow(r - 1.0, 6) / std::pow(1.0 - q2, 6) * poly;
}

double kappa_general_cdf(double r, double r0) {
  require_range(r, 0.0, 1.0, "kappa_general_cdf");
  require_range(r0, 0.0, 1.0, "kappa_general_cdf");
  if (r0 == 0.0) return kappa_mm_cdf(r);
  // Integrating -2 s f'(s) by parts: P(|X| < r) = 2 F_z(r) - 1 - 2 r f_z(r).
  return clamp01(2.0 * cdf_z_general(r, r0) - 1.0 - 2.0 * r * fz_general(r, r0));
}

double fz_general(double xi, double r0) {
  require_range(xi, -1.0, 1.0, "fz_general");
  require_range(r0, 0.0, 1.0, "fz_general");
  if (r0 == 0.0) return eta_z(xi);
  const double t = std::abs(xi);
  return t <= r0 ? fz_inner(t, r0) : fz_outer(t, r0);
}

double cdf_z_general(double xi, double r0) {
  require_range(xi, -1.0, 1.0, "cdf_z_general");
  require_range(r0, 0.0, 1.0, "cdf_z_general");
  if (r0 == 0.0) return eta_z_cdf(xi);
  if (xi < -r0) return clamp01(cdf_upper_tail(-xi, r0));
  if (xi <= r0) return clamp01(cdf_inner(xi, r0));
  return clamp01(1.0 - cdf_upper_tail(xi, r0));
}

double radial_from_marginal(const std::function<double(double)>& f, double r, double h) {
  if (!(r > 0.0 && r < 1.0)) throw std::domain_error("radial_from_marginal: r must lie in (0, 1)");
  const double step = std::min(h, 0.5 * (1.0 - r));
  const double derivative = (f(r + step) - f(r - step)) / (2.0 * step);
  return -2.0 * r * derivative;
}

double ellipsoid_integral(std::span<const std::complex<double>> T, double rho, int k) {
  if (!(rho > 0.0)) throw std::domain_error("ellipsoid_integral: rho must be positive");
  if (k < 0) throw std::domain_error("ellipsoid_integral: k must be nonnegative");
  int n = 0;
  double det = 0.0;
  if (T.size() == 1) {
    n = 1;
    det = T[0].real();
    if (std::abs(T[0].imag()) > 1e-12 || !(det > 0.0)) {
      throw std::domain_error("ellipsoid_integral: T must be positive definite");
    }
  } else if (T.size() == 4) {
    n = 2;
    if (std::abs(T[1] - std::conj(T[2])) > 1e-12 || std::abs(T[0].imag()) > 1e-12 ||
        std::abs(T[3].imag()) > 1e-12) {
      throw std::domain_error("ellipsoid_integral: T must be Hermitian");
    }
    det = T[0].real() * T[3].real() - std::norm(T[1]);
    if (!(T[0].real() > 0.0 && det > 0.0)) {
      throw std::domain_error("ellipsoid_integral: T must be positive definite");
    }
  } else {
    throw std::domain_error("ellipsoid_integral: only 1x1 and 2x2 forms are supported");
  }
  // pi^n rho^{n+k} k! / ((n+k)! det T)
  return std::pow(kPi, n) * std::pow(rho, n + k) * std::tgamma(k + 1.0) /
         (std::tgamma(n + k + 1.0) * det);
}

double mean_radius_general(double r0) {
  require_range(r0, 0.0, 1.0, "mean_radius_general");
  return integrate_with_seams([r0](double r) { return r * kappa_general(r, r0); }, 0.0, 1.0, {r0},
                              1e-12);
}

}  // namespace qcvol
