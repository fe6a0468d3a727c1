#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace qcvol {

/// Sampled curve y = f(x) on an increasing grid, with the integral of f over
/// the grid range kept alongside.
struct DensityCurve {
  std::vector<double> grid;
  std::vector<double> values;
  double normalization = 1.0;
};

DensityCurve tabulate(const std::function<double(double)>& f, double lo, double hi, int points,
                      std::vector<double> seams = {});

// Volumes in the 2^7-scaled Lebesgue measure on Choi coordinates.
double vol_general();  // 2 pi^5 / 4725
double vol_unital();   // 8 pi^4 / 945

/// Volume density over the underlying classical channel (a, f) in [0,1]^2.
/// Throws std::domain_error outside the unit square.
double v_af(double a, double f);

/// Volume density of unital channels over a in [0,1].
double v_a(double a);

/// Density of z' = a + f - 1, the image of the maximally mixed state, on [-1,1].
double eta_z(double z);
double eta_z_cdf(double z);

/// Bloch radius density of a uniformly random channel applied to the maximally mixed state.
double kappa_mm(double r);
double kappa_mm_cdf(double r);

/// Radius density for a uniformly random unital channel applied to radius r0.
double kappa_unital(double r, double r0);
double kappa_unital_cdf(double r, double r0);

/// Radius density for a uniformly random general channel applied to radius r0.
/// r0 = 0 is the continuous extension kappa_mm(r).
double kappa_general(double r, double r0);
double kappa_general_cdf(double r, double r0);

/// Density of the z component of the image of (0,0,r0); even in xi.
double fz_general(double xi, double r0);

/// P(z' < xi) for the image of (0,0,r0).
double cdf_z_general(double xi, double r0);

/// Radial density -2 r f'(r) of a spherically symmetric ball variable whose
/// z-marginal is f. Central differences with step h, kept inside (-1, 1).
double radial_from_marginal(const std::function<double(double)>& f, double r, double h = 1e-5);

/// Integral over {x in C^n : <x,Tx> < rho} of (rho - <x,Tx>)^k d lambda_{2n},
/// for Hermitian positive definite T given row-major with n in {1, 2}.
double ellipsoid_integral(std::span<const std::complex<double>> T, double rho, int k);

/// Mean output radius for input radius r0, by quadrature of r * kappa_general.
double mean_radius_general(double r0);

}  // namespace qcvol
