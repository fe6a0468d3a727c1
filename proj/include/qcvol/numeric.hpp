#pragma once

#include <functional>
#include <span>
#include <vector>

namespace qcvol {

/// Evaluates sum_k coeffs[k] * x^k by Horner's rule.
double horner(std::span<const double> coeffs, double x);

/// Dense polynomial with ascending coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}

  double operator()(double x) const { return horner(coeffs_, x); }

  /// Antiderivative vanishing at 0.
  Polynomial antiderivative() const;
  Polynomial derivative() const;

  const std::vector<double>& coeffs() const { return coeffs_; }

  friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);

 private:
  std::vector<double> coeffs_;
};

/// Adaptive Simpson on [lo, hi] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi,
                        double tol = 1e-10, int max_depth = 50);

/// Adaptive Simpson over consecutive panels [breaks[i], breaks[i+1]].
/// Breakpoints outside [lo, hi] are ignored; seams of piecewise integrands go here.
double integrate_with_seams(const std::function<double(double)>& f, double lo, double hi,
                            std::vector<double> seams, double tol = 1e-10);

/// Bisection for a root of a function that changes sign on [lo, hi].
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol);

}  // namespace qcvol
