#include "qcvol/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcvol {

double horner(std::span<const double> coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::antiderivative() const {
  std::vector<double> out(coeffs_.size() + 1, 0.0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    out[k + 1] = coeffs_[k] / static_cast<double>(k + 1);
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial({0.0});
  std::vector<double> out(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) out[k - 1] = coeffs_[k] * static_cast<double>(k);
  return Polynomial(std::move(out));
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
  if (lhs.coeffs_.empty() || rhs.coeffs_.empty()) return Polynomial();
  std::vector<double> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
  }
  return Polynomial(std::move(out));
}

namespace {

struct Panel {
  double lo, mid, hi;
  double f_lo, f_mid, f_hi;
  double whole;
};

double simpson(double width, double f_lo, double f_mid, double f_hi) {
  return width / 6.0 * (f_lo + 4.0 * f_mid + f_hi);
}

double refine(const std::function<double(double)>& f, const Panel& p, double tol, int depth) {
  const double left_mid = 0.5 * (p.lo + p.mid);
  const double right_mid = 0.5 * (p.mid + p.hi);
  const double f_lm = f(left_mid);
  const double f_rm = f(right_mid);
  const double left = simpson(p.mid - p.lo, p.f_lo, f_lm, p.f_mid);
  const double right = simpson(p.hi - p.mid, p.f_mid, f_rm, p.f_hi);
  const double delta = left + right - p.whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return refine(f, {p.lo, left_mid, p.mid, p.f_lo, f_lm, p.f_mid, left}, 0.5 * tol, depth - 1) +
         refine(f, {p.mid, right_mid, p.hi, p.f_mid, f_rm, p.f_hi, right}, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi, double tol,
                        int max_depth) {
  if (hi == lo) return 0.0;
  // Seed with a few panels so that integrands vanishing at the 5 initial
  // nodes are not mistaken for zero.
  constexpr int kSeedPanels = 8;
  const double step = (hi - lo) / kSeedPanels;
  double total = 0.0;
  for (int i = 0; i < kSeedPanels; ++i) {
    const double a = lo + i * step;
    const double b = (i + 1 == kSeedPanels) ? hi : a + step;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    total += refine(f, {a, m, b, fa, fm, fb, simpson(b - a, fa, fm, fb)}, tol / kSeedPanels,
                    max_depth);
  }
  return total;
}

double integrate_with_seams(const std::function<double(double)>& f, double lo, double hi,
                            std::vector<double> seams, double tol) {
  std::vector<double> breaks{lo};
  std::sort(seams.begin(), seams.end());
  for (double s : seams) {
    if (s > breaks.back() && s < hi) breaks.push_back(s);
  }
  breaks.push_back(hi);
  const double panel_tol = tol / static_cast<double>(breaks.size() - 1);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    total += adaptive_simpson(f, breaks[i], breaks[i + 1], panel_tol);
  }
  return total;
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) throw std::invalid_argument("bisect: root not bracketed");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace qcvol
