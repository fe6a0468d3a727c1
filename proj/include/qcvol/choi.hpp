#pragma once

#include <array>
#include <complex>
#include <stdexcept>

namespace qcvol {

using Complex = std::complex<double>;

/// Choi coordinates of a general qubit channel: diagonal weights a, f in [0,1]
/// plus the five free complex entries.
struct GeneralChannelParams {
  double a = 0.5;
  double f = 0.5;
  Complex b, c, d, e, g;

  friend bool operator==(const GeneralChannelParams&, const GeneralChannelParams&) = default;
};

/// Choi coordinates of a unital qubit channel (9 real dimensions).
struct UnitalChannelParams {
  double a = 0.5;
  Complex b, c, d, e;

  friend bool operator==(const UnitalChannelParams&, const UnitalChannelParams&) = default;
};

/// 4x4 complex Hermitian matrix. Writes go through set(), which keeps the
/// lower triangle as the conjugate of the upper one and the diagonal real.
class HermitianMatrix4 {
 public:
  HermitianMatrix4() = default;

  static HermitianMatrix4 identity();
  static HermitianMatrix4 diagonal(double d0, double d1, double d2, double d3);

  const Complex& operator()(int i, int j) const { return entries_[i * 4 + j]; }

  /// Sets (i,j) and its mirror (j,i). Diagonal writes drop the imaginary part.
  void set(int i, int j, Complex value);

  const std::array<Complex, 16>& entries() const { return entries_; }

  friend bool operator==(const HermitianMatrix4&, const HermitianMatrix4&) = default;

 private:
  std::array<Complex, 16> entries_{};
};

class DegenerateMinorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

HermitianMatrix4 build_choi_general(const GeneralChannelParams& p);
HermitianMatrix4 build_choi_unital(const UnitalChannelParams& p);

/// det of the upper-left n x n block, n in 1..4, by cofactor expansion.
double leading_minor(const HermitianMatrix4& m, int n);

/// (det A1, det A2, det A3, det A4).
std::array<double, 4> leading_minors(const HermitianMatrix4& m);

/// Sylvester test: every leading principal minor strictly above tol.
bool is_positive_definite(const HermitianMatrix4& m, double tol = 0.0);

/// Adjugate of the upper-left n x n block (n in 1..3), row-major n*n entries.
std::array<Complex, 9> leading_adjugate(const HermitianMatrix4& m, int n);

/// Bordered-determinant split of the upper-left n x n block:
///   det(A_n) = corner * minor_det - quadratic_form,
/// where quadratic_form = x^H adj(A_{n-1}) x and x is the first n-1 entries
/// of column n.
struct SchurSplit {
  double corner = 0.0;
  double minor_det = 0.0;
  double quadratic_form = 0.0;

  double determinant() const { return corner * minor_det - quadratic_form; }
};

/// n in {2,3,4}. Throws DegenerateMinorError when |det A_{n-1}| < 1e-14.
SchurSplit schur_det_decomposition(const HermitianMatrix4& m, int n);

/// U^* Q U with U swapping basis vectors 2 and 3.
HermitianMatrix4 permute_general(const HermitianMatrix4& q);

/// U^* Q U with U cycling the first three basis vectors (1,2,3) -> (2,3,1).
HermitianMatrix4 permute_unital(const HermitianMatrix4& q);

}  // namespace qcvol
