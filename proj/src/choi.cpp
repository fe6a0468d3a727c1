#include "qcvol/choi.hpp"

#include <cassert>
#include <cmath>

namespace qcvol {

namespace {

using Index = std::array<int, 4>;

Complex det2(const HermitianMatrix4& m, const Index& r, const Index& c) {
  return m(r[0], c[0]) * m(r[1], c[1]) - m(r[0], c[1]) * m(r[1], c[0]);
}

Complex det3(const HermitianMatrix4& m, const Index& r, const Index& c) {
  return m(r[0], c[0]) * (m(r[1], c[1]) * m(r[2], c[2]) - m(r[1], c[2]) * m(r[2], c[1])) -
         m(r[0], c[1]) * (m(r[1], c[0]) * m(r[2], c[2]) - m(r[1], c[2]) * m(r[2], c[0])) +
         m(r[0], c[2]) * (m(r[1], c[0]) * m(r[2], c[1]) - m(r[1], c[1]) * m(r[2], c[0]));
}

Complex det4(const HermitianMatrix4& m) {
  // Laplace expansion along the last row.
  const Index rows{0, 1, 2, 0};
  Complex total = 0.0;
  for (int j = 0; j < 4; ++j) {
    Index cols{};
    for (int k = 0, out = 0; k < 4; ++k) {
      if (k != j) cols[out++] = k;
    }
    const double sign = ((3 + j) % 2 == 0) ? 1.0 : -1.0;
    total += sign * m(3, j) * det3(m, rows, cols);
  }
  return total;
}

double real_part(Complex z) {
  assert(std::abs(z.imag()) <= 1e-12 * std::max(1.0, std::abs(z.real())) &&
         "Hermitian minor with imaginary residue");
  return z.real();
}

HermitianMatrix4 permute(const HermitianMatrix4& q, const Index& perm) {
  HermitianMatrix4 out;
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) out.set(i, j, q(perm[i], perm[j]));
  }
  return out;
}

}  // namespace

HermitianMatrix4 HermitianMatrix4::identity() { return diagonal(1.0, 1.0, 1.0, 1.0); }

HermitianMatrix4 HermitianMatrix4::diagonal(double d0, double d1, double d2, double d3) {
  HermitianMatrix4 m;
  m.set(0, 0, d0);
  m.set(1, 1, d1);
  m.set(2, 2, d2);
  m.set(3, 3, d3);
  return m;
}

void HermitianMatrix4::set(int i, int j, Complex value) {
  if (i == j) {
    entries_[i * 4 + i] = Complex(value.real(), 0.0);
    return;
  }
  entries_[i * 4 + j] = value;
  entries_[j * 4 + i] = std::conj(value);
}

HermitianMatrix4 build_choi_general(const GeneralChannelParams& p) {
  HermitianMatrix4 q;
  q.set(0, 0, p.a);
  q.set(1, 1, 1.0 - p.a);
  q.set(2, 2, p.f);
  q.set(3, 3, 1.0 - p.f);
  q.set(0, 1, p.b);
  q.set(0, 2, p.c);
  q.set(0, 3, p.d);
  q.set(1, 2, p.e);
  q.set(1, 3, -p.c);
  q.set(2, 3, p.g);
  return q;
}

HermitianMatrix4 build_choi_unital(const UnitalChannelParams& p) {
  HermitianMatrix4 q;
  q.set(0, 0, p.a);
  q.set(1, 1, 1.0 - p.a);
  q.set(2, 2, 1.0 - p.a);
  q.set(3, 3, p.a);
  q.set(0, 1, p.b);
  q.set(0, 2, p.c);
  q.set(0, 3, p.d);
  q.set(1, 2, p.e);
  q.set(1, 3, -p.c);
  q.set(2, 3, -p.b);
  return q;
}

double leading_minor(const HermitianMatrix4& m, int n) {
  const Index idx{0, 1, 2, 3};
  switch (n) {
    case 1:
      return m(0, 0).real();
    case 2:
      return real_part(det2(m, idx, idx));
    case 3:
      return real_part(det3(m, idx, idx));
    case 4:
      return real_part(det4(m));
    default:
      throw std::invalid_argument("leading_minor: size must be 1..4");
  }
}

std::array<double, 4> leading_minors(const HermitianMatrix4& m) {
  return {leading_minor(m, 1), leading_minor(m, 2), leading_minor(m, 3), leading_minor(m, 4)};
}

bool is_positive_definite(const HermitianMatrix4& m, double tol) {
  // Cheapest minors first; most rejections happen early.
  for (int n = 1; n <= 4; ++n) {
    if (!(leading_minor(m, n) > tol)) return false;
  }
  return true;
}

std::array<Complex, 9> leading_adjugate(const HermitianMatrix4& m, int n) {
  std::array<Complex, 9> adj{};
  switch (n) {
    case 1:
      adj[0] = 1.0;
      return adj;
    case 2:
      adj[0] = m(1, 1);
      adj[1] = -m(0, 1);
      adj[2] = -m(1, 0);
      adj[3] = m(0, 0);
      return adj;
    case 3:
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          // adj(i,j) = (-1)^{i+j} * minor with row j and column i removed.
          Index rows{}, cols{};
          for (int k = 0, out = 0; k < 3; ++k) {
            if (k != j) rows[out++] = k;
          }
          for (int k = 0, out = 0; k < 3; ++k) {
            if (k != i) cols[out++] = k;
          }
          const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
          adj[i * 3 + j] = sign * det2(m, rows, cols);
        }
      }
      return adj;
    default:
      throw std::invalid_argument("leading_adjugate: size must be 1..3");
  }
}

SchurSplit schur_det_decomposition(const HermitianMatrix4& m, int n) {
  if (n < 2 || n > 4) throw std::invalid_argument("schur_det_decomposition: size must be 2..4");
  const int k = n - 1;
  SchurSplit out;
  out.corner = m(k, k).real();
  out.minor_det = leading_minor(m, k);
  if (std::abs(out.minor_det) < 1e-14) {
    throw DegenerateMinorError("schur_det_decomposition: leading minor is singular");
  }
  const auto adj = leading_adjugate(m, k);
  Complex form = 0.0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) form += std::conj(m(i, k)) * adj[i * k + j] * m(j, k);
  }
  out.quadratic_form = real_part(form);
  return out;
}

HermitianMatrix4 permute_general(const HermitianMatrix4& q) { return permute(q, {0, 2, 1, 3}); }

HermitianMatrix4 permute_unital(const HermitianMatrix4& q) { return permute(q, {1, 2, 0, 3}); }

}  // namespace qcvol
