#include "qcvol/repr.hpp"

#include <cmath>

namespace qcvol {

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

Mat3 multiply(const Mat3& lhs, const Mat3& rhs) {
  Mat3 out{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) out[i][j] += lhs[i][k] * rhs[k][j];
    }
  }
  return out;
}

Vec3 multiply(const Mat3& lhs, const Vec3& rhs) {
  Vec3 out{};
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) out[i] += lhs[i][k] * rhs[k];
  }
  return out;
}

Rotation3::Rotation3(const Mat3& m) : m_(m) {
  Mat3 mt{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) mt[i][j] = m[j][i];
  }
  const Mat3 prod = multiply(mt, m);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (std::abs(prod[i][j] - (i == j ? 1.0 : 0.0)) > 1e-10) {
        throw std::invalid_argument("Rotation3: matrix is not orthogonal");
      }
    }
  }
  const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  if (std::abs(det - 1.0) > 1e-10) throw std::invalid_argument("Rotation3: det != +1");
}

Rotation3 Rotation3::axis_angle(const Vec3& axis, double angle) {
  const double len = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (!(len > 0.0)) throw std::invalid_argument("Rotation3: zero axis");
  const double x = axis[0] / len, y = axis[1] / len, z = axis[2] / len;
  const double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
  // Rodrigues
  return Rotation3(Mat3{{{t * x * x + c, t * x * y - s * z, t * x * z + s * y},
                         {t * x * y + s * z, t * y * y + c, t * y * z - s * x},
                         {t * x * z - s * y, t * y * z + s * x, t * z * z + c}}});
}

Rotation3 Rotation3::inverse() const {
  Mat3 mt{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) mt[i][j] = m_[j][i];
  }
  return Rotation3(mt);
}

AffineMap to_affine(const GeneralChannelParams& p) {
  const Complex bg_sum = p.b + p.g;
  const Complex bg_diff = p.b - p.g;
  const Complex de_sum = p.d + p.e;
  AffineMap m;
  m.v = {bg_sum.real(), -bg_sum.imag(), p.a + p.f - 1.0};
  m.T = {{{de_sum.real(), de_sum.imag(), bg_diff.real()},
          {(p.e - p.d).imag(), (p.d - p.e).real(), -bg_diff.imag()},
          {2.0 * p.c.real(), 2.0 * p.c.imag(), p.a - p.f}}};
  return m;
}

GeneralChannelParams from_affine(const AffineMap& m) {
  const auto& v = m.v;
  const auto& T = m.T;
  GeneralChannelParams p;
  p.a = 0.5 * (v[2] + 1.0 + T[2][2]);
  p.f = 0.5 * (v[2] + 1.0 - T[2][2]);
  p.b = Complex(0.5 * (v[0] + T[0][2]), -0.5 * (v[1] + T[1][2]));
  p.g = Complex(0.5 * (v[0] - T[0][2]), 0.5 * (T[1][2] - v[1]));
  p.c = Complex(0.5 * T[2][0], 0.5 * T[2][1]);
  p.d = Complex(0.5 * (T[0][0] + T[1][1]), 0.5 * (T[0][1] - T[1][0]));
  p.e = Complex(0.5 * (T[0][0] - T[1][1]), 0.5 * (T[0][1] + T[1][0]));
  return p;
}

GeneralChannelParams embed_unital(const UnitalChannelParams& p) {
  return GeneralChannelParams{p.a, 1.0 - p.a, p.b, p.c, p.d, p.e, -p.b};
}

UnitalChannelParams restrict_unital(const GeneralChannelParams& p) {
  return UnitalChannelParams{p.a, p.b, p.c, p.d, p.e};
}

BlochVector apply(const AffineMap& map, const BlochVector& s) {
  const Vec3 out = multiply(map.T, Vec3{s.x, s.y, s.z});
  BlochVector r{map.v[0] + out[0], map.v[1] + out[1], map.v[2] + out[2]};
  if (r.norm() > 1.0 + 1e-9) {
    throw RangeError("apply: image leaves the Bloch ball; map is not completely positive");
  }
  return r;
}

ClassicalChannel underlying_classical(const GeneralChannelParams& p) {
  return ClassicalChannel{{p.a, 1.0 - p.a}, {p.f, 1.0 - p.f}};
}

GeneralChannelParams compose_rotation_post(const GeneralChannelParams& p, const Rotation3& r) {
  const AffineMap m = to_affine(p);
  return from_affine(AffineMap{multiply(r.matrix(), m.v), multiply(r.matrix(), m.T)});
}

GeneralChannelParams compose_rotation_pre(const GeneralChannelParams& p, const Rotation3& r) {
  const AffineMap m = to_affine(p);
  return from_affine(AffineMap{m.v, multiply(m.T, r.matrix())});
}

}  // namespace qcvol
