#pragma once

#include <array>
#include <stdexcept>

#include "qcvol/choi.hpp"

namespace qcvol {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
};

/// Pauli-basis action of a trace-preserving qubit map: x -> v + T x.
struct AffineMap {
  Vec3 v{};
  Mat3 T{};
};

/// Restriction of a channel to diagonal states, as a row-stochastic matrix.
struct ClassicalChannel {
  std::array<double, 2> a_row{};
  std::array<double, 2> f_row{};
};

/// Proper rotation of R^3. Construction validates orthogonality and det = +1.
class Rotation3 {
 public:
  Rotation3() : m_{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}} {}
  explicit Rotation3(const Mat3& m);

  /// Right-handed rotation by angle about axis (normalized internally).
  static Rotation3 axis_angle(const Vec3& axis, double angle);

  const Mat3& matrix() const { return m_; }
  Rotation3 inverse() const;

 private:
  Mat3 m_;
};

class RangeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

AffineMap to_affine(const GeneralChannelParams& p);

/// Exact inverse of to_affine on the space of trace-preserving maps.
GeneralChannelParams from_affine(const AffineMap& m);

/// f = 1 - a, g = -b; b, c, d, e carried over.
GeneralChannelParams embed_unital(const UnitalChannelParams& p);

/// Inverse of embed_unital; only meaningful when p is unital.
UnitalChannelParams restrict_unital(const GeneralChannelParams& p);

/// v + T s. Throws RangeError if the image leaves the Bloch ball by more than 1e-9.
BlochVector apply(const AffineMap& map, const BlochVector& s);

ClassicalChannel underlying_classical(const GeneralChannelParams& p);

/// O o Q: (v, T) -> (R v, R T).
GeneralChannelParams compose_rotation_post(const GeneralChannelParams& p, const Rotation3& r);

/// Q o O: (v, T) -> (v, T R).
GeneralChannelParams compose_rotation_pre(const GeneralChannelParams& p, const Rotation3& r);

Mat3 multiply(const Mat3& lhs, const Mat3& rhs);
Vec3 multiply(const Mat3& lhs, const Vec3& rhs);

}  // namespace qcvol
