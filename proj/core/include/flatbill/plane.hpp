#pragma once

#include "flatbill/cyclotomic.hpp"

#include <compare>

namespace flatbill {

/// Point/vector of the plane, stored as a single cyclotomic number under the
/// canonical embedding (x + iy). Orientation and length predicates are exact
/// and division-free: signs of 2*Im(conj(v)*w) and 2*Re(conj(v)*w) via the
/// certified sign machinery.
class Vec {
 public:
  Vec() = default;
  explicit Vec(Cyc z) : z_(std::move(z)) {}
  Vec(const Rational& x, const Rational& y);

  const Cyc& value() const { return z_; }

  bool is_zero() const { return z_.is_zero(); }
  bool operator==(const Vec& o) const { return z_ == o.z_; }
  bool operator!=(const Vec& o) const { return z_ != o.z_; }

  Vec operator+(const Vec& o) const { return Vec(z_ + o.z_); }
  Vec operator-(const Vec& o) const { return Vec(z_ - o.z_); }
  Vec operator-() const { return Vec(-z_); }
  Vec operator*(const Rational& r) const { return Vec(z_ * r); }
  /// complex multiplication (rotation/scaling by a field element)
  Vec rotated(const Cyc& u) const { return Vec(z_ * u); }
  Vec conj() const { return Vec(z_.conj()); }

  /// real part as a (self-conjugate) field element; lifts into Q(zeta_lcm(N,4))
  /// only when needed by the 1/(2i) factor in im().
  Cyc re() const;
  Cyc im() const;
  Cyc norm2() const { return z_ * z_.conj(); }  // |v|^2, self-conjugate

  double x_approx() const { return z_.real_approx(); }
  double y_approx() const { return z_.imag_approx(); }

  friend Sign cross_sign(const Vec& v, const Vec& w);  // sign of v x w
  friend Sign dot_sign(const Vec& v, const Vec& w);    // sign of <v, w>
  friend Cyc cross(const Vec& v, const Vec& w);        // exact v x w
  friend Cyc dot(const Vec& v, const Vec& w);          // exact <v, w>

  /// |v|^2 vs |w|^2, certified
  friend std::strong_ordering compare_norm(const Vec& v, const Vec& w);

 private:
  Cyc z_;
};

Sign cross_sign(const Vec& v, const Vec& w);
Sign dot_sign(const Vec& v, const Vec& w);
Cyc cross(const Vec& v, const Vec& w);
Cyc dot(const Vec& v, const Vec& w);
std::strong_ordering compare_norm(const Vec& v, const Vec& w);

/// compares |v|^2 against the rational bound b (i.e. length vs sqrt(b))
std::strong_ordering compare_norm2_to(const Vec& v, const Rational& b);

/// true when v and w span the same line (v x w == 0), v, w nonzero not required
bool parallel(const Vec& v, const Vec& w);

/// exact sign of a self-conjugate field element minus a rational
Sign sign_minus(const Cyc& real_value, const Rational& r);

}  // namespace flatbill
