#include "flatbill/plane.hpp"

#include <cmath>
#include <numeric>

namespace flatbill {

Vec::Vec(const Rational& x, const Rational& y) {
  Cyc i4 = Cyc::zeta(4, 1);
  z_ = Cyc(x) + i4 * Cyc(y);
}

Cyc Vec::re() const { return (z_ + z_.conj()) * Rational(1, 2); }

Cyc Vec::im() const {
  // (z - conj z) / (2i) = (z - conj z) * (-zeta_4) / 2
  return (z_ - z_.conj()) * Cyc::zeta(4, 3) * Rational(1, 2);
}

Cyc cross(const Vec& v, const Vec& w) {
  // Im(conj(v) * w)
  Cyc u = v.z_.conj() * w.z_;
  return (u - u.conj()) * Cyc::zeta(4, 3) * Rational(1, 2);
}

Cyc dot(const Vec& v, const Vec& w) {
  Cyc u = v.z_.conj() * w.z_;
  return (u + u.conj()) * Rational(1, 2);
}

namespace {

// double filter on the operand shadows: a conclusive interval skips the
// exact convolution entirely, which is where enumeration spends its time
bool shadow_sign(double x, double err, Sign& out) {
  if (x - err > 0) {
    out = Sign::positive;
    return true;
  }
  if (x + err < 0) {
    out = Sign::negative;
    return true;
  }
  return false;
}

// |Re z| + |Im z| of the shadow, padded by its error bound
double shadow_mag(const Cyc& z) {
  return std::abs(z.shadow_re()) + std::abs(z.shadow_im()) + 2 * z.shadow_err();
}

}  // namespace

Sign cross_sign(const Vec& v, const Vec& w) {
  const Cyc& a = v.z_;
  const Cyc& b = w.z_;
  double p = a.shadow_re() * b.shadow_im();
  double q = a.shadow_im() * b.shadow_re();
  double err = a.shadow_err() * shadow_mag(b) + b.shadow_err() * shadow_mag(a) +
               4e-16 * (std::abs(p) + std::abs(q) + 1e-300) + 1e-300;
  Sign s;
  if (shadow_sign(p - q, err, s)) return s;
  Cyc u = a.conj() * b;
  // u - conj(u) = 2i * Im(u): anti-conjugate by construction
  return (u - u.conj()).sign_imag_unchecked();
}

Sign dot_sign(const Vec& v, const Vec& w) {
  const Cyc& a = v.z_;
  const Cyc& b = w.z_;
  double p = a.shadow_re() * b.shadow_re();
  double q = a.shadow_im() * b.shadow_im();
  double err = a.shadow_err() * shadow_mag(b) + b.shadow_err() * shadow_mag(a) +
               4e-16 * (std::abs(p) + std::abs(q) + 1e-300) + 1e-300;
  Sign s;
  if (shadow_sign(p + q, err, s)) return s;
  Cyc u = a.conj() * b;
  return (u + u.conj()).sign_real_unchecked();
}

std::strong_ordering compare_norm(const Vec& v, const Vec& w) {
  const Cyc& a = v.z_;
  const Cyc& b = w.z_;
  double na = a.shadow_re() * a.shadow_re() + a.shadow_im() * a.shadow_im();
  double nb = b.shadow_re() * b.shadow_re() + b.shadow_im() * b.shadow_im();
  double err = 2 * (a.shadow_err() * shadow_mag(a) + b.shadow_err() * shadow_mag(b)) +
               4e-16 * (na + nb + 1) + 1e-300;
  Sign s;
  if (shadow_sign(na - nb, err, s))
    return s == Sign::positive ? std::strong_ordering::greater
                               : std::strong_ordering::less;
  Cyc d = v.norm2() - w.norm2();
  switch (d.sign_real_unchecked()) {
    case Sign::negative:
      return std::strong_ordering::less;
    case Sign::positive:
      return std::strong_ordering::greater;
    default:
      return std::strong_ordering::equal;
  }
}

std::strong_ordering compare_norm2_to(const Vec& v, const Rational& b) {
  const Cyc& a = v.value();
  double na = a.shadow_re() * a.shadow_re() + a.shadow_im() * a.shadow_im();
  double bd = b.get_d();
  double err = 2 * a.shadow_err() * shadow_mag(a) +
               4e-16 * (na + std::abs(bd) + 1) + 1e-300;
  Sign s;
  if (std::isfinite(bd) && shadow_sign(na - bd, err, s))
    return s == Sign::positive ? std::strong_ordering::greater
                               : std::strong_ordering::less;
  Cyc d = v.norm2() - Cyc(b);
  switch (d.sign_real_unchecked()) {
    case Sign::negative:
      return std::strong_ordering::less;
    case Sign::positive:
      return std::strong_ordering::greater;
    default:
      return std::strong_ordering::equal;
  }
}

bool parallel(const Vec& v, const Vec& w) {
  const Cyc& a = v.value();
  const Cyc& b = w.value();
  double p = a.shadow_re() * b.shadow_im();
  double q = a.shadow_im() * b.shadow_re();
  double err = a.shadow_err() * shadow_mag(b) + b.shadow_err() * shadow_mag(a) +
               4e-16 * (std::abs(p) + std::abs(q) + 1e-300) + 1e-300;
  Sign s;
  if (shadow_sign(p - q, err, s)) return false;
  Cyc u = a.conj() * b;
  return (u - u.conj()).is_zero();
}

Sign sign_minus(const Cyc& real_value, const Rational& r) {
  double rd = r.get_d();
  double err = real_value.shadow_err() +
               4e-16 * (std::abs(real_value.shadow_re()) + std::abs(rd)) + 1e-300;
  Sign s;
  if (std::isfinite(rd) && shadow_sign(real_value.shadow_re() - rd, err, s))
    return s;
  return (real_value - Cyc(r)).sign_real_unchecked();
}

}  // namespace flatbill
