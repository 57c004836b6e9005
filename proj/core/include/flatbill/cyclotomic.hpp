#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace flatbill {

using Rational = mpq_class;

enum class Sign : int { negative = -1, zero = 0, positive = 1 };

inline Sign sign_of(const Rational& q) {
  int s = sgn(q);
  return s < 0 ? Sign::negative : (s > 0 ? Sign::positive : Sign::zero);
}

class domain_error : public std::runtime_error {
 public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

class precision_exhausted : public std::runtime_error {
 public:
  explicit precision_exhausted(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {
struct CycContext;
}

/// Element of the cyclotomic field Q(zeta_N), stored on the power basis
/// 1, zeta, ..., zeta^{phi(N)-1} reduced mod the N-th cyclotomic polynomial.
/// Values are immutable; arithmetic between different orders lifts both
/// operands into Q(zeta_lcm). A coarse double enclosure of the canonical
/// embedding (zeta -> exp(2*pi*i/N)) rides along as a filter for sign
/// predicates; certified signs fall back to MPFR interval evaluation.
class Cyc {
 public:
  Cyc();                       // 0 in Q(zeta_1)
  explicit Cyc(const Rational& r);
  explicit Cyc(long n);

  static Cyc zeta(long order, long power = 1);
  static Cyc from_coeffs(long order, std::vector<Rational> coeffs);

  long order() const;
  long degree() const;  // phi(order)
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;
  Rational rational_value() const;  // requires is_rational()

  Cyc conj() const;
  bool is_self_conjugate() const;   // exact test: x == conj(x)
  bool is_anti_conjugate() const;   // exact test: x == -conj(x)

  Cyc operator-() const;
  Cyc operator+(const Cyc& o) const;
  Cyc operator-(const Cyc& o) const;
  Cyc operator*(const Cyc& o) const;
  Cyc operator/(const Cyc& o) const;  // throws domain_error on division by zero
  Cyc& operator+=(const Cyc& o) { return *this = *this + o; }
  Cyc& operator-=(const Cyc& o) { return *this = *this - o; }
  Cyc& operator*=(const Cyc& o) { return *this = *this * o; }
  Cyc& operator/=(const Cyc& o) { return *this = *this / o; }

  Cyc operator*(const Rational& r) const;
  Cyc operator/(const Rational& r) const;

  bool operator==(const Cyc& o) const;
  bool operator!=(const Cyc& o) const { return !(*this == o); }

  /// Certified sign of a self-conjugate (real) value. Exact zero test runs
  /// first; otherwise the interval precision doubles from 64 bits up to the
  /// configured cap. Non-self-conjugate input raises domain_error.
  Sign sign_real() const;
  /// Certified sign of the imaginary part of an anti-conjugate value
  /// (conj(x) == -x). Same schedule as sign_real.
  Sign sign_imag() const;

  /// As above but skipping the (anti-)self-conjugacy verification; for hot
  /// paths where the caller constructed the value as x + conj(x) or x - conj(x).
  Sign sign_real_unchecked() const { return certified_sign(false); }
  Sign sign_imag_unchecked() const { return certified_sign(true); }

  /// Interval enclosure of the canonical embedding at the given precision,
  /// shrunk to doubles: {re_lo, re_hi, im_lo, im_hi}.
  struct Enclosure {
    double re_lo, re_hi, im_lo, im_hi;
  };
  Enclosure enclosure(unsigned bits) const;

  double real_approx() const;
  double imag_approx() const;

  /// raw filter state: embedding center and componentwise error bound
  double shadow_re() const { return ax_; }
  double shadow_im() const { return ay_; }
  double shadow_err() const { return aerr_; }

  /// Lift into Q(zeta_target); target must be a multiple of order().
  Cyc lifted(long target_order) const;

  static void set_precision_cap(unsigned bits);
  static unsigned precision_cap();

 private:
  Cyc(std::shared_ptr<const detail::CycContext> ctx, std::vector<Rational> coeffs);
  void refresh_approx();
  Sign certified_sign(bool imag_part) const;
  static void align(Cyc& a, Cyc& b);

  std::shared_ptr<const detail::CycContext> ctx_;
  std::vector<Rational> coeffs_;
  // double filter: approximate embedding and absolute error bound
  double ax_ = 0, ay_ = 0, aerr_ = 0;

  friend Cyc filtered(std::shared_ptr<const detail::CycContext>, std::vector<Rational>,
                      double, double, double);
};

inline Cyc operator*(const Rational& r, const Cyc& x) { return x * r; }

long euler_phi(long n);

}  // namespace flatbill
