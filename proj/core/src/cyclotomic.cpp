#include "flatbill/cyclotomic.hpp"

#include <mpfr.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>

namespace flatbill {

long euler_phi(long n) {
  long result = n, m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      result -= result / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace detail {

using Poly = std::vector<mpz_class>;  // dense, index = exponent

static void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// exact division, divisor monic
static Poly poly_div_exact(Poly num, const Poly& den) {
  Poly q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, mpz_class(0));
  while (num.size() >= den.size()) {
    mpz_class c = num.back();
    size_t shift = num.size() - den.size();
    q[shift] = c;
    for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
    poly_trim(num);
    if (num.empty()) break;
  }
  return q;
}

static Poly cyclotomic_poly(long n) {
  // x^n - 1 divided by all Phi_d, d | n, d < n
  Poly p(n + 1, mpz_class(0));
  p[0] = -1;
  p[n] = 1;
  for (long d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    p = poly_div_exact(std::move(p), cyclotomic_poly(d));
  }
  return p;
}

struct CycContext {
  long order = 1;
  long degree = 1;
  // power_rows[k - degree] = coefficients of x^k mod Phi_order, for
  // k in [degree, limit) with limit = max(order, 2*degree - 1)
  std::vector<std::vector<Rational>> power_rows;

  const std::vector<Rational>& row(long k) const { return power_rows[k - degree]; }
};

static std::shared_ptr<const CycContext> make_context(long n) {
  auto ctx = std::make_shared<CycContext>();
  ctx->order = n;
  ctx->degree = euler_phi(n);
  Poly phi = cyclotomic_poly(n);
  long d = ctx->degree;
  long limit = std::max(n, 2 * d - 1);
  ctx->power_rows.reserve(limit - d);
  // x^d = -(phi minus leading term), then multiply by x and reduce
  std::vector<Rational> cur(d);
  for (long i = 0; i < d; ++i) cur[i] = Rational(-phi[i]);
  for (long k = d; k < limit; ++k) {
    ctx->power_rows.push_back(cur);
    std::vector<Rational> next(d);
    Rational top = cur[d - 1];
    for (long i = d - 1; i > 0; --i) next[i] = cur[i - 1];
    next[0] = 0;
    if (top != 0)
      for (long i = 0; i < d; ++i) next[i] -= top * Rational(phi[i]);
    cur = std::move(next);
  }
  return ctx;
}

static std::shared_ptr<const CycContext> context_for(long n) {
  static std::mutex mtx;
  static std::map<long, std::shared_ptr<const CycContext>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto ctx = make_context(n);
  cache.emplace(n, ctx);
  return ctx;
}

}  // namespace detail

static std::atomic<unsigned> g_prec_cap{4096};

void Cyc::set_precision_cap(unsigned bits) { g_prec_cap.store(bits); }
unsigned Cyc::precision_cap() { return g_prec_cap.load(); }

Cyc filtered(std::shared_ptr<const detail::CycContext> ctx, std::vector<Rational> coeffs,
             double ax, double ay, double aerr) {
  // propagated filter data makes the interval re-evaluation redundant
  Cyc x;
  x.ctx_ = std::move(ctx);
  x.coeffs_ = std::move(coeffs);
  x.ax_ = ax;
  x.ay_ = ay;
  x.aerr_ = aerr;
  return x;
}

Cyc::Cyc(std::shared_ptr<const detail::CycContext> ctx, std::vector<Rational> coeffs)
    : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
  refresh_approx();
}

Cyc::Cyc() : ctx_(detail::context_for(1)), coeffs_{Rational(0)} {
  ax_ = ay_ = 0;
  aerr_ = 1e-300;
}

Cyc::Cyc(const Rational& r) : ctx_(detail::context_for(1)), coeffs_{r} {
  ax_ = r.get_d();
  ay_ = 0;
  // get_d truncates; one ulp of slack on either side covers the rounding
  aerr_ = 4e-16 * (std::abs(ax_) + 1e-300) + 1e-300;
  if (!std::isfinite(ax_)) {
    ax_ = 0;
    aerr_ = std::numeric_limits<double>::infinity();
  }
}

Cyc::Cyc(long n) : Cyc(Rational(n)) {}

Cyc Cyc::zeta(long order, long power) {
  if (order < 1) throw domain_error("zeta: order must be positive");
  auto ctx = detail::context_for(order);
  power %= order;
  if (power < 0) power += order;
  std::vector<Rational> c(ctx->degree, Rational(0));
  if (power < ctx->degree) {
    c[power] = 1;
  } else {
    const auto& row = ctx->row(power);
    for (long i = 0; i < ctx->degree; ++i) c[i] = row[i];
  }
  return Cyc(std::move(ctx), std::move(c));
}

Cyc Cyc::from_coeffs(long order, std::vector<Rational> coeffs) {
  auto ctx = detail::context_for(order);
  if ((long)coeffs.size() != ctx->degree)
    throw domain_error("from_coeffs: expected phi(order) coefficients");
  return Cyc(std::move(ctx), std::move(coeffs));
}

long Cyc::order() const { return ctx_->order; }
long Cyc::degree() const { return ctx_->degree; }

bool Cyc::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool Cyc::is_rational() const {
  for (size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

Rational Cyc::rational_value() const {
  if (!is_rational()) throw domain_error("rational_value: value is irrational");
  return coeffs_[0];
}

void Cyc::refresh_approx() {
  // leaf construction: one 64-bit interval evaluation seeds the filter
  auto e = enclosure(64);
  ax_ = 0.5 * (e.re_lo + e.re_hi);
  ay_ = 0.5 * (e.im_lo + e.im_hi);
  double r1 = e.re_hi - e.re_lo, r2 = e.im_hi - e.im_lo;
  aerr_ = std::max(r1, r2) + 1e-300;
  if (!std::isfinite(ax_) || !std::isfinite(ay_) || !std::isfinite(aerr_)) {
    ax_ = ay_ = 0;
    aerr_ = std::numeric_limits<double>::infinity();
  }
}

Cyc Cyc::lifted(long target_order) const {
  long n = ctx_->order;
  if (target_order == n) return *this;
  if (target_order % n != 0) throw domain_error("lifted: target order not a multiple");
  auto ctx = detail::context_for(target_order);
  long step = target_order / n;
  std::vector<Rational> c(ctx->degree, Rational(0));
  for (long k = 0; k < (long)coeffs_.size(); ++k) {
    if (coeffs_[k] == 0) continue;
    long e = k * step;  // < target_order
    if (e < ctx->degree) {
      c[e] += coeffs_[k];
    } else {
      const auto& row = ctx->row(e);
      for (long i = 0; i < ctx->degree; ++i) c[i] += coeffs_[k] * row[i];
    }
  }
  return filtered(std::move(ctx), std::move(c), ax_, ay_, aerr_);
}

void Cyc::align(Cyc& a, Cyc& b) {
  if (a.ctx_ == b.ctx_) return;
  long n = std::lcm(a.ctx_->order, b.ctx_->order);
  a = a.lifted(n);
  b = b.lifted(n);
}

static inline double mag(double x, double y) { return std::abs(x) + std::abs(y); }
static constexpr double kEps = 1e-14;  // generous slack over double rounding

Cyc Cyc::operator-() const {
  std::vector<Rational> c(coeffs_.size());
  for (size_t i = 0; i < coeffs_.size(); ++i) c[i] = -coeffs_[i];
  return filtered(ctx_, std::move(c), -ax_, -ay_, aerr_);
}

Cyc Cyc::operator+(const Cyc& o) const {
  Cyc a = *this, b = o;
  align(a, b);
  std::vector<Rational> c(a.coeffs_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeffs_[i] + b.coeffs_[i];
  double ax = a.ax_ + b.ax_, ay = a.ay_ + b.ay_;
  double err = (a.aerr_ + b.aerr_ + kEps * (mag(ax, ay) + 1e-300)) * (1 + 1e-12);
  return filtered(a.ctx_, std::move(c), ax, ay, err);
}

Cyc Cyc::operator-(const Cyc& o) const { return *this + (-o); }

Cyc Cyc::operator*(const Cyc& o) const {
  Cyc a = *this, b = o;
  align(a, b);
  long d = a.ctx_->degree;
  std::vector<Rational> prod(2 * d - 1, Rational(0));
  for (long i = 0; i < d; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (long j = 0; j < d; ++j) {
      if (b.coeffs_[j] == 0) continue;
      prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  std::vector<Rational> c(prod.begin(), prod.begin() + d);
  for (long k = d; k < 2 * d - 1; ++k) {
    if (prod[k] == 0) continue;
    const auto& row = a.ctx_->row(k);
    for (long i = 0; i < d; ++i) c[i] += prod[k] * row[i];
  }
  double ax = a.ax_ * b.ax_ - a.ay_ * b.ay_;
  double ay = a.ax_ * b.ay_ + a.ay_ * b.ax_;
  double ma = mag(a.ax_, a.ay_), mb = mag(b.ax_, b.ay_);
  double err =
      (a.aerr_ * (mb + b.aerr_) + b.aerr_ * ma + kEps * (ma * mb + 1e-300)) * (1 + 1e-12);
  return filtered(a.ctx_, std::move(c), ax, ay, err);
}

Cyc Cyc::operator*(const Rational& r) const {
  std::vector<Rational> c(coeffs_.size());
  for (size_t i = 0; i < coeffs_.size(); ++i) c[i] = coeffs_[i] * r;
  double rd = r.get_d();
  double err = (aerr_ * std::abs(rd) + kEps * mag(ax_ * rd, ay_ * rd) + 1e-300) * (1 + 1e-10);
  if (!std::isfinite(rd)) err = std::numeric_limits<double>::infinity();
  return filtered(ctx_, std::move(c), ax_ * rd, ay_ * rd, err);
}

Cyc Cyc::operator/(const Rational& r) const {
  if (r == 0) throw domain_error("division by zero rational");
  return *this * Rational(1 / r);
}

Cyc Cyc::conj() const {
  long n = ctx_->order, d = ctx_->degree;
  if (n <= 2) return *this;
  std::vector<Rational> c(d, Rational(0));
  for (long k = 0; k < d; ++k) {
    if (coeffs_[k] == 0) continue;
    long e = (n - k) % n;
    if (e < d) {
      c[e] += coeffs_[k];
    } else {
      const auto& row = ctx_->row(e);
      for (long i = 0; i < d; ++i) c[i] += coeffs_[k] * row[i];
    }
  }
  return filtered(ctx_, std::move(c), ax_, -ay_, aerr_);
}

bool Cyc::is_self_conjugate() const { return *this == conj(); }
bool Cyc::is_anti_conjugate() const { return *this == -conj(); }

bool Cyc::operator==(const Cyc& o) const {
  Cyc a = *this, b = o;
  align(a, b);
  return a.coeffs_ == b.coeffs_;
}

// extended Euclid in Q[x]: inverse of this modulo Phi_order
Cyc Cyc::operator/(const Cyc& o) const {
  if (o.is_zero()) throw domain_error("division by zero");
  if (o.is_rational()) return *this / o.rational_value();
  Cyc a = *this, b = o;
  align(a, b);
  long n = a.ctx_->order, d = a.ctx_->degree;
  using QPoly = std::vector<Rational>;
  auto trim = [](QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
  };
  // extended Euclid on (Phi_n, b), tracking s with s_i * b == r_i mod Phi_n
  detail::Poly phi_z = detail::cyclotomic_poly(n);
  QPoly r0(phi_z.size());
  for (size_t i = 0; i < phi_z.size(); ++i) r0[i] = Rational(phi_z[i]);
  QPoly r1 = b.coeffs_;
  trim(r1);
  QPoly s0{}, s1{Rational(1)};
  while (r1.size() > 1) {
    QPoly q(r0.size() - r1.size() + 1, Rational(0));
    QPoly rem = r0;
    while (rem.size() >= r1.size()) {
      Rational c = rem.back() / r1.back();
      size_t shift = rem.size() - r1.size();
      q[shift] = c;
      for (size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= c * r1[i];
      trim(rem);
    }
    if (rem.empty())
      throw domain_error("division: divisor is a zero divisor");
    QPoly s_next = s0;
    s_next.resize(std::max(s_next.size(), q.size() + s1.size() - 1), Rational(0));
    for (size_t i = 0; i < q.size(); ++i) {
      if (q[i] == 0) continue;
      for (size_t j = 0; j < s1.size(); ++j) s_next[i + j] -= q[i] * s1[j];
    }
    trim(s_next);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s_next);
  }
  // r1 is a nonzero constant: inverse of b = s1 / r1[0]
  QPoly inv = std::move(s1);
  for (auto& ci : inv) ci /= r1[0];
  inv.resize(d, Rational(0));
  Cyc binv = Cyc(a.ctx_, std::move(inv));
  return a * binv;
}

// ---- certified signs via MPFR -------------------------------------------

namespace {

struct MpfrInterval {
  mpfr_t lo, hi;
  explicit MpfrInterval(mpfr_prec_t p) {
    mpfr_init2(lo, p);
    mpfr_init2(hi, p);
    mpfr_set_zero(lo, 1);
    mpfr_set_zero(hi, 1);
  }
  ~MpfrInterval() {
    mpfr_clear(lo);
    mpfr_clear(hi);
  }
  MpfrInterval(const MpfrInterval&) = delete;
};

// self += q * [clo, chi], directed rounding, q rational of either sign
void accumulate(MpfrInterval& acc, const mpq_t q, mpfr_t clo, mpfr_t chi, mpfr_prec_t p) {
  mpfr_t t1, t2;
  mpfr_init2(t1, p);
  mpfr_init2(t2, p);
  int qs = mpq_sgn(q);
  if (qs >= 0) {
    mpfr_mul_q(t1, clo, q, MPFR_RNDD);
    mpfr_mul_q(t2, chi, q, MPFR_RNDU);
  } else {
    mpfr_mul_q(t1, chi, q, MPFR_RNDD);
    mpfr_mul_q(t2, clo, q, MPFR_RNDU);
  }
  mpfr_add(acc.lo, acc.lo, t1, MPFR_RNDD);
  mpfr_add(acc.hi, acc.hi, t2, MPFR_RNDU);
  mpfr_clear(t1);
  mpfr_clear(t2);
}

}  // namespace

Cyc::Enclosure Cyc::enclosure(unsigned bits) const {
  mpfr_prec_t p = bits;
  long n = ctx_->order, d = ctx_->degree;
  MpfrInterval re(p), im(p);
  mpfr_t theta, c, s, w, tlo, thi, pi_lo, pi_hi;
  mpfr_inits2(p, theta, c, s, w, tlo, thi, pi_lo, pi_hi, (mpfr_ptr)nullptr);
  mpfr_const_pi(pi_lo, MPFR_RNDD);
  mpfr_const_pi(pi_hi, MPFR_RNDU);
  for (long k = 0; k < d; ++k) {
    if (coeffs_[k] == 0) continue;
    // theta in [tlo, thi], k >= 0 so directed scaling is monotone
    mpfr_mul_si(tlo, pi_lo, 2 * k, MPFR_RNDD);
    mpfr_div_si(tlo, tlo, n, MPFR_RNDD);
    mpfr_mul_si(thi, pi_hi, 2 * k, MPFR_RNDU);
    mpfr_div_si(thi, thi, n, MPFR_RNDU);
    // width of the theta interval, rounded up
    mpfr_sub(w, thi, tlo, MPFR_RNDU);
    // cos/sin at midpoint-ish (tlo), enclosed by +- (w + 2 ulp slack)
    mpfr_set(theta, tlo, MPFR_RNDN);
    mpfr_cos(c, theta, MPFR_RNDN);
    mpfr_sin(s, theta, MPFR_RNDN);
    // |d/dt cos|, |d/dt sin| <= 1, plus rounding of cos/sin: widen by w + 2^(1-p)
    mpfr_t slack, clo_k, chi_k, slo_k, shi_k;
    mpfr_inits2(p, slack, clo_k, chi_k, slo_k, shi_k, (mpfr_ptr)nullptr);
    mpfr_set_ui_2exp(slack, 4, 1 - (long)p, MPFR_RNDU);
    mpfr_add(slack, slack, w, MPFR_RNDU);
    mpfr_sub(clo_k, c, slack, MPFR_RNDD);
    mpfr_add(chi_k, c, slack, MPFR_RNDU);
    mpfr_sub(slo_k, s, slack, MPFR_RNDD);
    mpfr_add(shi_k, s, slack, MPFR_RNDU);
    accumulate(re, coeffs_[k].get_mpq_t(), clo_k, chi_k, p);
    accumulate(im, coeffs_[k].get_mpq_t(), slo_k, shi_k, p);
    mpfr_clears(slack, clo_k, chi_k, slo_k, shi_k, (mpfr_ptr)nullptr);
  }
  Enclosure e;
  e.re_lo = mpfr_get_d(re.lo, MPFR_RNDD);
  e.re_hi = mpfr_get_d(re.hi, MPFR_RNDU);
  e.im_lo = mpfr_get_d(im.lo, MPFR_RNDD);
  e.im_hi = mpfr_get_d(im.hi, MPFR_RNDU);
  mpfr_clears(theta, c, s, w, tlo, thi, pi_lo, pi_hi, (mpfr_ptr)nullptr);
  return e;
}

Sign Cyc::certified_sign(bool imag_part) const {
  // fast path: double filter
  double v = imag_part ? ay_ : ax_;
  if (std::abs(v) > aerr_) return v > 0 ? Sign::positive : Sign::negative;
  if (is_zero()) return Sign::zero;
  unsigned cap = precision_cap();
  for (unsigned bits = 64;; bits *= 2) {
    if (bits > cap)
      throw precision_exhausted("sign: interval precision cap (" + std::to_string(cap) +
                                " bits) exhausted on a nonzero value");
    auto e = enclosure(bits);
    double lo = imag_part ? e.im_lo : e.re_lo;
    double hi = imag_part ? e.im_hi : e.re_hi;
    if (lo > 0) return Sign::positive;
    if (hi < 0) return Sign::negative;
  }
}

Sign Cyc::sign_real() const {
  if (!is_self_conjugate()) throw domain_error("sign_real: value is not real");
  return certified_sign(false);
}

Sign Cyc::sign_imag() const {
  if (!is_anti_conjugate())
    throw domain_error("sign_imag: value is not purely imaginary");
  return certified_sign(true);
}

double Cyc::real_approx() const {
  if (aerr_ < 1e-9) return ax_;
  auto e = enclosure(128);
  return 0.5 * (e.re_lo + e.re_hi);
}

double Cyc::imag_approx() const {
  if (aerr_ < 1e-9) return ay_;
  auto e = enclosure(128);
  return 0.5 * (e.im_lo + e.im_hi);
}

}  // namespace flatbill
