#include "dioph/arith.hpp"

#include <cmath>
#include <algorithm>
#include <sstream>

namespace dioph::arith {

/* ----------------------------- RealBall --------------------------- */

RealBall::RealBall(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

RealBall::RealBall(const RealBall& o) : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

RealBall::RealBall(RealBall&& o) noexcept : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

RealBall& RealBall::operator=(const RealBall& o) {
  if (this != &o) {
    prec_ = o.prec_;
    mpfr_set_prec(lo_, prec_);
    mpfr_set_prec(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  return *this;
}

RealBall& RealBall::operator=(RealBall&& o) noexcept {
  prec_ = o.prec_;
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  return *this;
}

RealBall::~RealBall() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

RealBall RealBall::from_q(const mpq_class& q, mpfr_prec_t prec) {
  RealBall b(prec);
  mpfr_set_q(b.lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(b.hi_, q.get_mpq_t(), MPFR_RNDU);
  return b;
}

RealBall RealBall::from_q_interval(const mpq_class& lo, const mpq_class& hi, mpfr_prec_t prec) {
  if (lo > hi) throw DomainError("from_q_interval: lo > hi");
  RealBall b(prec);
  mpfr_set_q(b.lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(b.hi_, hi.get_mpq_t(), MPFR_RNDU);
  return b;
}

RealBall RealBall::from_z(const mpz_class& z, mpfr_prec_t prec) {
  RealBall b(prec);
  mpfr_set_z(b.lo_, z.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(b.hi_, z.get_mpz_t(), MPFR_RNDU);
  return b;
}

RealBall RealBall::from_si(long v, mpfr_prec_t prec) {
  RealBall b(prec);
  mpfr_set_si(b.lo_, v, MPFR_RNDD);
  mpfr_set_si(b.hi_, v, MPFR_RNDU);
  return b;
}

RealBall RealBall::with_prec(mpfr_prec_t prec) const {
  RealBall b(prec);
  mpfr_set(b.lo_, lo_, MPFR_RNDD);
  mpfr_set(b.hi_, hi_, MPFR_RNDU);
  return b;
}

RealBall RealBall::operator+(const RealBall& o) const {
  RealBall r(std::max(prec_, o.prec_));
  mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

RealBall RealBall::operator-(const RealBall& o) const {
  RealBall r(std::max(prec_, o.prec_));
  mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
  return r;
}

RealBall RealBall::operator-() const {
  RealBall r(prec_);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

RealBall RealBall::operator*(const RealBall& o) const {
  RealBall r(std::max(prec_, o.prec_));
  // min/max over the four endpoint products with directed rounding.
  mpfr_t t, mn, mx;
  mpfr_init2(t, r.prec_);
  mpfr_init2(mn, r.prec_);
  mpfr_init2(mx, r.prec_);
  mpfr_mul(mn, lo_, o.lo_, MPFR_RNDD);
  mpfr_mul(mx, lo_, o.lo_, MPFR_RNDU);
  auto consider = [&](mpfr_srcptr a, mpfr_srcptr b) {
    mpfr_mul(t, a, b, MPFR_RNDD);
    if (mpfr_cmp(t, mn) < 0) mpfr_set(mn, t, MPFR_RNDD);
    mpfr_mul(t, a, b, MPFR_RNDU);
    if (mpfr_cmp(t, mx) > 0) mpfr_set(mx, t, MPFR_RNDU);
  };
  consider(lo_, o.hi_);
  consider(hi_, o.lo_);
  consider(hi_, o.hi_);
  mpfr_set(r.lo_, mn, MPFR_RNDD);
  mpfr_set(r.hi_, mx, MPFR_RNDU);
  mpfr_clear(t);
  mpfr_clear(mn);
  mpfr_clear(mx);
  return r;
}

RealBall RealBall::div(const RealBall& o) const {
  if (o.contains_zero()) throw DomainError("RealBall::div: divisor encloses zero");
  RealBall inv(o.prec_);
  // 1/[a,b] with 0 outside: endpoints swap.
  mpfr_ui_div(inv.lo_, 1, o.hi_, MPFR_RNDD);
  mpfr_ui_div(inv.hi_, 1, o.lo_, MPFR_RNDU);
  return *this * inv;
}

RealBall RealBall::abs() const {
  RealBall r(prec_);
  if (mpfr_sgn(lo_) >= 0) return *this;
  if (mpfr_sgn(hi_) <= 0) return -*this;
  // straddles zero
  mpfr_set_zero(r.lo_, 1);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  if (mpfr_cmp(r.hi_, hi_) < 0) mpfr_set(r.hi_, hi_, MPFR_RNDU);
  return r;
}

RealBall RealBall::sqrt() const {
  if (mpfr_sgn(lo_) < 0) throw DomainError("RealBall::sqrt: negative lower endpoint");
  RealBall r(prec_);
  mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

RealBall RealBall::rootn(unsigned long n) const {
  if (mpfr_sgn(lo_) < 0) throw DomainError("RealBall::rootn: negative lower endpoint");
  RealBall r(prec_);
#if MPFR_VERSION_MAJOR >= 4
  mpfr_rootn_ui(r.lo_, lo_, n, MPFR_RNDD);
  mpfr_rootn_ui(r.hi_, hi_, n, MPFR_RNDU);
#else
  mpfr_root(r.lo_, lo_, n, MPFR_RNDD);
  mpfr_root(r.hi_, hi_, n, MPFR_RNDU);
#endif
  return r;
}

RealBall RealBall::log() const {
  if (!surely_positive()) throw DomainError("RealBall::log: argument not surely positive");
  RealBall r(prec_);
  mpfr_log(r.lo_, lo_, MPFR_RNDD);
  mpfr_log(r.hi_, hi_, MPFR_RNDU);
  return r;
}

RealBall RealBall::exp() const {
  RealBall r(prec_);
  mpfr_exp(r.lo_, lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, hi_, MPFR_RNDU);
  return r;
}

RealBall RealBall::pow_ui(unsigned long e) const {
  RealBall acc = RealBall::one(prec_);
  RealBall base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

RealBall RealBall::pow_q(const mpq_class& e) const {
  if (e.get_den() == 1 && e.get_num() >= 0 && e.get_num().fits_ulong_p())
    return pow_ui(e.get_num().get_ui());
  if (!surely_positive())
    throw DomainError("RealBall::pow_q: base not surely positive for fractional exponent");
  // x^e = exp(e * log x); monotone pieces handled by ball composition.
  RealBall le = log();
  RealBall eb = RealBall::from_q(e, prec_);
  return (le * eb).exp();
}

bool RealBall::contains_zero() const {
  return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool RealBall::surely_positive() const { return mpfr_sgn(lo_) > 0; }
bool RealBall::surely_negative() const { return mpfr_sgn(hi_) < 0; }
bool RealBall::is_point() const { return mpfr_cmp(lo_, hi_) == 0; }

Verdict3 RealBall::lt(const RealBall& o) const {
  if (mpfr_cmp(hi_, o.lo_) < 0) return Verdict3::True;
  if (mpfr_cmp(lo_, o.hi_) >= 0) return Verdict3::False;
  return Verdict3::Unknown;
}

Verdict3 RealBall::le(const RealBall& o) const {
  if (mpfr_cmp(hi_, o.lo_) <= 0) return Verdict3::True;
  if (mpfr_cmp(lo_, o.hi_) > 0) return Verdict3::False;
  return Verdict3::Unknown;
}

static mpq_class mpfr_to_q(mpfr_srcptr x) {
  if (mpfr_zero_p(x)) return mpq_class(0);
  if (!mpfr_number_p(x)) throw DomainError("mpfr_to_q: non-finite endpoint");
  mpz_class m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  mpq_class q(m);
  if (e >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(e));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(-e));
  }
  return q;
}

mpq_class RealBall::lo_q() const { return mpfr_to_q(lo_); }
mpq_class RealBall::hi_q() const { return mpfr_to_q(hi_); }

RealBall::DyadicParts RealBall::to_dyadic_parts() const {
  // center c = (lo+hi)/2 rounded down; radius rounded up so that
  // [c-r, c+r] contains [lo, hi].
  DyadicParts p;
  mpfr_t c, r;
  mpfr_init2(c, prec_);
  mpfr_init2(r, prec_ + 8);
  mpfr_add(c, lo_, hi_, MPFR_RNDD);
  mpfr_div_2ui(c, c, 1, MPFR_RNDD);
  mpfr_sub(r, hi_, c, MPFR_RNDU);
  mpfr_t r2;
  mpfr_init2(r2, prec_ + 8);
  mpfr_sub(r2, c, lo_, MPFR_RNDU);
  if (mpfr_cmp(r2, r) > 0) mpfr_set(r, r2, MPFR_RNDU);
  if (mpfr_zero_p(c)) {
    p.center_mantissa = 0;
    p.center_exp = 0;
  } else {
    p.center_exp = static_cast<long>(mpfr_get_z_2exp(p.center_mantissa.get_mpz_t(), c));
  }
  if (mpfr_zero_p(r)) {
    p.radius_mantissa = 0;
    p.radius_exp = 0;
  } else {
    p.radius_exp = static_cast<long>(mpfr_get_z_2exp(p.radius_mantissa.get_mpz_t(), r));
  }
  mpfr_clear(c);
  mpfr_clear(r);
  mpfr_clear(r2);
  return p;
}

RealBall RealBall::from_dyadic_parts(const DyadicParts& p, mpfr_prec_t prec) {
  auto dy = [](const mpz_class& m, long e) {
    mpq_class q(m);
    if (e >= 0)
      mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(e));
    else
      mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(-e));
    return q;
  };
  mpq_class c = dy(p.center_mantissa, p.center_exp);
  mpq_class r = dy(p.radius_mantissa, p.radius_exp);
  if (r < 0) throw DomainError("from_dyadic_parts: negative radius");
  return from_q_interval(c - r, c + r, prec);
}

std::string RealBall::str(int digits) const {
  char* s1 = nullptr;
  char* s2 = nullptr;
  mpfr_asprintf(&s1, "%.*Rg", digits, lo_);
  mpfr_asprintf(&s2, "%.*Rg", digits, hi_);
  std::string out = std::string("[") + s1 + ", " + s2 + "]";
  mpfr_free_str(s1);
  mpfr_free_str(s2);
  return out;
}

/* ------------------------------- Value ----------------------------- */

RealBall Value::ball(mpfr_prec_t prec) const {
  if (is_exact()) return RealBall::from_q(exact(), prec);
  return std::get<RealBall>(v_);
}

Value Value::operator+(const Value& o) const {
  if (is_exact() && o.is_exact()) return Value(exact() + o.exact());
  mpfr_prec_t p = std::max(is_exact() ? kDefaultPrec : std::get<RealBall>(v_).prec(),
                           o.is_exact() ? kDefaultPrec : std::get<RealBall>(o.v_).prec());
  return Value(ball(p) + o.ball(p));
}

Value Value::operator*(const Value& o) const {
  if (is_exact() && o.is_exact()) return Value(exact() * o.exact());
  mpfr_prec_t p = std::max(is_exact() ? kDefaultPrec : std::get<RealBall>(v_).prec(),
                           o.is_exact() ? kDefaultPrec : std::get<RealBall>(o.v_).prec());
  return Value(ball(p) * o.ball(p));
}

Value Value::div(const Value& o) const {
  if (is_exact() && o.is_exact()) {
    if (o.exact() == 0) throw DomainError("Value::div by zero");
    return Value(mpq_class(exact() / o.exact()));
  }
  mpfr_prec_t p = std::max(is_exact() ? kDefaultPrec : std::get<RealBall>(v_).prec(),
                           o.is_exact() ? kDefaultPrec : std::get<RealBall>(o.v_).prec());
  return Value(ball(p).div(o.ball(p)));
}

Value Value::pow_q(const mpq_class& e, mpfr_prec_t prec) const {
  if (is_exact()) {
    if (exact() <= 0) {
      if (e.get_den() == 1) return Value(q_pow_si(exact(), e.get_num().get_si()));
      throw DomainError("Value::pow_q: nonpositive base with fractional exponent");
    }
    return rational_pow(exact(), e, prec);
  }
  return Value(ball(prec).pow_q(e));
}

Value Value::sqrt(mpfr_prec_t prec) const { return pow_q(mpq_class(1, 2), prec); }

Verdict3 Value::le(const Value& o) const {
  if (is_exact() && o.is_exact())
    return exact() <= o.exact() ? Verdict3::True : Verdict3::False;
  return ball().le(o.ball());
}

Verdict3 Value::lt(const Value& o) const {
  if (is_exact() && o.is_exact())
    return exact() < o.exact() ? Verdict3::True : Verdict3::False;
  return ball().lt(o.ball());
}

bool Value::surely_positive() const {
  if (is_exact()) return exact() > 0;
  return std::get<RealBall>(v_).surely_positive();
}

double Value::lo_d() const {
  if (is_exact()) return dintv_from_q(exact()).lo;
  return std::get<RealBall>(v_).lo_d();
}

double Value::hi_d() const {
  if (is_exact()) return dintv_from_q(exact()).hi;
  return std::get<RealBall>(v_).hi_d();
}

std::string Value::str() const {
  if (is_exact()) return exact().get_str();
  return std::get<RealBall>(v_).str();
}

/* --------------------------- rational helpers ---------------------- */

mpq_class q_pow_si(const mpq_class& q, long z) {
  if (z == 0) return mpq_class(1);
  mpz_class num, den;
  unsigned long a = static_cast<unsigned long>(z < 0 ? -z : z);
  mpz_pow_ui(num.get_mpz_t(), q.get_num().get_mpz_t(), a);
  mpz_pow_ui(den.get_mpz_t(), q.get_den().get_mpz_t(), a);
  if (z < 0) {
    if (num == 0) throw DomainError("q_pow_si: zero base with negative exponent");
    std::swap(num, den);
    if (den < 0) { den = -den; num = -num; }
  }
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

mpz_class q_floor(const mpq_class& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

mpz_class q_ceil(const mpq_class& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

std::optional<mpz_class> exact_root(const mpz_class& z, unsigned long n) {
  if (z < 0) return std::nullopt;
  mpz_class r;
  int is_exact = mpz_root(r.get_mpz_t(), z.get_mpz_t(), n);
  if (is_exact) return r;
  return std::nullopt;
}

mpz_class ceil_pow(const mpz_class& a, const mpq_class& e) {
  if (a <= 0) throw DomainError("ceil_pow: base must be positive");
  if (e <= 0) throw DomainError("ceil_pow: exponent must be positive");
  unsigned long num = e.get_num().get_ui();
  unsigned long den = e.get_den().get_ui();
  mpz_class p;
  mpz_pow_ui(p.get_mpz_t(), a.get_mpz_t(), num);
  mpz_class r;
  int exact = mpz_root(r.get_mpz_t(), p.get_mpz_t(), den);
  if (!exact) r += 1;
  return r;
}

Value rational_pow(const mpq_class& q, const mpq_class& e, mpfr_prec_t prec) {
  if (q <= 0) throw DomainError("rational_pow: base must be positive");
  if (e == 0) return Value(mpq_class(1));
  mpq_class ee = e;
  bool invert = false;
  if (ee < 0) { ee = -ee; invert = true; }
  if (ee.get_den().fits_ulong_p() && ee.get_num().fits_ulong_p()) {
    unsigned long num = ee.get_num().get_ui();
    unsigned long den = ee.get_den().get_ui();
    // size guard: exact path only when q^num stays modest or q is a
    // power of two (exponent arithmetic on the mantissa bit length).
    size_t bits = std::max(mpz_sizeinbase(q.get_num().get_mpz_t(), 2),
                           mpz_sizeinbase(q.get_den().get_mpz_t(), 2));
    if (bits * num <= 1u << 20) {
      mpz_class pn, pd;
      mpz_pow_ui(pn.get_mpz_t(), q.get_num().get_mpz_t(), num);
      mpz_pow_ui(pd.get_mpz_t(), q.get_den().get_mpz_t(), num);
      auto rn = exact_root(pn, den);
      auto rd = exact_root(pd, den);
      if (rn && rd) {
        mpq_class r(*rn, *rd);
        r.canonicalize();
        if (invert) r = 1 / r;
        return Value(r);
      }
    }
  }
  RealBall b = RealBall::from_q(q, prec).pow_q(invert ? mpq_class(-e) : e);
  if (invert) b = RealBall::one(prec).div(b);
  return Value(b);
}

Value pow2_q(const mpq_class& e, mpfr_prec_t prec) {
  if (e.get_den() == 1) {
    mpq_class r(1);
    const mpz_class& n = e.get_num();
    if (!n.fits_slong_p()) throw DomainError("pow2_q: exponent too large");
    long z = n.get_si();
    if (z >= 0)
      mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(z));
    else
      mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(-z));
    return Value(r);
  }
  RealBall eb = RealBall::from_q(e, prec);
  RealBall r(prec);
  mpfr_exp2(r.lo_raw(), eb.lo_raw(), MPFR_RNDD);
  mpfr_exp2(r.hi_raw(), eb.hi_raw(), MPFR_RNDU);
  return Value(r);
}

/* -------------------------------- DIntv ---------------------------- */

static double next_down(double x) {
  return std::nextafter(x, -std::numeric_limits<double>::infinity());
}
static double next_up(double x) {
  return std::nextafter(x, std::numeric_limits<double>::infinity());
}

DIntv DIntv::of(double lo, double hi) { return {lo, hi}; }

DIntv DIntv::operator+(const DIntv& o) const {
  return {next_down(lo + o.lo), next_up(hi + o.hi)};
}

DIntv DIntv::operator-(const DIntv& o) const {
  return {next_down(lo - o.hi), next_up(hi - o.lo)};
}

DIntv DIntv::operator*(const DIntv& o) const {
  double a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
  double mn = std::min(std::min(a, b), std::min(c, d));
  double mx = std::max(std::max(a, b), std::max(c, d));
  return {next_down(mn), next_up(mx)};
}

DIntv DIntv::abs() const {
  if (lo >= 0) return *this;
  if (hi <= 0) return {-hi, -lo};
  return {0.0, std::max(-lo, hi)};
}

DIntv dintv_from_q(const mpq_class& q) {
  double d = q.get_d();  // truncates toward zero; pad both ways
  return {next_down(next_down(d)), next_up(next_up(d))};
}

}  // namespace dioph::arith
