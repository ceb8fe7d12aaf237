#ifndef DIOPH_ARITH_HPP
#define DIOPH_ARITH_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "dioph/error.hpp"

namespace dioph::arith {

inline constexpr mpfr_prec_t kDefaultPrec = 128;

// Three-valued outcome of a certified comparison.
enum class Verdict3 { True, False, Unknown };

/* ------------------------------------------------------------------ */
/* Real: RAII wrapper around a single mpfr_t point value.             */
/* Used for approximate iteration (root refinement); everything        */
/* certified goes through RealBall.                                    */
/* ------------------------------------------------------------------ */
class Real {
 public:
  explicit Real(mpfr_prec_t prec = kDefaultPrec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
  Real& operator=(const Real& o) {
    if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    return *this;
  }
  Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

 private:
  mpfr_t v_;
};

/* ------------------------------------------------------------------ */
/* RealBall: closed interval [lo, hi] with dyadic (mpfr) endpoints.    */
/* Every operation rounds outward, so the result encloses the exact    */
/* value whenever the operands enclose theirs.                         */
/* ------------------------------------------------------------------ */
class RealBall {
 public:
  explicit RealBall(mpfr_prec_t prec = kDefaultPrec);
  RealBall(const RealBall&);
  RealBall(RealBall&&) noexcept;
  RealBall& operator=(const RealBall&);
  RealBall& operator=(RealBall&&) noexcept;
  ~RealBall();

  static RealBall from_q(const mpq_class& q, mpfr_prec_t prec = kDefaultPrec);
  static RealBall from_q_interval(const mpq_class& lo, const mpq_class& hi,
                                  mpfr_prec_t prec = kDefaultPrec);
  static RealBall from_z(const mpz_class& z, mpfr_prec_t prec = kDefaultPrec);
  static RealBall from_si(long v, mpfr_prec_t prec = kDefaultPrec);
  static RealBall zero(mpfr_prec_t prec = kDefaultPrec) { return from_si(0, prec); }
  static RealBall one(mpfr_prec_t prec = kDefaultPrec) { return from_si(1, prec); }

  mpfr_prec_t prec() const { return prec_; }
  RealBall with_prec(mpfr_prec_t prec) const;

  RealBall operator+(const RealBall&) const;
  RealBall operator-(const RealBall&) const;
  RealBall operator*(const RealBall&) const;
  RealBall operator-() const;
  // Throws DomainError if the divisor encloses zero.
  RealBall div(const RealBall&) const;
  RealBall abs() const;
  // Requires lo >= 0 (a ball enclosing a sqrt argument that certifies
  // nonnegative); throws otherwise.
  RealBall sqrt() const;
  RealBall rootn(unsigned long n) const;
  RealBall log() const;   // requires surely_positive()
  RealBall exp() const;
  // x^e for rational e; requires surely_positive() unless e is a
  // nonnegative integer.
  RealBall pow_q(const mpq_class& e) const;
  RealBall pow_ui(unsigned long e) const;

  bool contains_zero() const;
  bool surely_positive() const;   // lo > 0
  bool surely_negative() const;   // hi < 0
  bool is_point() const;          // lo == hi

  // Certified comparisons against another ball.
  Verdict3 lt(const RealBall&) const;
  Verdict3 le(const RealBall&) const;

  // Exact dyadic endpoints, center and radius (outward-safe).
  mpq_class lo_q() const;
  mpq_class hi_q() const;
  mpq_class width_q() const { return hi_q() - lo_q(); }
  double lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  double mid_d() const { return 0.5 * (lo_d() + hi_d()); }

  // Serialization pieces: center = (lo+hi)/2 rounded, radius covers both
  // endpoints after rounding.
  struct DyadicParts {
    mpz_class center_mantissa;
    long center_exp = 0;
    mpz_class radius_mantissa;
    long radius_exp = 0;
  };
  DyadicParts to_dyadic_parts() const;
  static RealBall from_dyadic_parts(const DyadicParts&, mpfr_prec_t prec = kDefaultPrec);

  mpfr_srcptr lo_raw() const { return lo_; }
  mpfr_srcptr hi_raw() const { return hi_; }
  mpfr_ptr lo_raw() { return lo_; }
  mpfr_ptr hi_raw() { return hi_; }

  std::string str(int digits = 20) const;

 private:
  mpfr_prec_t prec_;
  mpfr_t lo_, hi_;
};

/* ------------------------------------------------------------------ */
/* Value: exact rational when the computation permits, certified       */
/* enclosure otherwise. The evaluation type of the function families.  */
/* ------------------------------------------------------------------ */
class Value {
 public:
  Value() : v_(mpq_class(0)) {}
  /* implicit */ Value(mpq_class q) : v_(std::move(q)) {}
  /* implicit */ Value(RealBall b) : v_(std::move(b)) {}

  bool is_exact() const { return std::holds_alternative<mpq_class>(v_); }
  const mpq_class& exact() const { return std::get<mpq_class>(v_); }
  RealBall ball(mpfr_prec_t prec = kDefaultPrec) const;

  Value operator+(const Value&) const;
  Value operator*(const Value&) const;
  Value div(const Value&) const;
  Value pow_q(const mpq_class& e, mpfr_prec_t prec = kDefaultPrec) const;
  Value sqrt(mpfr_prec_t prec = kDefaultPrec) const;

  Verdict3 le(const Value&) const;
  Verdict3 lt(const Value&) const;
  bool surely_positive() const;

  // Conservative double endpoints (for fast filters).
  double lo_d() const;
  double hi_d() const;

  std::string str() const;

 private:
  std::variant<mpq_class, RealBall> v_;
};

/* ------------------------------------------------------------------ */
/* Rational helpers.                                                   */
/* ------------------------------------------------------------------ */

// q^e for positive rational q and rational e. Exact rational result when
// num and den of q^|e.num| are perfect e.den-th powers, else an enclosure.
Value rational_pow(const mpq_class& q, const mpq_class& e, mpfr_prec_t prec = kDefaultPrec);

// 2^e for rational e; exact when e is an integer.
Value pow2_q(const mpq_class& e, mpfr_prec_t prec = kDefaultPrec);

// Exact q^z for integer z (q != 0 when z < 0).
mpq_class q_pow_si(const mpq_class& q, long z);

// floor/ceil of a rational as integers.
mpz_class q_floor(const mpq_class& q);
mpz_class q_ceil(const mpq_class& q);

// ceil(a^(num/den)) for positive integer a and positive rational exponent.
mpz_class ceil_pow(const mpz_class& a, const mpq_class& e);

// Exact n-th root if z is a perfect n-th power.
std::optional<mpz_class> exact_root(const mpz_class& z, unsigned long n);

/* ------------------------------------------------------------------ */
/* DIntv: double-precision outward interval used as a sound prefilter. */
/* Round-to-nearest results are padded by one ulp in each direction,   */
/* so [lo,hi] always contains the exact result.                        */
/* ------------------------------------------------------------------ */
struct DIntv {
  double lo = 0.0, hi = 0.0;

  static DIntv point(double x) { return {x, x}; }
  static DIntv of(double lo, double hi);

  DIntv operator+(const DIntv& o) const;
  DIntv operator-(const DIntv& o) const;
  DIntv operator*(const DIntv& o) const;
  DIntv abs() const;
  bool surely_gt(double t) const { return lo > t; }
  bool surely_lt(double t) const { return hi < t; }
};

DIntv dintv_from_q(const mpq_class& q);

}  // namespace dioph::arith

#endif
