#ifndef DIOPH_INT_POLYNOMIAL_HPP
#define DIOPH_INT_POLYNOMIAL_HPP

#include <gmpxx.h>

#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dioph/arith.hpp"
#include "dioph/error.hpp"
#include "dioph/json.hpp"

namespace dioph::poly {

// Degrees above this are out of scope for factorization and the operations
// that depend on it.
inline constexpr int kMaxFactorDegree = 8;

/*
 * Dense integer polynomial a_0 + a_1 t + ... + a_n t^n with arbitrary
 * precision coefficients stored low-to-high. The zero polynomial has an
 * empty coefficient vector; all other representations keep the invariant
 * that the top stored coefficient is nonzero.
 */
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { normalize(); }
  IntPolynomial(std::initializer_list<long> coeffs_low_to_high) {
    for (long v : coeffs_low_to_high) c_.emplace_back(v);
    normalize();
  }

  static IntPolynomial constant(mpz_class v) {
    return IntPolynomial(std::vector<mpz_class>{std::move(v)});
  }
  // q_l * t - p_l style linear polynomial b*t + a.
  static IntPolynomial linear(mpz_class a, mpz_class b) {
    return IntPolynomial(std::vector<mpz_class>{std::move(a), std::move(b)});
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  const mpz_class& coeff(size_t i) const {
    static const mpz_class zero(0);
    return i < c_.size() ? c_[i] : zero;
  }
  const mpz_class& leading() const {
    if (is_zero()) throw DomainError("leading coefficient of zero polynomial");
    return c_.back();
  }

  bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }

  // H_P = max |a_i| over all coefficients including a_0.
  mpz_class height() const;
  // ||q|| convention: max over |a_1|,...,|a_n|; requires degree >= 1.
  mpz_class height_excluding_constant() const;
  mpz_class content() const;  // positive gcd of |coefficients|
  // (content, P/content); the primitive part keeps the leading sign.
  std::pair<mpz_class, IntPolynomial> primitive_part() const;

  IntPolynomial derivative() const;
  IntPolynomial operator+(const IntPolynomial&) const;
  IntPolynomial operator-(const IntPolynomial&) const;
  IntPolynomial operator*(const IntPolynomial&) const;
  IntPolynomial operator-() const;
  IntPolynomial mul_scalar(const mpz_class&) const;
  IntPolynomial mul_xpow(unsigned k) const;  // * t^k
  IntPolynomial pow(unsigned e) const;

  mpq_class eval_q(const mpq_class& x) const;
  mpz_class eval_z(const mpz_class& x) const;
  arith::RealBall eval_ball(const arith::RealBall& x) const;
  arith::DIntv eval_dintv(const arith::DIntv& x) const;

  // Representative with positive top coefficient (P and -P identified).
  IntPolynomial sign_canonical() const;
  bool is_sign_canonical() const { return is_zero() || leading() > 0; }

  // Deterministic order: by degree, then coefficients low-to-high.
  static bool canon_less(const IntPolynomial& a, const IntPolynomial& b);

  std::string str() const;  // e.g. "3t^2 - 5t + 2"

 private:
  void normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<mpz_class> c_;
};

// Exact quotient when den divides num in Z[t]; nullopt otherwise.
std::optional<IntPolynomial> divide_exact(const IntPolynomial& num, const IntPolynomial& den);

// Primitive gcd with positive leading coefficient (primitive PRS).
IntPolynomial poly_gcd(const IntPolynomial& a, const IntPolynomial& b);

// Resultant of a and b (Sylvester determinant, Bareiss elimination).
mpz_class resultant(const IntPolynomial& a, const IntPolynomial& b);

// disc(P) = (-1)^{n(n-1)/2} Res(P, P') / lc(P); requires deg >= 1.
mpz_class discriminant(const IntPolynomial& p);

// Membership in the small-discriminant class P_{n,lambda}:
// |D(P)| <= H_P^{2(n-1-lambda)} with n the degree bound.
bool in_discriminant_class(const IntPolynomial& p, int n, const mpq_class& lambda);

// {"coeffs": ["a0", ..., "an"]} with decimal-string integers.
Json poly_to_json(const IntPolynomial& p);
IntPolynomial poly_from_json(const Json& j);

Json ball_to_json(const arith::RealBall& b);
arith::RealBall ball_from_json(const Json& j, mpfr_prec_t prec = arith::kDefaultPrec);

}  // namespace dioph::poly

#endif
