#ifndef DIOPH_COUNTEREXAMPLES_HPP
#define DIOPH_COUNTEREXAMPLES_HPP

#include <optional>
#include <vector>

#include "dioph/cf_number.hpp"
#include "dioph/functions.hpp"
#include "dioph/int_polynomial.hpp"

namespace dioph::cex {

/* ------------------------- Theorem 2.13 claims --------------------- */

struct Claim1Level {
  size_t level = 0;
  // exact route: |R_l(x)| <= 1/q_{l+1} < c4 q_l^-w, powered to n
  bool exact_route = false;
  // ball route: |R_l^n(x)| enclosure compared against Psi(H) directly
  bool ball_route = false;
  arith::RealBall value;   // |R_l^n(x)|
  arith::Value threshold;  // Psi(q_l^n)
};

struct Claim1Report {
  bool certified = false;  // every requested level passed both routes
  std::vector<Claim1Level> levels;
  Json to_json() const;
};

// Certifies |R_l^n(x)| <= Psi(H_{R_l^n}) for l = 1..L. Requires
// L <= depth-1 (the exact route needs q_{l+1}).
Claim1Report verify_bugresu_claim1(const CFNumber& cf, const funcs::ApproxFunction& psi, int n,
                                   size_t L, mpfr_prec_t prec = arith::kDefaultPrec);

struct Claim2Report {
  arith::RealBall delta;  // min over irreducible Q of |Q(x)| / Psi(H_Q)^(1/n)
  poly::IntPolynomial argmin;
  unsigned long scanned = 0;
  unsigned long undecided = 0;
  bool undecided_over_budget = false;
  Json to_json() const;
};

// Exhaustive scan over irreducible Q with deg <= n and H_Q <= hmax; the
// measured Delta must stay positive and stable for the claim to hold at
// desk scale.
Claim2Report verify_bugresu_claim2(const CFNumber& cf, const funcs::ApproxFunction& psi, int n,
                                   const mpz_class& hmax, mpfr_prec_t prec = arith::kDefaultPrec,
                                   int workers = 1);

// q_l in (q_{l-1}^n, q_l^n] for every level (the step alignment that makes
// Psi(q_l) = c4^n q_l^{-wn} exact).
bool verify_step_alignment(const CFNumber& cf, int n);

/* ------------------------------ good pairs ------------------------- */

struct GoodPair {
  mpz_class a;
  mpz_class b;  // gcd(a, b) = 1, |a| < b
  std::pair<mpz_class, mpz_class> q() const { return {-2 * a * b, b * b}; }
  mpz_class p() const { return a * a; }
};

// All coprime (a, b) with |a| < b <= bmax; b = 1 contributes (0, 1).
std::vector<GoodPair> good_pairs(const mpz_class& bmax);

// Inverts q = (-2ab, b^2) when possible: b = sqrt(q2), a = -q1/(2b).
std::optional<GoodPair> recognize_good_pair(const mpz_class& q1, const mpz_class& q2);

// psi(q) = b^2 Psi(b)^2 on good pairs, 0 otherwise.
arith::Value psi_goodpair(const funcs::ApproxFunction& psi, const mpz_class& q1,
                          const mpz_class& q2, mpfr_prec_t prec = arith::kDefaultPrec);

struct IdentityReport {
  mpq_class lhs_plus;   // q1 x + q2 x^2 + a^2
  mpq_class lhs_minus;  // q1 x + q2 x^2 - a^2 (the paper's printed sign)
  mpq_class rhs;        // b^2 (x - a/b)^2
  bool plus_matches = false;
  bool minus_matches = false;
};
// Exact rational check of the good-pair identity at x.
IdentityReport verify_goodpair_identity(const mpz_class& a, const mpz_class& b,
                                        const mpq_class& x);

}  // namespace dioph::cex

#endif
