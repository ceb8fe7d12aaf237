#ifndef DIOPH_CF_NUMBER_HPP
#define DIOPH_CF_NUMBER_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "dioph/arith.hpp"
#include "dioph/int_polynomial.hpp"

namespace dioph::cex {

/*
 * Real number given by its continued fraction [0; a_1, a_2, ...] with the
 * partial quotients generated by a_{i+1} = ceil(a_i^w). Convergents are
 * exact integers; value enclosures come from consecutive convergents.
 */
class CFNumber {
 public:
  int n = 0;          // the polynomial degree the instance was built for
  mpq_class w;        // growth exponent, > n(2n-1)
  std::vector<mpz_class> a;  // partial quotients, a[0] = 0
  std::vector<mpz_class> p;  // convergent numerators, p[l]
  std::vector<mpz_class> q;  // convergent denominators, q[l]

  size_t depth() const { return a.size() - 1; }
  mpq_class convergent(size_t l) const { return mpq_class(p[l], q[l]); }

  // Exact rational bracket around the value from convergents l and l+1.
  std::pair<mpq_class, mpq_class> bracket(size_t l) const;

  // Ball from the bracket at the given level.
  arith::RealBall enclosure(size_t level, mpfr_prec_t prec) const;
  // Tightest available enclosure with width at most max_width if some
  // level achieves it; otherwise the deepest available bracket.
  arith::RealBall enclosure_width(const mpq_class& max_width, mpfr_prec_t prec) const;
};

// Builds the number; enforces w > n(2n-1) and q_l >= n p_l at every level
// (DomainError names the offending level otherwise).
CFNumber build_cf_number(int n, const mpq_class& w, const mpz_class& a1, size_t depth);

struct CFGrowthWindow {
  mpq_class c1, c2;  // c1 q_{l-1}^w < q_l < c2 q_{l-1}^w for l = 1..depth
};
CFGrowthWindow growth_window(const CFNumber& cf);

struct CFValueWindow {
  mpq_class c3, c4;  // c3 q_l^-w < |R_l(x)| < c4 q_l^-w for l = 1..depth-1
};
// Constants measured from the certified convergent sandwich
// 1/(q_l + q_{l+1}) <= |q_l x - p_l| <= 1/q_{l+1}, padded outward so every
// level certifies strictly.
CFValueWindow value_window(const CFNumber& cf);

// R_l = q_l t - p_l together with R_l^n; asserts H(R_l^n) = q_l^n.
std::pair<poly::IntPolynomial, poly::IntPolynomial> convergent_poly(const CFNumber& cf,
                                                                    size_t l, int n);

}  // namespace dioph::cex

#endif
