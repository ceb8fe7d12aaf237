#ifndef DIOPH_MAHLER_HPP
#define DIOPH_MAHLER_HPP

#include <vector>

#include "dioph/arith.hpp"
#include "dioph/int_polynomial.hpp"

namespace dioph::poly {

struct MahlerResult {
  bool certified = false;  // false: precision cap hit, enclosure is Undecided
  arith::RealBall value;
};

/*
 * Enclosure of M_P = |lc| * prod max(1, |alpha_i|) over the complex roots.
 * Linear factors and complex-pair quadratics are exact; everything else
 * goes through certified root enclosures with precision escalation until
 * the relative width is below 2^(-precision/2), or the cap is hit.
 */
MahlerResult mahler_measure(const IntPolynomial& p, mpfr_prec_t precision = 64,
                            mpfr_prec_t prec_cap = 4096);

struct GelfondReport {
  int n = 0;                    // degree of the product
  mpz_class product_height;     // H of the product
  mpz_class heights_product;    // prod of part heights
  mpq_class ratio;              // H_prod / prod H_i
  bool lower_ok = false;        // 2^-n <= ratio
  bool upper_ok = false;        // ratio <= n + 1
};

// Exact ratio H_{prod P_i} / prod H_{P_i} checked against the
// implementation constants 2^-n and n+1.
GelfondReport gelfond_ratio(const std::vector<IntPolynomial>& parts);

struct SandwichReport {
  mpq_class lower;          // H / binom(d, floor(d/2)), exact
  mpq_class upper_sq;       // (d+1) * H^2: upper bound squared, exact
  MahlerResult mahler;
  arith::Verdict3 pass = arith::Verdict3::Unknown;
};

// binom(d, floor(d/2))^-1 H <= M(P) <= sqrt(d+1) H, certified through the
// measure enclosure (upper comparison done on squares, exactly).
SandwichReport mahler_height_sandwich(const IntPolynomial& p, mpfr_prec_t precision = 64);

mpz_class binomial(unsigned n, unsigned k);

}  // namespace dioph::poly

#endif
