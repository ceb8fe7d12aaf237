#ifndef DIOPH_ROOTS_HPP
#define DIOPH_ROOTS_HPP

#include <optional>
#include <vector>

#include "dioph/arith.hpp"
#include "dioph/int_polynomial.hpp"

namespace dioph::poly {

struct CertifiedRoot {
  arith::RealBall re;       // enclosure of the real part
  arith::RealBall im;       // enclosure of the imaginary part
  arith::RealBall modulus;  // enclosure of |root|
};

/*
 * Certified enclosures of all complex roots of a squarefree polynomial.
 *
 * Approximations come from Weierstrass (Durand-Kerner) iteration; the
 * certificate is the classical inclusion result: with corrections
 * W_i = P(z_i) / (lc * prod_{j != i} (z_i - z_j)), every root of P lies in
 * the union of disks D(z_i, n|W_i|), and when the (slightly inflated)
 * disks are pairwise disjoint each contains exactly one root.
 *
 * Returns nullopt when the disks cannot be certified disjoint within the
 * precision cap.
 */
std::optional<std::vector<CertifiedRoot>> certified_roots(const IntPolynomial& p,
                                                          mpfr_prec_t start_prec,
                                                          mpfr_prec_t prec_cap);

}  // namespace dioph::poly

#endif
