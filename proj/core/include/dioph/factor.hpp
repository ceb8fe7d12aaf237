#ifndef DIOPH_FACTOR_HPP
#define DIOPH_FACTOR_HPP

#include <vector>

#include "dioph/int_polynomial.hpp"

namespace dioph::poly {

struct FactorPart {
  IntPolynomial poly;     // irreducible, primitive, positive leading coefficient
  unsigned multiplicity;  // >= 1
};

/*
 * content * unit * prod(factors[i].poly ^ multiplicity) reconstructs the
 * input exactly. Factors are sorted by degree then coefficients, so the
 * result is deterministic and backend independent.
 */
struct Factorization {
  mpz_class content{1};  // positive
  int unit = 1;          // +1 or -1, sign of the leading coefficient
  std::vector<FactorPart> factors;

  IntPolynomial reconstruct() const;
  size_t total_irreducible_count() const;  // sum of multiplicities
  bool is_irreducible() const;             // one factor, multiplicity 1
};

enum class FactorBackend {
  Lifting,      // squarefree split + factorization mod p + Hensel lifting
  Enumeration,  // complete divisor-candidate search (heights <= 2^n H_P)
};

// Requires p nonzero and deg p <= kMaxFactorDegree (UnsupportedDegree
// otherwise). The enumeration backend is intended for small inputs and is
// used as the independent cross-check.
Factorization factor(const IntPolynomial& p, FactorBackend backend = FactorBackend::Lifting);

bool is_irreducible(const IntPolynomial& p, FactorBackend backend = FactorBackend::Lifting);

}  // namespace dioph::poly

#endif
