#ifndef DIOPH_EXTRACT_HPP
#define DIOPH_EXTRACT_HPP

#include <optional>
#include <string>
#include <vector>

#include "dioph/enumerate.hpp"
#include "dioph/factor.hpp"
#include "dioph/functions.hpp"
#include "dioph/mahler.hpp"
#include "dioph/real_point.hpp"

namespace dioph::extract {

enum class HeightKind { Naive, Mahler };
enum class CertStatus { Ok, Undecided, PreconditionFailed };

struct FactorEntry {
  poly::IntPolynomial q;       // irreducible, primitive, positive leading
  mpz_class height;            // naive height
  arith::RealBall mahler;      // Mahler enclosure (filled in Mahler mode)
  arith::RealBall value;       // |Q_i(x)|
  bool bounded = false;        // in the l-block (height <= threshold)
  // exponent profile over the unbounded block (empty balls otherwise)
  arith::RealBall g_exp;       // log|R_i(x)| / log|R(x)|
  arith::RealBall h_exp;       // normalized height exponent, sums to 1
};

/*
 * Full audit trail of one extraction: the factor list with multiplicity
 * flattened, the bounded block (l, H_x, D_x), the exponent profiles, the
 * selected irreducible factor and its inequality witness.
 */
struct ExtractionCertificate {
  CertStatus status = CertStatus::Undecided;
  HeightKind mode = HeightKind::Naive;
  poly::IntPolynomial input;
  mpz_class content{1};
  poly::IntPolynomial primitive;
  std::vector<FactorEntry> factors;
  size_t l = 0;                 // number of bounded-height factors
  mpz_class h_x{1};             // product of bounded heights
  arith::RealBall d_x;          // enclosure of prod of bounded |Q_i(x)|
  int selected = -1;
  arith::RealBall q_value;      // |Q(x)| for the selected factor
  arith::Value threshold;       // psi(H_Q) or psi(M_Q)
  arith::RealBall c_obs;        // q_value / threshold
  arith::RealBall sum_g, sum_h; // profile sums (should enclose 1)
  std::string note;

  const poly::IntPolynomial& selected_factor() const { return factors.at(static_cast<size_t>(selected)).q; }
  Json to_json() const;
};

struct ExtractOptions {
  HeightKind mode = HeightKind::Naive;
  mpz_class bounded_threshold{10};  // the proof's H_x cut
  mpfr_prec_t prec = arith::kDefaultPrec;
  mpfr_prec_t prec_cap = 4096;
};

/*
 * Requires |P(x)| <= Psi(H_P) certified (PreconditionFailed otherwise) and
 * P(x) != 0 (DomainError when x is a root). Returns a certificate whose
 * selected irreducible factor Q divides P and satisfies
 * |Q(x)| <= C_obs * Psi(H_Q) by construction of C_obs.
 */
ExtractionCertificate extract_irreducible(const poly::IntPolynomial& p, const pts::RealPoint& x,
                                          const funcs::ApproxFunction& psi,
                                          const ExtractOptions& opt = {});

// Exponent profiles of the unbounded factors; nullopt when |R(x)| is too
// close to 1 for the logarithms to certify.
struct ExponentProfile {
  std::vector<arith::RealBall> g;
  std::vector<arith::RealBall> h;
};
std::optional<ExponentProfile> exponent_profile(const poly::IntPolynomial& p,
                                                const pts::RealPoint& x,
                                                const mpz_class& bounded_threshold = 10,
                                                mpfr_prec_t prec = arith::kDefaultPrec);

/*
 * Condition (2.12) report: which irreducible factors exceed the height of
 * P itself, and whether their cofactors stay below
 * binom(n, floor(n/2)) sqrt(n+1) (compared exactly on squares).
 */
struct Gl22Entry {
  poly::IntPolynomial q;
  mpz_class factor_height;
  mpz_class cofactor_height;
  bool height_exceeds = false;        // H_{Q_i} > H_P
  bool cofactor_within_bound = false; // H_{P/Q_i}^2 <= binom^2 (n+1)
};
struct Gl22Report {
  mpz_class input_height;
  mpq_class bound_sq;  // binom(n, floor(n/2))^2 (n+1)
  std::vector<Gl22Entry> entries;
  bool triggered = false;  // some factor exceeds H_P with cofactor in bound
  Json to_json() const;
};
Gl22Report check_gl22(const poly::IntPolynomial& p);

}  // namespace dioph::extract

#endif
