#ifndef DIOPH_SERIES_HPP
#define DIOPH_SERIES_HPP

#include <optional>
#include <string>
#include <vector>

#include "dioph/functions.hpp"

namespace dioph::series {

enum class SeriesId {
  Series1,       // sum_k 2^{3k} g(Psi(2^k)/2^k)
  Series3,       // sum_k 2^k g(sqrt(Psi(2^k))/2^{k/2})
  GbspCurve,     // sum_q q^2 g(Psi(q)/q)
  Pezzoni,       // sum_q q^{3-2lambda/3} g(Psi(q)/q)
  GoodpairEqn1,  // sum_b b Psi(b)^s
  GoodpairEqn2,  // sum_b sum_{|a|<b, (a,b)=1} ||q||^{1-s} psi(q)^s = sum_b 2 phi(b) b^2 Psi(b)^{2s}
  SeeAbove,      // sum_k (Psi(2^k)^{1-eps} 2^{2k} + k 2^k) g(sqrt(Psi(2^k)/2^k))
};

std::string series_name(SeriesId id);

struct SeriesParams {
  mpq_class s{1, 2};       // good-pair exponent, in (0, 1]
  mpq_class lambda{0};     // Pezzoni lambda, in [0, 9/20)
  mpq_class eps{1, 10};    // SeeAbove epsilon, < 1/2
  // Series1/Series3 with a dichotomy pair: sum only the k = k_n terms
  // (the proof's divergence minorant; block j is the single term at k_j).
  bool dichotomy_level_blocks = false;
};

enum class SeriesVerdict { None, ConvergesBelow, DivergesBeyond, Inconclusive };

std::string verdict_name(SeriesVerdict v);

struct SeriesReport {
  SeriesId id{};
  SeriesParams params;
  unsigned long K = 0;
  arith::Value partial;                    // exact rational when the family permits
  std::vector<arith::Value> terms;         // observed terms (for rule certification)
  std::vector<mpq_class> natural_index;    // q / b / k per term
  std::optional<mpq_class> tail_bound;     // certified upper bound on the remainder
  SeriesVerdict verdict = SeriesVerdict::None;
  std::optional<mpq_class> bound;          // ConvergesBelow: partial.hi + tail
  std::string detail;
  unsigned long undecided = 0;

  Json to_json(bool include_terms = false) const;
};

/*
 * Tail rules: a ConvergesBelow verdict requires a certified tail bound,
 * a DivergesBeyond verdict a certified divergent minorant. Each rule is
 * re-verified against the observed terms before it is applied; shapes the
 * engine derives itself (power families, the dichotomy construction) are
 * exact, caller-supplied shapes are checked on the observed tail and the
 * verdict notes the presumption.
 */
struct TailRule {
  enum class Kind {
    None,
    GeometricTail,      // t_{j+1} <= cap * t_j on the tail, cap < 1
    IntegralTest,       // t <= C q^-p (ln q)^-ell, p > 1 or (p = 1, ell > 1)
    ExplicitBound,      // caller-certified tail bound (construction-specific)
    DivergentMinorant,  // t >= c (const) or t >= c q^-1 (ln q)^-ell2, ell2 in {0,1}
  };
  Kind kind = Kind::None;
  mpq_class ratio_cap{1, 2};
  mpq_class C{1};
  mpq_class p{2};
  mpq_class ell{0};
  mpq_class bound{0};
  std::string origin;
  mpq_class c{1, 2};
  long ell2 = 0;
  bool const_minorant = false;

  static TailRule none() { return {}; }
  static TailRule geometric(mpq_class cap);
  static TailRule integral(mpq_class C, mpq_class p, mpq_class ell);
  static TailRule explicit_bound(mpq_class bound, std::string origin);
  static TailRule minorant_const(mpq_class c);
  static TailRule minorant_harmonic(mpq_class c, long ell2);
};

// First K terms. g may be null for the good-pair series. K = 0 is allowed
// and yields an empty report whose verdict can only be Inconclusive.
SeriesReport partial_sum(SeriesId id, const funcs::ApproxPtr& psi, const funcs::DimPtr& g,
                         const SeriesParams& params, unsigned long K,
                         mpfr_prec_t prec = arith::kDefaultPrec);

// Applies a tail rule, filling verdict/tail_bound/bound.
SeriesReport apply_verdict(SeriesReport rep, const TailRule& rule,
                           mpfr_prec_t prec = arith::kDefaultPrec);

// Canonical rule for families the engine understands (power / log-corrected
// families and the dichotomy construction); Kind::None when it cannot.
TailRule derive_tail_rule(const SeriesReport& rep, const funcs::ApproxFunction* psi,
                          const funcs::DimensionFunction* g);

}  // namespace dioph::series

#endif
