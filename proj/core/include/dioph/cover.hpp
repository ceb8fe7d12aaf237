#ifndef DIOPH_COVER_HPP
#define DIOPH_COVER_HPP

#include <optional>
#include <vector>

#include "dioph/functions.hpp"

namespace dioph::cover {

/*
 * Quadratic surd base + coef * sqrt(rad) with rational parts and rad >= 0.
 * Exactly the endpoint field of the parabola resolution sets.
 */
struct QuadSurd {
  mpq_class base;
  mpq_class coef;
  mpq_class rad;  // >= 0

  static QuadSurd rational(mpq_class r) { return {std::move(r), 0, 0}; }
  bool is_rational() const { return coef == 0 || rad == 0; }
  mpq_class rational_value() const { return base; }

  // exact sign of (this - t)
  int cmp_q(const mpq_class& t) const;
  arith::RealBall ball(mpfr_prec_t prec = arith::kDefaultPrec) const;
};

struct ResolutionInterval {
  QuadSurd lo, hi;                 // exact endpoints, lo < hi
  arith::RealBall diameter;        // certified enclosure of hi - lo
};

/*
 * mu(q1, q2, p) = {x in [0,1] : |q1 x + q2 x^2 + p| < eps}: up to two
 * disjoint open intervals with exact quadratic-surd endpoints.
 */
struct ResolutionSet {
  long q1 = 0, q2 = 0, p = 0;
  mpq_class eps;
  std::vector<ResolutionInterval> intervals;  // 0, 1 or 2
  arith::RealBall total_diameter;

  Json to_json() const;
};

ResolutionSet resolution_intervals(long q1, long q2, long p, const mpq_class& eps,
                                   mpfr_prec_t prec = arith::kDefaultPrec);

enum class Theta { Theta1, Theta2 };
// Theta1 iff |q1| > 2 M |q2| with M = 1 + max_I |f'| = 3 for the parabola.
Theta theta_split(long q1, long q2, long M = 3);

struct CoverSumOptions {
  long hmax = 50;
  mpfr_prec_t prec = arith::kDefaultPrec;
  int workers = 1;
  bool measure_inner_constants = false;
};

struct Theta1Violation {
  long q1, q2, p;
  mpq_class diam_hi;
  mpq_class bound;  // Psi(|q1|)/|q1|
};

struct CoverSumReport {
  long hmax = 0;
  arith::RealBall theta1_sum, theta2_sum, total;
  arith::RealBall theta2_p0_sum, theta2_rest_sum;
  unsigned long triples = 0, nonempty = 0, undecided = 0;
  // Theta1 check: diam <= Psi(|q1|)/|q1| per the paper's display; the
  // sharp certified bound diam <= 2M/(M-1) Psi(|q1|)/|q1| is checked too.
  std::vector<Theta1Violation> theta1_violations;
  mpq_class theta1_max_ratio{0};       // max diam * |q1| / Psi(|q1|)
  bool theta1_sharp_bound_ok = true;   // diam <= 3 Psi(|q1|)/|q1| everywhere
  // inner-sum constants (optional measurement)
  mpq_class kappa{0};        // max over Theta2 pairs of S_inner / majorant
  mpq_class kappa_prime{0};  // max over q of sum_p max(sqrt(q/p),1) / q

  Json to_json() const;
};

// Full triple scan over max(|q1|, |q2|) <= hmax, |p| <= C(q1,q2) * q with
// the per-pair constant C = ceil(max_I |q1 x + q2 x^2| / q) + 1; psi must
// evaluate exactly on 1..hmax (power functions do).
CoverSumReport cover_sum(const funcs::DimensionFunction& g, const funcs::ApproxFunction& psi,
                         const CoverSumOptions& opt);

}  // namespace dioph::cover

#endif
