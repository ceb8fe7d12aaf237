#ifndef DIOPH_FUNCTIONS_HPP
#define DIOPH_FUNCTIONS_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dioph/arith.hpp"
#include "dioph/cf_number.hpp"
#include "dioph/json.hpp"

namespace dioph::funcs {

using arith::Value;

/*
 * Approximating function family: non-increasing, positive, tending to 0.
 * Evaluation is exact where the variant supports it (power functions at
 * perfect powers, the piecewise families at dyadic arguments) and a
 * certified enclosure otherwise.
 */
class ApproxFunction {
 public:
  virtual ~ApproxFunction() = default;

  virtual Value eval(const mpq_class& q, mpfr_prec_t prec = arith::kDefaultPrec) const = 0;
  // Enclosure of psi over [lo, hi] (monotone bracketing).
  arith::RealBall eval_interval(const mpq_class& lo, const mpq_class& hi,
                                mpfr_prec_t prec = arith::kDefaultPrec) const;

  virtual mpq_class domain_min() const { return 1; }
  virtual std::optional<mpq_class> domain_max() const { return std::nullopt; }

  virtual std::string name() const = 0;
  virtual Json descriptor() const = 0;
  // extra grid points the condition checkers should include
  virtual std::vector<mpq_class> grid_breakpoints() const { return {}; }
};

using ApproxPtr = std::shared_ptr<const ApproxFunction>;

/* Dimension function family: increasing, continuous, g(0) = 0. */
class DimensionFunction {
 public:
  virtual ~DimensionFunction() = default;

  virtual Value eval(const mpq_class& r, mpfr_prec_t prec = arith::kDefaultPrec) const = 0;
  arith::RealBall eval_interval(const mpq_class& lo, const mpq_class& hi,
                                mpfr_prec_t prec = arith::kDefaultPrec) const;

  virtual mpq_class domain_min() const { return 0; }

  virtual std::string name() const = 0;
  virtual Json descriptor() const = 0;
  virtual std::vector<mpq_class> grid_breakpoints() const { return {}; }
};

using DimPtr = std::shared_ptr<const DimensionFunction>;

/* ------------------------- concrete variants ----------------------- */

// q -> q^-tau
class PowerPsi : public ApproxFunction {
 public:
  explicit PowerPsi(mpq_class tau);
  Value eval(const mpq_class& q, mpfr_prec_t prec) const override;
  std::string name() const override;
  Json descriptor() const override;
  const mpq_class& tau() const { return tau_; }

 private:
  mpq_class tau_;
};

// q -> e^(-q tau)
class ExpPowerPsi : public ApproxFunction {
 public:
  explicit ExpPowerPsi(mpq_class tau);
  Value eval(const mpq_class& q, mpfr_prec_t prec) const override;
  std::string name() const override;
  Json descriptor() const override;
  const mpq_class& tau() const { return tau_; }

 private:
  mpq_class tau_;
};

// q -> A q^-tau (log q)^a (loglog q)^b (1 + e^(-c q)), natural logs.
// a may be negative (the good-pair construction uses log^(-2)); b != 0
// restricts the domain to q >= 3 so that loglog q > 0.
class LogCorrectedPsi : public ApproxFunction {
 public:
  LogCorrectedPsi(mpq_class A, mpq_class tau, mpq_class a, mpq_class b, mpq_class c);
  Value eval(const mpq_class& q, mpfr_prec_t prec) const override;
  mpq_class domain_min() const override;
  std::string name() const override;
  Json descriptor() const override;
  const mpq_class& tau() const { return tau_; }
  const mpq_class& log_exp() const { return a_; }
  const mpq_class& loglog_exp() const { return b_; }
  const mpq_class& exp_coeff() const { return c_; }
  const mpq_class& amplitude() const { return A_; }

 private:
  mpq_class A_, tau_, a_, b_, c_;
};

/*
 * The dichotomy construction: Q_n = 2^{k_n}, Psi(q) = Q_n^{1-2 beta} on
 * (Q_{n-1}, Q_n]. Holds one guard level beyond the requested depth; valid
 * arguments are 1 < q <= Q_depth.
 */
class PiecewiseDichotomyPsi : public ApproxFunction {
 public:
  PiecewiseDichotomyPsi(mpq_class alpha, mpq_class beta, std::vector<long> k_exponents);
  Value eval(const mpq_class& q, mpfr_prec_t prec) const override;
  mpq_class domain_min() const override { return 1; }
  std::optional<mpq_class> domain_max() const override;
  std::string name() const override;
  Json descriptor() const override;
  std::vector<mpq_class> grid_breakpoints() const override;

  // base-2 exponent of Psi(2^j): k_n (1 - 2 beta) for the block holding j
  mpq_class log2_at_pow2(long j) const;
  size_t depth() const { return k_.size() - 1; }  // usable levels
  long k(size_t n) const { return k_.at(n - 1); }
  const mpq_class& alpha() const { return alpha_; }
  const mpq_class& beta() const { return beta_; }

 private:
  size_t block_of_pow2(long j) const;
  mpq_class alpha_, beta_;
  std::vector<long> k_;  // k_1 .. k_{depth+1} (last is the guard level)
};

// Theorem 2.13 function: Psi(q) = c4^n q_l^{-w n} on (q_{l-1}^n, q_l^n],
// extended left of q_1^n by its first value (locally constant).
class LocallyConstantCFPsi : public ApproxFunction {
 public:
  LocallyConstantCFPsi(int n, mpq_class w, mpq_class c4, std::vector<mpz_class> q_denoms);
  Value eval(const mpq_class& q, mpfr_prec_t prec) const override;
  std::optional<mpq_class> domain_max() const override;
  std::string name() const override;
  Json descriptor() const override;
  std::vector<mpq_class> grid_breakpoints() const override;

  int n() const { return n_; }
  const mpq_class& w() const { return w_; }
  const mpq_class& c4() const { return c4_; }

 private:
  int n_;
  mpq_class w_, c4_;
  std::vector<mpz_class> ql_;
};

// Step function through decreasing samples: value v_i on (q_{i-1}, q_i].
class TabulatedMonotonePsi : public ApproxFunction {
 public:
  explicit TabulatedMonotonePsi(std::vector<std::pair<mpq_class, mpq_class>> samples);
  Value eval(const mpq_class& q, mpfr_prec_t prec) const override;
  mpq_class domain_min() const override { return 0; }
  std::optional<mpq_class> domain_max() const override { return samples_.back().first; }
  std::string name() const override { return "tabulated_monotone"; }
  Json descriptor() const override;
  std::vector<mpq_class> grid_breakpoints() const override;

 private:
  std::vector<std::pair<mpq_class, mpq_class>> samples_;
};

// r -> r^s, s in (0, 1]
class PowerG : public DimensionFunction {
 public:
  explicit PowerG(mpq_class s);
  Value eval(const mpq_class& r, mpfr_prec_t prec) const override;
  std::string name() const override;
  Json descriptor() const override;
  const mpq_class& s() const { return s_; }

 private:
  mpq_class s_;
};

/*
 * g = max_n g_n with g_n(r) = Q_n^-1 for r >= Q_n^-beta and linear with
 * slope Q_n^{beta-1} below. Exact at dyadic (and rational) arguments; the
 * domain is restricted to r >= Q_{depth+1}^{-beta} so the truncated max
 * equals the infinite one.
 */
class PiecewiseLinearMaxG : public DimensionFunction {
 public:
  PiecewiseLinearMaxG(mpq_class beta, std::vector<long> k_exponents);
  Value eval(const mpq_class& r, mpfr_prec_t prec) const override;
  mpq_class domain_min() const override;
  std::string name() const override;
  Json descriptor() const override;
  std::vector<mpq_class> grid_breakpoints() const override;

  // g evaluated at r = 2^e in exponent space (exact comparisons).
  Value eval_pow2(const mpq_class& e, mpfr_prec_t prec = arith::kDefaultPrec) const;
  size_t levels() const { return k_.size(); }
  long k(size_t n) const { return k_.at(n - 1); }
  const mpq_class& beta() const { return beta_; }

 private:
  mpq_class beta_;
  std::vector<long> k_;  // k_1 .. k_{depth+1}
};

// Piecewise linear interpolation through increasing samples, g(0) = 0.
class TabulatedIncreasingG : public DimensionFunction {
 public:
  explicit TabulatedIncreasingG(std::vector<std::pair<mpq_class, mpq_class>> samples);
  Value eval(const mpq_class& r, mpfr_prec_t prec) const override;
  std::string name() const override { return "tabulated_increasing"; }
  Json descriptor() const override;
  std::vector<mpq_class> grid_breakpoints() const override;

 private:
  std::vector<std::pair<mpq_class, mpq_class>> samples_;
};

/* ------------------------- constructions --------------------------- */

// Theorem 2.6 pair: k_n = ceil(alpha k_{n-1}), Q_n = 2^{k_n}. Requires
// alpha > 3, beta > 3 and validates k_n / k_{n-1} > 3.
std::pair<ApproxPtr, DimPtr> build_dichotomy_pair(const mpq_class& alpha, const mpq_class& beta,
                                                  long k1, size_t depth);

// Theorem 2.13 function built from a continued-fraction instance; c4 comes
// from the certified value window of cf.
ApproxPtr build_bugresu_psi(const cex::CFNumber& cf);

/* ------------------------- serialization --------------------------- */

Json approx_to_json(const ApproxFunction& f);
ApproxPtr approx_from_json(const Json& j);
Json dim_to_json(const DimensionFunction& g);
DimPtr dim_from_json(const Json& j);

}  // namespace dioph::funcs

#endif
