#include "dioph/functions.hpp"

#include <algorithm>

namespace dioph::funcs {

using arith::RealBall;
using arith::rational_pow;
using arith::pow2_q;

arith::RealBall ApproxFunction::eval_interval(const mpq_class& lo, const mpq_class& hi,
                                              mpfr_prec_t prec) const {
  if (lo > hi) throw DomainError("eval_interval: lo > hi");
  // psi non-increasing: value over [lo, hi] lies in [psi(hi), psi(lo)]
  RealBall a = eval(hi, prec).ball(prec);
  RealBall b = eval(lo, prec).ball(prec);
  return RealBall::from_q_interval(a.lo_q(), b.hi_q(), prec);
}

arith::RealBall DimensionFunction::eval_interval(const mpq_class& lo, const mpq_class& hi,
                                                 mpfr_prec_t prec) const {
  if (lo > hi) throw DomainError("eval_interval: lo > hi");
  RealBall a = eval(lo, prec).ball(prec);
  RealBall b = eval(hi, prec).ball(prec);
  return RealBall::from_q_interval(a.lo_q(), b.hi_q(), prec);
}

/* ------------------------------ PowerPsi --------------------------- */

PowerPsi::PowerPsi(mpq_class tau) : tau_(std::move(tau)) {
  if (tau_ <= 0) throw DomainError("PowerPsi: tau > 0 required");
}

Value PowerPsi::eval(const mpq_class& q, mpfr_prec_t prec) const {
  if (q <= 0) throw DomainError("PowerPsi: q > 0 required");
  return rational_pow(q, -tau_, prec);
}

std::string PowerPsi::name() const { return "power(tau=" + tau_.get_str() + ")"; }

Json PowerPsi::descriptor() const { return Json{{"variant", "power"}, {"tau", tau_.get_str()}}; }

/* ---------------------------- ExpPowerPsi -------------------------- */

ExpPowerPsi::ExpPowerPsi(mpq_class tau) : tau_(std::move(tau)) {
  if (tau_ <= 0) throw DomainError("ExpPowerPsi: tau > 0 required");
}

Value ExpPowerPsi::eval(const mpq_class& q, mpfr_prec_t prec) const {
  if (q <= 0) throw DomainError("ExpPowerPsi: q > 0 required");
  RealBall e = RealBall::from_q(-q * tau_, prec);
  return Value(e.exp());
}

std::string ExpPowerPsi::name() const { return "exp_power(tau=" + tau_.get_str() + ")"; }

Json ExpPowerPsi::descriptor() const {
  return Json{{"variant", "exp_power"}, {"tau", tau_.get_str()}};
}

/* --------------------------- LogCorrectedPsi ----------------------- */

LogCorrectedPsi::LogCorrectedPsi(mpq_class A, mpq_class tau, mpq_class a, mpq_class b, mpq_class c)
    : A_(std::move(A)), tau_(std::move(tau)), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  if (A_ <= 0) throw DomainError("LogCorrectedPsi: A > 0 required");
  if (tau_ <= 0) throw DomainError("LogCorrectedPsi: tau > 0 required");
  if (c_ < 0) throw DomainError("LogCorrectedPsi: c >= 0 required");
}

mpq_class LogCorrectedPsi::domain_min() const {
  // log q must clear 1 when the loglog factor is present
  return b_ == 0 ? mpq_class(2) : mpq_class(3);
}

Value LogCorrectedPsi::eval(const mpq_class& q, mpfr_prec_t prec) const {
  if (q < domain_min()) throw DomainError("LogCorrectedPsi: argument below domain");
  RealBall qq = RealBall::from_q(q, prec);
  RealBall acc = RealBall::from_q(A_, prec) * qq.pow_q(-tau_);
  if (a_ != 0) acc = acc * qq.log().pow_q(a_);
  if (b_ != 0) acc = acc * qq.log().log().pow_q(b_);
  if (c_ != 0) {
    RealBall e = RealBall::from_q(-q * c_, prec).exp();
    acc = acc * (RealBall::one(prec) + e);
  }
  return Value(acc);
}

std::string LogCorrectedPsi::name() const {
  return "log_corrected(A=" + A_.get_str() + ",tau=" + tau_.get_str() + ",a=" + a_.get_str() +
         ",b=" + b_.get_str() + ",c=" + c_.get_str() + ")";
}

Json LogCorrectedPsi::descriptor() const {
  return Json{{"variant", "log_corrected"},
              {"A", A_.get_str()},
              {"tau", tau_.get_str()},
              {"log_exp", a_.get_str()},
              {"loglog_exp", b_.get_str()},
              {"exp_coeff", c_.get_str()}};
}

/* ------------------------ PiecewiseDichotomyPsi -------------------- */

PiecewiseDichotomyPsi::PiecewiseDichotomyPsi(mpq_class alpha, mpq_class beta,
                                             std::vector<long> k_exponents)
    : alpha_(std::move(alpha)), beta_(std::move(beta)), k_(std::move(k_exponents)) {
  if (alpha_ <= 3 || beta_ <= 3) throw DomainError("dichotomy: alpha, beta > 3 required");
  if (k_.size() < 2) throw DomainError("dichotomy: need at least one level plus guard");
  for (size_t i = 0; i + 1 < k_.size(); ++i)
    if (mpq_class(k_[i + 1]) <= 3 * mpq_class(k_[i]))
      throw DomainError("dichotomy: k-sequence must satisfy k_n/k_{n-1} > 3");
}

size_t PiecewiseDichotomyPsi::block_of_pow2(long j) const {
  if (j < 1) throw DomainError("dichotomy psi: argument must exceed 1");
  for (size_t n = 0; n + 1 < k_.size(); ++n)
    if (j <= k_[n]) return n;
  throw DomainError("dichotomy psi: argument beyond construction depth");
}

mpq_class PiecewiseDichotomyPsi::log2_at_pow2(long j) const {
  size_t n = block_of_pow2(j);
  return mpq_class(k_[n]) * (1 - 2 * beta_);
}

Value PiecewiseDichotomyPsi::eval(const mpq_class& q, mpfr_prec_t prec) const {
  if (q <= 1) throw DomainError("dichotomy psi: q > 1 required");
  // find block with Q_{n-1} < q <= Q_n
  for (size_t n = 0; n + 1 < k_.size(); ++n) {
    mpq_class qn = arith::q_pow_si(mpq_class(2), k_[n]);
    if (q <= qn) return pow2_q(mpq_class(k_[n]) * (1 - 2 * beta_), prec);
  }
  throw DomainError("dichotomy psi: argument beyond construction depth");
}

std::optional<mpq_class> PiecewiseDichotomyPsi::domain_max() const {
  return arith::q_pow_si(mpq_class(2), k_[k_.size() - 2]);
}

std::string PiecewiseDichotomyPsi::name() const {
  return "piecewise_dichotomy(alpha=" + alpha_.get_str() + ",beta=" + beta_.get_str() +
         ",depth=" + std::to_string(depth()) + ")";
}

Json PiecewiseDichotomyPsi::descriptor() const {
  Json ks = Json::array();
  for (long k : k_) ks.push_back(k);
  return Json{{"variant", "piecewise_dichotomy"},
              {"alpha", alpha_.get_str()},
              {"beta", beta_.get_str()},
              {"k", ks}};
}

std::vector<mpq_class> PiecewiseDichotomyPsi::grid_breakpoints() const {
  std::vector<mpq_class> out;
  for (size_t n = 0; n + 1 < k_.size(); ++n)
    out.push_back(arith::q_pow_si(mpq_class(2), k_[n]));
  return out;
}

/* ------------------------ LocallyConstantCFPsi --------------------- */

LocallyConstantCFPsi::LocallyConstantCFPsi(int n, mpq_class w, mpq_class c4,
                                           std::vector<mpz_class> q_denoms)
    : n_(n), w_(std::move(w)), c4_(std::move(c4)), ql_(std::move(q_denoms)) {
  if (n_ < 1) throw DomainError("cf psi: n >= 1");
  if (c4_ <= 0) throw DomainError("cf psi: c4 > 0");
  if (ql_.empty()) throw DomainError("cf psi: need at least one denominator");
  for (size_t i = 0; i + 1 < ql_.size(); ++i)
    if (ql_[i] >= ql_[i + 1]) throw DomainError("cf psi: denominators must increase");
}

Value LocallyConstantCFPsi::eval(const mpq_class& q, mpfr_prec_t prec) const {
  if (q <= 0) throw DomainError("cf psi: q > 0 required");
  for (const auto& ql : ql_) {
    mpz_class qn;
    mpz_pow_ui(qn.get_mpz_t(), ql.get_mpz_t(), static_cast<unsigned long>(n_));
    if (q <= mpq_class(qn)) {
      // c4^n * q_l^(-w n)
      Value p = rational_pow(mpq_class(ql), -w_ * n_, prec);
      mpq_class c4pow = arith::q_pow_si(c4_, n_);
      return Value(c4pow) * p;
    }
  }
  throw DomainError("cf psi: argument beyond q_depth^n");
}

std::optional<mpq_class> LocallyConstantCFPsi::domain_max() const {
  mpz_class qn;
  mpz_pow_ui(qn.get_mpz_t(), ql_.back().get_mpz_t(), static_cast<unsigned long>(n_));
  return mpq_class(qn);
}

std::string LocallyConstantCFPsi::name() const {
  return "locally_constant_cf(n=" + std::to_string(n_) + ",w=" + w_.get_str() + ")";
}

Json LocallyConstantCFPsi::descriptor() const {
  Json qs = Json::array();
  for (const auto& v : ql_) qs.push_back(v.get_str());
  return Json{{"variant", "locally_constant_cf"},
              {"n", n_},
              {"w", w_.get_str()},
              {"c4", c4_.get_str()},
              {"q", qs}};
}

std::vector<mpq_class> LocallyConstantCFPsi::grid_breakpoints() const {
  std::vector<mpq_class> out;
  for (const auto& ql : ql_) {
    mpz_class qn;
    mpz_pow_ui(qn.get_mpz_t(), ql.get_mpz_t(), static_cast<unsigned long>(n_));
    out.push_back(mpq_class(qn));
  }
  return out;
}

/* ------------------------ TabulatedMonotonePsi --------------------- */

TabulatedMonotonePsi::TabulatedMonotonePsi(std::vector<std::pair<mpq_class, mpq_class>> samples)
    : samples_(std::move(samples)) {
  if (samples_.empty()) throw DomainError("tabulated psi: no samples");
  for (size_t i = 0; i < samples_.size(); ++i) {
    if (samples_[i].second < 0) throw DomainError("tabulated psi: negative value");
    if (i > 0) {
      if (samples_[i].first <= samples_[i - 1].first)
        throw DomainError("tabulated psi: arguments must increase");
      if (samples_[i].second > samples_[i - 1].second)
        throw DomainError("tabulated psi: values must be non-increasing");
    }
  }
}

Value TabulatedMonotonePsi::eval(const mpq_class& q, mpfr_prec_t prec) const {
  (void)prec;
  if (q <= 0) throw DomainError("tabulated psi: q > 0 required");
  for (const auto& [arg, val] : samples_)
    if (q <= arg) return Value(val);
  throw DomainError("tabulated psi: argument beyond last sample");
}

Json TabulatedMonotonePsi::descriptor() const {
  Json arr = Json::array();
  for (const auto& [a, v] : samples_) arr.push_back(Json::array({a.get_str(), v.get_str()}));
  return Json{{"variant", "tabulated_monotone"}, {"samples", arr}};
}

std::vector<mpq_class> TabulatedMonotonePsi::grid_breakpoints() const {
  std::vector<mpq_class> out;
  for (const auto& [a, v] : samples_) out.push_back(a);
  return out;
}

/* ------------------------------ PowerG ----------------------------- */

PowerG::PowerG(mpq_class s) : s_(std::move(s)) {
  if (s_ <= 0 || s_ > 1) throw DomainError("PowerG: s in (0, 1] required");
}

Value PowerG::eval(const mpq_class& r, mpfr_prec_t prec) const {
  if (r < 0) throw DomainError("PowerG: r >= 0 required");
  if (r == 0) return Value(mpq_class(0));
  return rational_pow(r, s_, prec);
}

std::string PowerG::name() const { return "power_g(s=" + s_.get_str() + ")"; }

Json PowerG::descriptor() const { return Json{{"variant", "power"}, {"s", s_.get_str()}}; }

/* ------------------------- PiecewiseLinearMaxG --------------------- */

PiecewiseLinearMaxG::PiecewiseLinearMaxG(mpq_class beta, std::vector<long> k_exponents)
    : beta_(std::move(beta)), k_(std::move(k_exponents)) {
  if (beta_ <= 3) throw DomainError("dichotomy g: beta > 3 required");
  if (k_.size() < 2) throw DomainError("dichotomy g: need levels plus guard");
}

mpq_class PiecewiseLinearMaxG::domain_min() const {
  // r >= Q_{depth+1}^{-beta}: below this the truncated max could differ
  // from the infinite construction.
  arith::Value v = pow2_q(-beta_ * k_.back(), 64);
  return v.is_exact() ? v.exact() : v.ball().hi_q();
}

namespace {

// Sound min/max of Values: exact when both are exact, otherwise the
// endpoint-wise enclosure of the min/max.
Value value_min(const Value& a, const Value& b, mpfr_prec_t prec) {
  if (a.is_exact() && b.is_exact()) return a.exact() <= b.exact() ? a : b;
  arith::RealBall x = a.ball(prec), y = b.ball(prec);
  return Value(arith::RealBall::from_q_interval(std::min(x.lo_q(), y.lo_q()),
                                                std::min(x.hi_q(), y.hi_q()), prec));
}

Value value_max(const Value& a, const Value& b, mpfr_prec_t prec) {
  if (a.is_exact() && b.is_exact()) return a.exact() >= b.exact() ? a : b;
  arith::RealBall x = a.ball(prec), y = b.ball(prec);
  return Value(arith::RealBall::from_q_interval(std::max(x.lo_q(), y.lo_q()),
                                                std::max(x.hi_q(), y.hi_q()), prec));
}

}  // namespace

Value PiecewiseLinearMaxG::eval(const mpq_class& r, mpfr_prec_t prec) const {
  if (r <= 0) throw DomainError("dichotomy g: r > 0 required");
  if (r < domain_min()) throw DomainError("dichotomy g: r below truncation domain");
  // g_n(r) = min(2^-k_n, r * 2^{k_n (beta-1)})
  Value best{mpq_class(0)};
  for (long kn : k_) {
    Value flat = pow2_q(mpq_class(-kn), prec);
    Value lin = Value(r) * pow2_q(mpq_class(kn) * (beta_ - 1), prec);
    best = value_max(best, value_min(lin, flat, prec), prec);
  }
  return best;
}

Value PiecewiseLinearMaxG::eval_pow2(const mpq_class& e, mpfr_prec_t prec) const {
  // work purely in exponent space: g_n(2^e) = 2^min(-k_n, e + k_n(beta-1))
  std::optional<mpq_class> best;
  for (long kn : k_) {
    mpq_class flat(-kn);
    mpq_class lin = e + mpq_class(kn) * (beta_ - 1);
    mpq_class cand = lin < flat ? lin : flat;
    if (!best || cand > *best) best = cand;
  }
  // domain check: e >= -beta * k_guard
  if (e < -beta_ * k_.back()) throw DomainError("dichotomy g: r below truncation domain");
  return pow2_q(*best, prec);
}

std::string PiecewiseLinearMaxG::name() const {
  return "piecewise_linear_max(beta=" + beta_.get_str() + ",levels=" + std::to_string(k_.size()) +
         ")";
}

Json PiecewiseLinearMaxG::descriptor() const {
  Json ks = Json::array();
  for (long k : k_) ks.push_back(k);
  return Json{{"variant", "piecewise_linear_max"}, {"beta", beta_.get_str()}, {"k", ks}};
}

std::vector<mpq_class> PiecewiseLinearMaxG::grid_breakpoints() const {
  std::vector<mpq_class> out;
  for (long kn : k_) {
    arith::Value v = pow2_q(-beta_ * kn, 64);
    out.push_back(v.is_exact() ? v.exact() : v.ball().hi_q());
  }
  return out;
}

/* ------------------------- TabulatedIncreasingG -------------------- */

TabulatedIncreasingG::TabulatedIncreasingG(std::vector<std::pair<mpq_class, mpq_class>> samples)
    : samples_(std::move(samples)) {
  if (samples_.empty()) throw DomainError("tabulated g: no samples");
  mpq_class pa = 0, pv = 0;
  for (const auto& [a, v] : samples_) {
    if (a <= pa || v < pv) throw DomainError("tabulated g: samples must increase");
    pa = a;
    pv = v;
  }
}

Value TabulatedIncreasingG::eval(const mpq_class& r, mpfr_prec_t prec) const {
  (void)prec;
  if (r < 0) throw DomainError("tabulated g: r >= 0");
  if (r == 0) return Value(mpq_class(0));
  mpq_class pa = 0, pv = 0;
  for (const auto& [a, v] : samples_) {
    if (r <= a) {
      // linear interpolation on [pa, a]
      return Value(pv + (v - pv) * (r - pa) / (a - pa));
    }
    pa = a;
    pv = v;
  }
  throw DomainError("tabulated g: argument beyond last sample");
}

Json TabulatedIncreasingG::descriptor() const {
  Json arr = Json::array();
  for (const auto& [a, v] : samples_) arr.push_back(Json::array({a.get_str(), v.get_str()}));
  return Json{{"variant", "tabulated_increasing"}, {"samples", arr}};
}

std::vector<mpq_class> TabulatedIncreasingG::grid_breakpoints() const {
  std::vector<mpq_class> out;
  for (const auto& [a, v] : samples_) out.push_back(a);
  return out;
}

/* --------------------------- constructions ------------------------- */

std::pair<ApproxPtr, DimPtr> build_dichotomy_pair(const mpq_class& alpha, const mpq_class& beta,
                                                  long k1, size_t depth) {
  if (alpha <= 3 || beta <= 3) throw DomainError("build_dichotomy_pair: alpha, beta > 3");
  if (k1 < 1 || depth < 1) throw DomainError("build_dichotomy_pair: k1, depth >= 1");
  std::vector<long> k;
  k.push_back(k1);
  for (size_t n = 1; n <= depth; ++n) {  // depth levels plus one guard
    mpq_class next = alpha * k.back();
    mpz_class c = arith::q_ceil(next);
    if (!c.fits_slong_p()) throw DomainError("build_dichotomy_pair: k-sequence overflow");
    k.push_back(c.get_si());
    if (mpq_class(k.back()) <= 3 * mpq_class(k[k.size() - 2]))
      throw DomainError("build_dichotomy_pair: generated k-sequence violates k_n/k_{n-1} > 3");
  }
  auto psi = std::make_shared<PiecewiseDichotomyPsi>(alpha, beta, k);
  auto g = std::make_shared<PiecewiseLinearMaxG>(beta, k);
  return {psi, g};
}

ApproxPtr build_bugresu_psi(const cex::CFNumber& cf) {
  cex::CFValueWindow win = cex::value_window(cf);
  std::vector<mpz_class> q(cf.q.begin() + 1, cf.q.end());
  return std::make_shared<LocallyConstantCFPsi>(cf.n, cf.w, win.c4, std::move(q));
}

/* -------------------------- serialization -------------------------- */

Json approx_to_json(const ApproxFunction& f) { return f.descriptor(); }

ApproxPtr approx_from_json(const Json& j) {
  std::string v = j.at("variant").get<std::string>();
  if (v == "power") return std::make_shared<PowerPsi>(mpq_class(j.at("tau").get<std::string>()));
  if (v == "exp_power")
    return std::make_shared<ExpPowerPsi>(mpq_class(j.at("tau").get<std::string>()));
  if (v == "log_corrected")
    return std::make_shared<LogCorrectedPsi>(mpq_class(j.at("A").get<std::string>()),
                                             mpq_class(j.at("tau").get<std::string>()),
                                             mpq_class(j.at("log_exp").get<std::string>()),
                                             mpq_class(j.at("loglog_exp").get<std::string>()),
                                             mpq_class(j.at("exp_coeff").get<std::string>()));
  if (v == "piecewise_dichotomy") {
    std::vector<long> k;
    for (const auto& e : j.at("k")) k.push_back(e.get<long>());
    return std::make_shared<PiecewiseDichotomyPsi>(mpq_class(j.at("alpha").get<std::string>()),
                                                   mpq_class(j.at("beta").get<std::string>()),
                                                   std::move(k));
  }
  if (v == "locally_constant_cf") {
    std::vector<mpz_class> q;
    for (const auto& e : j.at("q")) q.emplace_back(e.get<std::string>());
    return std::make_shared<LocallyConstantCFPsi>(j.at("n").get<int>(),
                                                  mpq_class(j.at("w").get<std::string>()),
                                                  mpq_class(j.at("c4").get<std::string>()),
                                                  std::move(q));
  }
  if (v == "tabulated_monotone") {
    std::vector<std::pair<mpq_class, mpq_class>> s;
    for (const auto& e : j.at("samples"))
      s.emplace_back(mpq_class(e[0].get<std::string>()), mpq_class(e[1].get<std::string>()));
    return std::make_shared<TabulatedMonotonePsi>(std::move(s));
  }
  throw ConfigError("unknown approximating function variant: " + v);
}

Json dim_to_json(const DimensionFunction& g) { return g.descriptor(); }

DimPtr dim_from_json(const Json& j) {
  std::string v = j.at("variant").get<std::string>();
  if (v == "power") return std::make_shared<PowerG>(mpq_class(j.at("s").get<std::string>()));
  if (v == "piecewise_linear_max") {
    std::vector<long> k;
    for (const auto& e : j.at("k")) k.push_back(e.get<long>());
    return std::make_shared<PiecewiseLinearMaxG>(mpq_class(j.at("beta").get<std::string>()),
                                                 std::move(k));
  }
  if (v == "tabulated_increasing") {
    std::vector<std::pair<mpq_class, mpq_class>> s;
    for (const auto& e : j.at("samples"))
      s.emplace_back(mpq_class(e[0].get<std::string>()), mpq_class(e[1].get<std::string>()));
    return std::make_shared<TabulatedIncreasingG>(std::move(s));
  }
  throw ConfigError("unknown dimension function variant: " + v);
}

}  // namespace dioph::funcs
