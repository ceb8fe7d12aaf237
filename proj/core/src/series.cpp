#include "dioph/series.hpp"

#include <algorithm>

namespace dioph::series {

using arith::RealBall;
using arith::Value;
using arith::Verdict3;
using funcs::ApproxFunction;
using funcs::DimensionFunction;
using funcs::PiecewiseDichotomyPsi;
using funcs::PiecewiseLinearMaxG;

std::string series_name(SeriesId id) {
  switch (id) {
    case SeriesId::Series1: return "SERIES1";
    case SeriesId::Series3: return "SERIES3";
    case SeriesId::GbspCurve: return "GBSP_CURVE";
    case SeriesId::Pezzoni: return "PEZZONI";
    case SeriesId::GoodpairEqn1: return "GOODPAIR_EQN1";
    case SeriesId::GoodpairEqn2: return "GOODPAIR_EQN2";
    case SeriesId::SeeAbove: return "SEEABOVE";
  }
  return "?";
}

std::string verdict_name(SeriesVerdict v) {
  switch (v) {
    case SeriesVerdict::None: return "None";
    case SeriesVerdict::ConvergesBelow: return "ConvergesBelow";
    case SeriesVerdict::DivergesBeyond: return "DivergesBeyond";
    case SeriesVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

Json SeriesReport::to_json(bool include_terms) const {
  Json j{{"series", series_name(id)},
         {"K", K},
         {"partial_lo", partial.is_exact() ? partial.exact().get_str()
                                           : partial.ball().lo_q().get_str()},
         {"partial_hi", partial.is_exact() ? partial.exact().get_str()
                                           : partial.ball().hi_q().get_str()},
         {"partial_exact", partial.is_exact()},
         {"verdict", verdict_name(verdict)},
         {"detail", detail},
         {"undecided", undecided}};
  if (tail_bound) j["tail_bound"] = tail_bound->get_str();
  if (bound) j["bound"] = bound->get_str();
  if (include_terms) {
    Json arr = Json::array();
    for (size_t i = 0; i < terms.size(); ++i)
      arr.push_back(Json::array({natural_index[i].get_str(),
                                 terms[i].is_exact() ? terms[i].exact().get_str()
                                                     : terms[i].ball().hi_q().get_str()}));
    j["terms"] = arr;
  }
  return j;
}

TailRule TailRule::geometric(mpq_class cap) {
  TailRule r;
  r.kind = Kind::GeometricTail;
  r.ratio_cap = std::move(cap);
  return r;
}
TailRule TailRule::integral(mpq_class C, mpq_class p, mpq_class ell) {
  TailRule r;
  r.kind = Kind::IntegralTest;
  r.C = std::move(C);
  r.p = std::move(p);
  r.ell = std::move(ell);
  return r;
}
TailRule TailRule::explicit_bound(mpq_class bound, std::string origin) {
  TailRule r;
  r.kind = Kind::ExplicitBound;
  r.bound = std::move(bound);
  r.origin = std::move(origin);
  return r;
}
TailRule TailRule::minorant_const(mpq_class c) {
  TailRule r;
  r.kind = Kind::DivergentMinorant;
  r.c = std::move(c);
  r.const_minorant = true;
  return r;
}
TailRule TailRule::minorant_harmonic(mpq_class c, long ell2) {
  TailRule r;
  r.kind = Kind::DivergentMinorant;
  r.c = std::move(c);
  r.ell2 = ell2;
  return r;
}

namespace {

// g at an exact-or-enclosed argument (g increasing).
Value eval_dim(const DimensionFunction& g, const Value& arg, mpfr_prec_t prec) {
  if (arg.is_exact()) return g.eval(arg.exact(), prec);
  RealBall b = arg.ball(prec);
  return Value(g.eval_interval(b.lo_q(), b.hi_q(), prec));
}

unsigned long euler_phi(unsigned long b) {
  unsigned long result = b, n = b;
  for (unsigned long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      result -= result / p;
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

struct TermGen {
  unsigned long max_terms;  // 0 = unbounded
  std::function<mpq_class(unsigned long)> natural;  // j = 1.. -> q/b/k
  std::function<Value(unsigned long)> term;
};

TermGen make_terms(SeriesId id, const funcs::ApproxPtr& psi, const funcs::DimPtr& g,
                   const SeriesParams& params, mpfr_prec_t prec) {
  if (!psi) throw DomainError("partial_sum: approximating function required");
  const auto* dich = dynamic_cast<const PiecewiseDichotomyPsi*>(psi.get());
  const auto* dich_g = g ? dynamic_cast<const PiecewiseLinearMaxG*>(g.get()) : nullptr;

  auto need_g = [&]() {
    if (!g) throw DomainError("partial_sum: dimension function required for this series");
  };

  switch (id) {
    case SeriesId::Series1:
    case SeriesId::Series3: {
      need_g();
      const bool s1 = (id == SeriesId::Series1);
      if (params.dichotomy_level_blocks) {
        if (!dich || !dich_g)
          throw DomainError("dichotomy_level_blocks requires the dichotomy pair");
      }
      unsigned long cap = 0;
      if (dich) cap = params.dichotomy_level_blocks
                          ? static_cast<unsigned long>(dich->depth())
                          : static_cast<unsigned long>(dich->k(dich->depth()));
      auto k_of = [=](unsigned long j) -> long {
        return params.dichotomy_level_blocks ? dich->k(j) : static_cast<long>(j);
      };
      TermGen gen;
      gen.max_terms = cap;
      gen.natural = [=](unsigned long j) { return mpq_class(k_of(j)); };
      if (dich && dich_g) {
        // exponent-space path, exact whenever the exponents are integers
        gen.term = [=](unsigned long j) -> Value {
          long k = k_of(j);
          mpq_class epsi = dich->log2_at_pow2(k);
          if (s1) {
            Value gv = dich_g->eval_pow2(epsi - k, prec);
            return arith::pow2_q(mpq_class(3 * k), prec) * gv;
          }
          Value gv = dich_g->eval_pow2((epsi - k) / 2, prec);
          return arith::pow2_q(mpq_class(k), prec) * gv;
        };
      } else {
        gen.term = [=, &g = *g, &f = *psi](unsigned long j) -> Value {
          long k = k_of(j);
          mpq_class q = arith::q_pow_si(mpq_class(2), k);
          Value pv = f.eval(q, prec);
          if (s1) {
            Value arg = pv.div(Value(q));
            return Value(q) * Value(q) * Value(q) * eval_dim(g, arg, prec);
          }
          Value arg = pv.sqrt(prec).div(arith::pow2_q(mpq_class(k, 2), prec));
          return Value(q) * eval_dim(g, arg, prec);
        };
      }
      return gen;
    }
    case SeriesId::GbspCurve:
    case SeriesId::Pezzoni: {
      need_g();
      if (id == SeriesId::Pezzoni &&
          (params.lambda < 0 || params.lambda >= mpq_class(9, 20)))
        throw DomainError("PEZZONI: lambda in [0, 9/20) required");
      mpz_class q0z = arith::q_ceil(std::max(mpq_class(1), psi->domain_min()));
      unsigned long q0 = q0z.get_ui();
      mpq_class expo = (id == SeriesId::GbspCurve)
                           ? mpq_class(2)
                           : mpq_class(3) - 2 * params.lambda / 3;
      TermGen gen;
      gen.max_terms = 0;
      gen.natural = [=](unsigned long j) { return mpq_class(q0 + j - 1); };
      gen.term = [=, &g = *g, &f = *psi](unsigned long j) -> Value {
        mpq_class q(q0 + j - 1);
        Value arg = f.eval(q, prec).div(Value(q));
        return arith::rational_pow(q, expo, prec) * eval_dim(g, arg, prec);
      };
      return gen;
    }
    case SeriesId::GoodpairEqn1:
    case SeriesId::GoodpairEqn2: {
      if (params.s <= 0 || params.s > 1) throw DomainError("good-pair series: s in (0,1]");
      mpz_class b0z = arith::q_ceil(std::max(mpq_class(2), psi->domain_min()));
      unsigned long b0 = b0z.get_ui();
      const bool eqn1 = (id == SeriesId::GoodpairEqn1);
      TermGen gen;
      gen.max_terms = 0;
      gen.natural = [=](unsigned long j) { return mpq_class(b0 + j - 1); };
      gen.term = [=, &f = *psi](unsigned long j) -> Value {
        unsigned long b = b0 + j - 1;
        mpq_class bq(b);
        if (eqn1) return Value(bq) * f.eval(bq, prec).pow_q(params.s, prec);
        // ||q|| = b^2 for good pairs; 2 phi(b) coprime a with |a| < b
        unsigned long count = (b == 1) ? 1 : 2 * euler_phi(b);
        Value psival = f.eval(bq, prec).pow_q(2 * params.s, prec);
        return Value(mpq_class(count)) * Value(bq * bq) * psival;
      };
      return gen;
    }
    case SeriesId::SeeAbove: {
      need_g();
      if (params.eps <= 0 || params.eps >= mpq_class(1, 2))
        throw DomainError("SEEABOVE: eps in (0, 1/2) required");
      TermGen gen;
      gen.max_terms = dich ? static_cast<unsigned long>(dich->k(dich->depth())) : 0;
      gen.natural = [](unsigned long j) { return mpq_class(j); };
      gen.term = [=, &g = *g, &f = *psi](unsigned long j) -> Value {
        long k = static_cast<long>(j);
        mpq_class q = arith::q_pow_si(mpq_class(2), k);
        Value pv = f.eval(q, prec);
        Value w1 = pv.pow_q(1 - params.eps, prec) * Value(q * q);
        Value w2 = Value(mpq_class(k)) * Value(q);
        Value arg = pv.div(Value(q)).sqrt(prec);
        return (w1 + w2) * eval_dim(g, arg, prec);
      };
      return gen;
    }
  }
  throw DomainError("unknown series id");
}

}  // namespace

SeriesReport partial_sum(SeriesId id, const funcs::ApproxPtr& psi, const funcs::DimPtr& g,
                         const SeriesParams& params, unsigned long K, mpfr_prec_t prec) {
  SeriesReport rep;
  rep.id = id;
  rep.params = params;
  rep.K = K;
  rep.partial = Value(mpq_class(0));
  if (K == 0) {
    rep.detail = "no terms summed";
    return rep;
  }
  TermGen gen = make_terms(id, psi, g, params, prec);
  if (gen.max_terms > 0 && K > gen.max_terms)
    throw DomainError("partial_sum: K exceeds the construction depth (" +
                      std::to_string(gen.max_terms) + " terms available)");
  rep.terms.reserve(K);
  rep.natural_index.reserve(K);
  Value acc{mpq_class(0)};
  for (unsigned long j = 1; j <= K; ++j) {
    Value t = gen.term(j);
    acc = acc + t;
    rep.terms.push_back(t);
    rep.natural_index.push_back(gen.natural(j));
  }
  rep.partial = acc;
  return rep;
}

namespace {

mpq_class value_hi(const Value& v) { return v.is_exact() ? v.exact() : v.ball().hi_q(); }
mpq_class value_lo(const Value& v) { return v.is_exact() ? v.exact() : v.ball().lo_q(); }

// certified natural-log bounds of a rational > 1
std::pair<mpq_class, mpq_class> log_bounds(const mpq_class& q, mpfr_prec_t prec) {
  RealBall b = RealBall::from_q(q, prec).log();
  return {b.lo_q(), b.hi_q()};
}

}  // namespace

SeriesReport apply_verdict(SeriesReport rep, const TailRule& rule, mpfr_prec_t prec) {
  if (rep.K == 0 || rep.terms.empty()) {
    rep.verdict = SeriesVerdict::Inconclusive;
    rep.detail = "no terms summed";
    return rep;
  }
  switch (rule.kind) {
    case TailRule::Kind::None:
      rep.verdict = SeriesVerdict::Inconclusive;
      rep.detail = "no tail rule supplied";
      return rep;

    case TailRule::Kind::GeometricTail: {
      if (rule.ratio_cap >= 1 || rule.ratio_cap <= 0) {
        rep.verdict = SeriesVerdict::Inconclusive;
        rep.detail = "geometric cap must lie in (0,1)";
        return rep;
      }
      if (rep.terms.size() < 3) {
        rep.verdict = SeriesVerdict::Inconclusive;
        rep.detail = "too few terms to certify a geometric tail";
        return rep;
      }
      size_t start = rep.terms.size() - std::min<size_t>(rep.terms.size() - 1,
                                                         std::max<size_t>(3, rep.terms.size() / 4));
      for (size_t i = start; i + 1 < rep.terms.size(); ++i) {
        Value lhs = rep.terms[i + 1];
        Value rhs = rep.terms[i] * Value(rule.ratio_cap);
        if (lhs.le(rhs) != Verdict3::True) {
          rep.verdict = SeriesVerdict::Inconclusive;
          rep.detail = "observed terms violate the declared geometric cap";
          return rep;
        }
      }
      mpq_class tk = value_hi(rep.terms.back());
      mpq_class tail = tk * rule.ratio_cap / (1 - rule.ratio_cap);
      rep.tail_bound = tail;
      rep.bound = value_hi(rep.partial) + tail;
      rep.verdict = SeriesVerdict::ConvergesBelow;
      rep.detail = "geometric tail, cap " + rule.ratio_cap.get_str() +
                   " certified on the observed tail";
      return rep;
    }

    case TailRule::Kind::IntegralTest: {
      bool valid = (rule.p > 1 && rule.ell >= 0) || (rule.p == 1 && rule.ell > 1);
      if (!valid) {
        rep.verdict = SeriesVerdict::Inconclusive;
        rep.detail = "integral rule needs p > 1 (ell >= 0) or p = 1 with ell > 1";
        return rep;
      }
      size_t start = rep.terms.size() - std::min<size_t>(rep.terms.size(),
                                                         std::max<size_t>(3, rep.terms.size() / 4));
      for (size_t i = start; i < rep.terms.size(); ++i) {
        const mpq_class& q = rep.natural_index[i];
        // majorant C q^-p (ln q)^-ell as a certified lower... we need an
        // upper comparison: t <= C q^-p (ln q)^-ell
        Value maj = Value(rule.C) * arith::rational_pow(q, -rule.p, prec);
        if (rule.ell != 0) {
          auto [llo, lhi] = log_bounds(q, prec);
          if (llo <= 0) {
            rep.verdict = SeriesVerdict::Inconclusive;
            rep.detail = "log factor needs q > 1 on the tail";
            return rep;
          }
          maj = maj * arith::rational_pow(llo, -rule.ell, prec);
        }
        if (rep.terms[i].le(maj) != Verdict3::True) {
          rep.verdict = SeriesVerdict::Inconclusive;
          rep.detail = "observed terms violate the declared integral majorant";
          return rep;
        }
      }
      // tail over q >= Q+1: first term plus the integral from Q+1
      mpq_class Q1 = rep.natural_index.back() + 1;
      auto [llo, lhi] = log_bounds(Q1, prec);
      mpq_class tail;
      if (rule.p > 1) {
        // C (ln(Q+1))^-ell [ (Q+1)^-p + (Q+1)^{1-p} / (p-1) ]
        Value t = arith::rational_pow(Q1, -rule.p, prec) +
                  arith::rational_pow(Q1, 1 - rule.p, prec).div(Value(mpq_class(rule.p - 1)));
        t = Value(rule.C) * t;
        if (rule.ell != 0) t = t * arith::rational_pow(llo, -rule.ell, prec);
        tail = value_hi(t);
      } else {
        // p=1, ell>1: C [ (Q+1)^-1 (ln(Q+1))^-ell + (ln(Q+1))^{1-ell}/(ell-1) ]
        Value t = arith::rational_pow(llo, -rule.ell, prec).div(Value(Q1)) +
                  arith::rational_pow(llo, 1 - rule.ell, prec).div(Value(mpq_class(rule.ell - 1)));
        tail = value_hi(Value(rule.C) * t);
      }
      rep.tail_bound = tail;
      rep.bound = value_hi(rep.partial) + tail;
      rep.verdict = SeriesVerdict::ConvergesBelow;
      rep.detail = "integral-test tail with majorant C q^-p (ln q)^-ell, C=" + rule.C.get_str() +
                   " p=" + rule.p.get_str() + " ell=" + rule.ell.get_str();
      return rep;
    }

    case TailRule::Kind::ExplicitBound: {
      rep.tail_bound = rule.bound;
      rep.bound = value_hi(rep.partial) + rule.bound;
      rep.verdict = SeriesVerdict::ConvergesBelow;
      rep.detail = "explicit tail bound (" + rule.origin + ")";
      return rep;
    }

    case TailRule::Kind::DivergentMinorant: {
      if (rule.c <= 0) {
        rep.verdict = SeriesVerdict::Inconclusive;
        rep.detail = "minorant constant must be positive";
        return rep;
      }
      for (size_t i = 0; i < rep.terms.size(); ++i) {
        const mpq_class& q = rep.natural_index[i];
        Value minorant;
        if (rule.const_minorant) {
          minorant = Value(rule.c);
        } else {
          minorant = Value(rule.c).div(Value(q));
          if (rule.ell2 == 1) {
            auto [llo, lhi] = log_bounds(q, prec);
            if (lhi <= 0) continue;  // skip q <= e where the minorant degenerates
            minorant = minorant.div(Value(lhi));
          }
        }
        if (Value(minorant).le(rep.terms[i]) != Verdict3::True) {
          rep.verdict = SeriesVerdict::Inconclusive;
          rep.detail = "observed terms dip below the declared divergent minorant";
          return rep;
        }
      }
      rep.verdict = SeriesVerdict::DivergesBeyond;
      rep.bound = value_lo(rep.partial);
      rep.detail = rule.const_minorant
                       ? "terms >= " + rule.c.get_str() + " on all observed blocks"
                       : "terms >= " + rule.c.get_str() + "/(q" +
                             std::string(rule.ell2 == 1 ? " ln q" : "") +
                             ") on all observed terms; the minorant series diverges";
      return rep;
    }
  }
  rep.verdict = SeriesVerdict::Inconclusive;
  return rep;
}

TailRule derive_tail_rule(const SeriesReport& rep, const ApproxFunction* psi,
                          const DimensionFunction* g) {
  using funcs::LogCorrectedPsi;
  using funcs::PowerG;
  using funcs::PowerPsi;

  const auto* dich = dynamic_cast<const PiecewiseDichotomyPsi*>(psi);
  const auto* dich_g = dynamic_cast<const PiecewiseLinearMaxG*>(g);

  if (dich && dich_g) {
    if ((rep.id == SeriesId::Series3 || rep.id == SeriesId::Series1) &&
        rep.params.dichotomy_level_blocks) {
      // block term at k_n is exactly Q_n g(Q_n^-beta) = 1 for Series3
      if (rep.id == SeriesId::Series3) return TailRule::minorant_const(mpq_class(1, 2));
      return TailRule::none();
    }
    if (rep.id == SeriesId::Series1) {
      // tail after the last complete block N: 4 * 2^{k_{N+1} (3 - min(alpha,beta))},
      // valid once 2^{k_{N+1}(3-m)} <= 1/2; see the construction notes.
      mpq_class m0 = std::min(dich->alpha(), dich->beta());
      size_t N = 0;
      for (size_t n = 1; n <= dich->depth(); ++n)
        if (mpq_class(dich->k(n)) <= mpq_class(rep.K)) N = n;
      if (N == 0) return TailRule::none();
      // the psi object stores depth+1 exponents, so N+1 is always valid
      long kn1 = dich->k(N + 1);
      mpq_class e0_exp = mpq_class(kn1) * (3 - m0);
      arith::Value e0 = arith::pow2_q(e0_exp, 128);
      mpq_class e0_hi = value_hi(e0);
      if (e0_hi > mpq_class(1, 2)) return TailRule::none();
      return TailRule::explicit_bound(4 * e0_hi,
                                      "dichotomy block bound 4*2^{k_{N+1}(3-min(alpha,beta))}");
    }
  }

  // power / log-corrected families: exact term shapes
  mpq_class tau, log_exp(0), amp(1);
  bool have_psi_shape = false;
  if (const auto* pw = dynamic_cast<const PowerPsi*>(psi)) {
    tau = pw->tau();
    have_psi_shape = true;
  } else if (const auto* lc = dynamic_cast<const LogCorrectedPsi*>(psi)) {
    if (lc->loglog_exp() == 0 && lc->exp_coeff() == 0) {
      tau = lc->tau();
      log_exp = lc->log_exp();
      amp = lc->amplitude();
      have_psi_shape = true;
    }
  }
  const auto* pg = dynamic_cast<const PowerG*>(g);

  auto power_family_rule = [&](const mpq_class& p_exp, const mpq_class& ell) -> TailRule {
    // terms comparable to q^-p (ln q)^-ell with a constant the caller folds
    // into C / c below.
    if (ell < 0) return TailRule::none();  // growing log factor: no rule here
    if (p_exp > 1 || (p_exp == 1 && ell > 1)) {
      // C = max over the verification window of t * q^p (ln q)^ell; a
      // safety margin is only needed when the pieces are inexact.
      size_t start = rep.terms.size() -
                     std::min<size_t>(rep.terms.size(), std::max<size_t>(3, rep.terms.size() / 4));
      mpq_class C(0);
      bool all_exact = true;
      for (size_t i = start; i < rep.terms.size(); ++i) {
        const mpq_class& Q = rep.natural_index[i];
        arith::Value scale = arith::rational_pow(Q, p_exp, 128);
        all_exact = all_exact && rep.terms[i].is_exact() && scale.is_exact() && ell == 0;
        mpq_class cand = value_hi(rep.terms[i]) * value_hi(scale);
        if (ell != 0) {
          RealBall lq = RealBall::from_q(Q, 128).log();
          cand *= value_hi(arith::rational_pow(lq.hi_q(), ell, 128));
        }
        C = std::max(C, cand);
      }
      if (C <= 0) return TailRule::none();
      if (!all_exact) C *= mpq_class(33, 32);
      return TailRule::integral(C, p_exp, ell);
    }
    if (p_exp < 1 || (p_exp == 1 && ell <= 0)) {
      // minorant c/q: c = min over all observed terms of t * q
      mpq_class c;
      bool first = true;
      for (size_t i = 0; i < rep.terms.size(); ++i) {
        mpq_class cand = value_lo(rep.terms[i]) * rep.natural_index[i];
        if (first || cand < c) c = cand;
        first = false;
      }
      c /= 2;
      if (c <= 0) return TailRule::none();
      return TailRule::minorant_harmonic(c, 0);
    }
    // p == 1, 0 < ell <= 1: c/(q ln q) minorant
    return TailRule::minorant_harmonic(mpq_class(1, 2), 1);
  };

  if (have_psi_shape && pg) {
    mpq_class u = pg->s();
    switch (rep.id) {
      case SeriesId::Series1: {
        mpq_class rexp = 3 - u * (tau + 1);  // terms 2^{k * rexp}
        if (rexp < 0) return TailRule::geometric(value_hi(arith::pow2_q(rexp, 128)));
        return TailRule::minorant_const(value_lo(rep.terms.front()));
      }
      case SeriesId::Series3: {
        mpq_class rexp = 1 - u * (tau + 1) / 2;
        if (rexp < 0) return TailRule::geometric(value_hi(arith::pow2_q(rexp, 128)));
        return TailRule::minorant_const(value_lo(rep.terms.front()));
      }
      case SeriesId::GbspCurve:
        return power_family_rule(u * (tau + 1) - 2, -log_exp * u);
      case SeriesId::Pezzoni:
        return power_family_rule(u * (tau + 1) - 3 + 2 * rep.params.lambda / 3, -log_exp * u);
      default: break;
    }
  }
  if (have_psi_shape) {
    switch (rep.id) {
      case SeriesId::GoodpairEqn1:
        return power_family_rule(rep.params.s * tau - 1, -log_exp * rep.params.s);
      case SeriesId::GoodpairEqn2:
        return power_family_rule(2 * rep.params.s * tau - 3, -log_exp * 2 * rep.params.s);
      default: break;
    }
  }
  return TailRule::none();
}

}  // namespace dioph::series
