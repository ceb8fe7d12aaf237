#include "dioph/conditions.hpp"

#include <algorithm>
#include <sstream>

namespace dioph::funcs {

using arith::RealBall;
using arith::Value;
using arith::Verdict3;

std::string condition_name(ConditionId id) {
  switch (id) {
    case ConditionId::BED: return "BED";
    case ConditionId::TAUU: return "TAUU";
    case ConditionId::GLEICHUNG: return "GLEICHUNG";
    case ConditionId::SUBMULT: return "SUBMULT";
    case ConditionId::ZZZ: return "ZZZ";
    case ConditionId::DIM_RATIO_MONOTONE: return "DIM_RATIO_MONOTONE";
    case ConditionId::ALTEUG: return "ALTEUG";
    case ConditionId::OBN_DERIVATIVE: return "OBN_DERIVATIVE";
  }
  return "?";
}

Json ConditionReport::to_json() const {
  Json j{{"condition", condition_name(id)},
         {"grid", grid_description},
         {"grid_points", grid_points},
         {"verdict", verdict == ConditionVerdict::Holds
                         ? "Holds"
                         : verdict == ConditionVerdict::FailsAt ? "FailsAt" : "Inconclusive"},
         {"finite_sample", finite_sample},
         {"detail", detail}};
  if (witness) j["witness"] = witness->get_str();
  if (c2_observed) j["c2_observed"] = c2_observed->get_str();
  return j;
}

Grid default_psi_grid(const ApproxFunction& f, long kmax) {
  Grid g;
  mpq_class lo = f.domain_min();
  std::optional<mpq_class> hi = f.domain_max();
  for (long k = 1; k <= kmax; ++k) {
    mpq_class q = arith::q_pow_si(mpq_class(2), k);
    if (q < lo) continue;
    if (hi && q > *hi) break;
    g.points.push_back(q);
  }
  for (const auto& b : f.grid_breakpoints())
    if (b >= lo && (!hi || b <= *hi) && b > 1) g.points.push_back(b);
  std::sort(g.points.begin(), g.points.end());
  g.points.erase(std::unique(g.points.begin(), g.points.end()), g.points.end());
  g.description = "dyadic 2^k, k<=" + std::to_string(kmax) + ", plus breakpoints";
  return g;
}

Grid default_dim_grid(const DimensionFunction& f, long kmax) {
  Grid g;
  mpq_class lo = f.domain_min();
  for (long k = 1; k <= kmax; ++k) {
    mpq_class r = arith::q_pow_si(mpq_class(2), -k);
    if (r < lo) break;
    g.points.push_back(r);
  }
  for (const auto& b : f.grid_breakpoints())
    if (b >= lo && b > 0 && b < 1) g.points.push_back(b);
  std::sort(g.points.begin(), g.points.end());
  g.points.erase(std::unique(g.points.begin(), g.points.end()), g.points.end());
  g.description = "dyadic 2^-k, k<=" + std::to_string(kmax) + ", plus breakpoints";
  return g;
}

namespace {

struct Outcome {
  ConditionVerdict verdict;
  std::optional<mpq_class> witness;
  std::string detail;
  std::optional<mpq_class> c2;
};

// certified comparison with one precision escalation
Verdict3 cmp_le(const Value& a, const Value& b, mpfr_prec_t prec) {
  Verdict3 v = a.le(b);
  if (v != Verdict3::Unknown) return v;
  return a.ball(prec * 4).le(b.ball(prec * 4));
}

Verdict3 cmp_lt(const Value& a, const Value& b, mpfr_prec_t prec) {
  Verdict3 v = a.lt(b);
  if (v != Verdict3::Unknown) return v;
  return a.ball(prec * 4).lt(b.ball(prec * 4));
}

Outcome check_bed(const ApproxFunction& f, const Grid& grid, mpfr_prec_t prec) {
  for (const auto& q : grid.points) {
    mpq_class q2 = q * q;
    if (f.domain_max() && q2 > *f.domain_max()) break;
    if (q < f.domain_min() || q <= 1) continue;
    Value lhs = f.eval(q2, prec);
    Value rhs = f.eval(q, prec).pow_q(2, prec);
    Verdict3 v = cmp_le(lhs, rhs, prec);
    if (v == Verdict3::False)
      return {ConditionVerdict::FailsAt, q, "Psi(q^2) > Psi(q)^2 at witness", std::nullopt};
    if (v == Verdict3::Unknown)
      return {ConditionVerdict::Inconclusive, q, "enclosures too wide", std::nullopt};
  }
  return {ConditionVerdict::Holds, std::nullopt, "Psi(q^2) <= Psi(q)^2 on grid", std::nullopt};
}

Outcome check_tauu(const ApproxFunction& f, const Grid& grid, mpfr_prec_t prec) {
  // log Psi(q) / log q non-increasing along the grid
  std::optional<RealBall> prev;
  mpq_class prev_q;
  for (const auto& q : grid.points) {
    if (q <= 1) continue;
    RealBall psi = f.eval(q, prec).ball(prec);
    if (!psi.surely_positive())
      return {ConditionVerdict::Inconclusive, q, "Psi enclosure touches 0", std::nullopt};
    RealBall ratio = psi.log().div(RealBall::from_q(q, prec).log());
    if (prev) {
      Verdict3 v = ratio.le(*prev);
      if (v == Verdict3::False)
        return {ConditionVerdict::FailsAt, q, "log Psi(q)/log q increased at witness",
                std::nullopt};
      if (v == Verdict3::Unknown) {
        // escalate once
        RealBall p2 = f.eval(prev_q, prec * 4).ball(prec * 4);
        RealBall c2 = f.eval(q, prec * 4).ball(prec * 4);
        RealBall r1 = p2.log().div(RealBall::from_q(prev_q, prec * 4).log());
        RealBall r2 = c2.log().div(RealBall::from_q(q, prec * 4).log());
        Verdict3 v2 = r2.le(r1);
        if (v2 == Verdict3::False)
          return {ConditionVerdict::FailsAt, q, "log Psi(q)/log q increased at witness",
                  std::nullopt};
        if (v2 == Verdict3::Unknown)
          return {ConditionVerdict::Inconclusive, q, "enclosures too wide", std::nullopt};
      }
    }
    prev = ratio;
    prev_q = q;
  }
  return {ConditionVerdict::Holds, std::nullopt, "log Psi(q)/log q non-increasing on grid",
          std::nullopt};
}

Outcome check_gleichung(const ApproxFunction& f, const mpq_class& c1, const Grid& grid,
                        mpfr_prec_t prec) {
  if (c1 <= 1) throw DomainError("GLEICHUNG: c1 > 1 required");
  // ratios rho(q) = Psi(q/c1) / Psi(q); c2_obs = max upper bound.
  // Finite-sample boundedness rule: the tail ratio must not grow by more
  // than 1/16 over the previous grid ratio.
  std::vector<RealBall> rho;
  std::vector<mpq_class> at;
  for (const auto& q : grid.points) {
    mpq_class qc = q / c1;
    if (qc < f.domain_min()) continue;
    RealBall a = f.eval(qc, prec).ball(prec);
    RealBall b = f.eval(q, prec).ball(prec);
    if (!b.surely_positive())
      return {ConditionVerdict::Inconclusive, q, "Psi enclosure touches 0", std::nullopt};
    rho.push_back(a.div(b));
    at.push_back(q);
  }
  if (rho.size() < 3)
    return {ConditionVerdict::Inconclusive, std::nullopt, "grid too small after domain clipping",
            std::nullopt};
  mpq_class c2_obs = rho[0].hi_q();
  for (const auto& r : rho) c2_obs = std::max(c2_obs, r.hi_q());
  const RealBall& last = rho.back();
  const RealBall& prev = rho[rho.size() - 2];
  RealBall allowed = prev * RealBall::from_q(mpq_class(17, 16), prec);
  Verdict3 v = last.le(allowed);
  if (v == Verdict3::True)
    return {ConditionVerdict::Holds, std::nullopt,
            "ratio Psi(q/c1)/Psi(q) flat at grid tail (growth <= 1/16 per step)", c2_obs};
  if (v == Verdict3::False)
    return {ConditionVerdict::FailsAt, at.back(),
            "ratio Psi(q/c1)/Psi(q) still growing at grid end (no bounded c2 in sight)", c2_obs};
  return {ConditionVerdict::Inconclusive, at.back(), "enclosures too wide", c2_obs};
}

Outcome check_submult(const ApproxFunction& f, const mpq_class& alpha, const Grid& grid,
                      mpfr_prec_t prec) {
  if (alpha < 1) throw DomainError("SUBMULT: alpha >= 1 required");
  for (const auto& q : grid.points) {
    if (q <= 1) continue;
    Value qa = arith::rational_pow(q, alpha, prec);
    Value lhs;
    if (qa.is_exact()) {
      if (f.domain_max() && qa.exact() > *f.domain_max()) break;
      lhs = f.eval(qa.exact(), prec);
    } else {
      RealBall b = qa.ball(prec);
      if (f.domain_max() && b.hi_q() > *f.domain_max()) break;
      lhs = Value(f.eval_interval(b.lo_q(), b.hi_q(), prec));
    }
    Value rhs = f.eval(q, prec).pow_q(alpha, prec);
    Verdict3 v = cmp_le(lhs, rhs, prec);
    if (v == Verdict3::False)
      return {ConditionVerdict::FailsAt, q, "Psi(q^alpha) > Psi(q)^alpha at witness",
              std::nullopt};
    if (v == Verdict3::Unknown)
      return {ConditionVerdict::Inconclusive, q, "enclosures too wide", std::nullopt};
  }
  return {ConditionVerdict::Holds, std::nullopt, "Psi(q^alpha) <= Psi(q)^alpha on grid",
          std::nullopt};
}

Outcome check_zzz(const DimensionFunction& g, const mpq_class& s1, const mpq_class& s2,
                  const Grid& grid, mpfr_prec_t prec) {
  // r^shi < g(r) < r^slo for r < 1: g's growth exponent lies strictly
  // between the two parameters, whichever order they were given in.
  mpq_class slo = std::min(s1, s2), shi = std::max(s1, s2);
  for (const auto& r : grid.points) {
    if (r <= 0 || r >= 1) continue;
    Value gv = g.eval(r, prec);
    Value lo = arith::rational_pow(r, shi, prec);
    Value hi = arith::rational_pow(r, slo, prec);
    Verdict3 a = cmp_lt(lo, gv, prec);
    Verdict3 b = cmp_lt(gv, hi, prec);
    if (a == Verdict3::False || b == Verdict3::False)
      return {ConditionVerdict::FailsAt, r, "r^s1 < g(r) < r^s2 violated at witness",
              std::nullopt};
    if (a == Verdict3::Unknown || b == Verdict3::Unknown)
      return {ConditionVerdict::Inconclusive, r, "enclosures too wide", std::nullopt};
  }
  return {ConditionVerdict::Holds, std::nullopt, "r^s1 < g(r) < r^s2 on grid", std::nullopt};
}

Outcome check_dim_ratio(const DimensionFunction& g, const Grid& grid, mpfr_prec_t prec) {
  // g(r)/r non-increasing in r
  std::optional<Value> prev;
  for (const auto& r : grid.points) {
    if (r <= 0) continue;
    Value ratio = g.eval(r, prec).div(Value(r));
    if (prev) {
      Verdict3 v = cmp_le(ratio, *prev, prec);
      if (v == Verdict3::False)
        return {ConditionVerdict::FailsAt, r, "g(r)/r increased at witness", std::nullopt};
      if (v == Verdict3::Unknown)
        return {ConditionVerdict::Inconclusive, r, "enclosures too wide", std::nullopt};
    }
    prev = ratio;
  }
  return {ConditionVerdict::Holds, std::nullopt, "g(r)/r non-increasing on grid", std::nullopt};
}

Outcome check_alteug(const DimensionFunction& g, const mpq_class& eps, const Grid& grid,
                     mpfr_prec_t prec) {
  mpq_class e = mpq_class(2, 3) + eps;
  for (const auto& r : grid.points) {
    if (r <= 0 || r >= 1) continue;
    Value gv = g.eval(r, prec);
    Value cap = arith::rational_pow(r, e, prec);
    Verdict3 v = cmp_le(gv, cap, prec);
    if (v == Verdict3::False)
      return {ConditionVerdict::FailsAt, r, "g(r) > r^(2/3+eps) at witness", std::nullopt};
    if (v == Verdict3::Unknown)
      return {ConditionVerdict::Inconclusive, r, "enclosures too wide", std::nullopt};
  }
  return {ConditionVerdict::Holds, std::nullopt, "g(r) <= r^(2/3+eps) on grid", std::nullopt};
}

/*
 * Slowly-varying part check for Corollary-style hypotheses. phi is the
 * non-power part of Psi; by the mean value theorem the symmetric
 * difference of log phi over [q-h, q+h] equals (log phi)'(xi) at an
 * interior point, so omega = |diff| * (q-h) log(q-h) is a certified
 * sample of (log phi)'(xi) * xi log(xi) up to the monotone drift of
 * q log q across the bracket. Decay evidence: the last sample must be at
 * most half the first.
 */
Outcome check_obn(const ApproxFunction& f, const Grid& grid, mpfr_prec_t prec) {
  const auto* lc = dynamic_cast<const LogCorrectedPsi*>(&f);
  if (dynamic_cast<const PowerPsi*>(&f) != nullptr)
    return {ConditionVerdict::Holds, std::nullopt, "no slowly-varying part (phi = 1)",
            std::nullopt};
  if (lc == nullptr)
    return {ConditionVerdict::Inconclusive, std::nullopt,
            "derivative check supported for power/log_corrected variants only", std::nullopt};

  auto log_phi = [&](const mpq_class& q) -> RealBall {
    RealBall psi = lc->eval(q, prec).ball(prec);
    RealBall qq = RealBall::from_q(q, prec);
    // log phi = log Psi + tau log q - log A
    return psi.log() + RealBall::from_q(lc->tau(), prec) * qq.log() -
           RealBall::from_q(lc->amplitude(), prec).log();
  };

  std::optional<RealBall> first, last;
  mpq_class first_q, last_q;
  for (const auto& q : grid.points) {
    mpq_class h = q / 8;
    if (q - h < lc->domain_min()) continue;
    RealBall diff = (log_phi(q + h) - log_phi(q - h))
                        .div(RealBall::from_q(2 * h, prec));
    RealBall qlo = RealBall::from_q(q - h, prec);
    RealBall omega = diff.abs() * qlo * qlo.log();
    if (!first) {
      first = omega;
      first_q = q;
    }
    last = omega;
    last_q = q;
  }
  if (!first || first_q == last_q)
    return {ConditionVerdict::Inconclusive, std::nullopt, "grid too small", std::nullopt};
  RealBall half = *first * RealBall::from_q(mpq_class(1, 2), prec);
  Verdict3 v = last->le(half);
  if (v == Verdict3::True)
    return {ConditionVerdict::Holds, std::nullopt,
            "omega(q) = |d/dq log phi| q log q decayed by >= 1/2 across the grid", std::nullopt};
  if (v == Verdict3::False)
    return {ConditionVerdict::FailsAt, last_q,
            "omega(q) = |d/dq log phi| q log q does not decay (not o(1/(q log q)))", std::nullopt};
  return {ConditionVerdict::Inconclusive, last_q, "enclosures too wide", std::nullopt};
}

ConditionReport finish(ConditionId id, const ConditionParams& params, const Grid& grid,
                       Outcome o) {
  ConditionReport rep;
  rep.id = id;
  rep.params = params;
  rep.grid_description = grid.description;
  rep.grid_points = grid.points.size();
  rep.verdict = o.verdict;
  rep.witness = o.witness;
  rep.detail = o.detail;
  rep.c2_observed = o.c2;
  return rep;
}

}  // namespace

ConditionReport check_condition(const ApproxFunction& f, ConditionId id,
                                const ConditionParams& params, const Grid& grid,
                                mpfr_prec_t prec) {
  switch (id) {
    case ConditionId::BED: return finish(id, params, grid, check_bed(f, grid, prec));
    case ConditionId::TAUU: return finish(id, params, grid, check_tauu(f, grid, prec));
    case ConditionId::GLEICHUNG:
      return finish(id, params, grid, check_gleichung(f, params.c1, grid, prec));
    case ConditionId::SUBMULT:
      return finish(id, params, grid, check_submult(f, params.alpha, grid, prec));
    case ConditionId::OBN_DERIVATIVE: return finish(id, params, grid, check_obn(f, grid, prec));
    default:
      throw DomainError("condition " + condition_name(id) +
                        " applies to dimension functions, not approximating functions");
  }
}

ConditionReport check_condition(const DimensionFunction& g, ConditionId id,
                                const ConditionParams& params, const Grid& grid,
                                mpfr_prec_t prec) {
  switch (id) {
    case ConditionId::ZZZ:
      return finish(id, params, grid, check_zzz(g, params.s1, params.s2, grid, prec));
    case ConditionId::DIM_RATIO_MONOTONE:
      return finish(id, params, grid, check_dim_ratio(g, grid, prec));
    case ConditionId::ALTEUG:
      return finish(id, params, grid, check_alteug(g, params.eps, grid, prec));
    default:
      throw DomainError("condition " + condition_name(id) +
                        " applies to approximating functions, not dimension functions");
  }
}

}  // namespace dioph::funcs
