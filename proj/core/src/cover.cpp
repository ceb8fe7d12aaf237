#include "dioph/cover.hpp"

#include <algorithm>
#include <cmath>

#include "dioph/parallel.hpp"

namespace dioph::cover {

using arith::RealBall;
using arith::Value;
using arith::Verdict3;

int QuadSurd::cmp_q(const mpq_class& t) const {
  // sign of (base - t) + coef sqrt(rad)
  mpq_class a = base - t;
  if (coef == 0 || rad == 0) return sgn(a);
  int sa = sgn(a);
  int sc = sgn(coef);
  if (sa == 0) return sc;
  if (sa == sc) return sa;
  // opposite signs: compare a^2 with coef^2 rad
  mpq_class lhs = a * a;
  mpq_class rhs = coef * coef * rad;
  int c = cmp(lhs, rhs);
  if (c == 0) return 0;
  // |a| dominates -> sign of a, else sign of the surd part
  return c > 0 ? sa : sc;
}

RealBall QuadSurd::ball(mpfr_prec_t prec) const {
  if (coef == 0 || rad == 0) return RealBall::from_q(base, prec);
  RealBall s = RealBall::from_q(rad, prec).sqrt();
  return RealBall::from_q(base, prec) + RealBall::from_q(coef, prec) * s;
}

Theta theta_split(long q1, long q2, long M) {
  if (q1 == 0 && q2 == 0) throw DomainError("theta_split: (0,0) excluded");
  return (std::labs(q1) > 2 * M * std::labs(q2)) ? Theta::Theta1 : Theta::Theta2;
}

namespace {

struct OpenIv {
  QuadSurd lo, hi;
};

// clip (a, b) to [0, 1]; nullopt when the intersection is empty. The
// caller guarantees a < b.
std::optional<OpenIv> clip01(QuadSurd a, QuadSurd b) {
  if (a.cmp_q(1) >= 0) return std::nullopt;
  if (b.cmp_q(0) <= 0) return std::nullopt;
  if (a.cmp_q(0) < 0) a = QuadSurd::rational(0);
  if (b.cmp_q(1) > 0) b = QuadSurd::rational(1);
  return OpenIv{a, b};
}

RealBall iv_diameter(const OpenIv& iv, mpfr_prec_t prec) {
  RealBall d = iv.hi.ball(prec) - iv.lo.ball(prec);
  mpq_class lo = d.lo_q();
  if (lo < 0) lo = 0;
  return RealBall::from_q_interval(lo, d.hi_q(), prec);
}

}  // namespace

Json ResolutionSet::to_json() const {
  Json ivs = Json::array();
  for (const auto& iv : intervals) {
    auto surd = [](const QuadSurd& s) {
      return Json{{"base", s.base.get_str()}, {"coef", s.coef.get_str()}, {"rad", s.rad.get_str()}};
    };
    ivs.push_back(Json{{"lo", surd(iv.lo)},
                       {"hi", surd(iv.hi)},
                       {"diameter", poly::ball_to_json(iv.diameter)}});
  }
  return Json{{"q1", q1},
              {"q2", q2},
              {"p", p},
              {"eps", eps.get_str()},
              {"intervals", ivs},
              {"total_diameter", poly::ball_to_json(total_diameter)}};
}

ResolutionSet resolution_intervals(long q1, long q2, long p, const mpq_class& eps,
                                   mpfr_prec_t prec) {
  if (q1 == 0 && q2 == 0) throw DomainError("resolution_intervals: (q1,q2) != (0,0)");
  if (eps <= 0) throw DomainError("resolution_intervals: eps > 0 required");
  ResolutionSet rs;
  rs.q1 = q1;
  rs.q2 = q2;
  rs.p = p;
  rs.eps = eps;

  // normalize to q2 >= 0 (the set is invariant under global sign flip)
  long a1 = q1, a2 = q2, a0 = p;
  if (a2 < 0 || (a2 == 0 && a1 < 0)) {
    a1 = -a1;
    a2 = -a2;
    a0 = -a0;
  }

  std::vector<OpenIv> out;
  if (a2 == 0) {
    // a1 > 0: x in ((-p - eps)/a1, (-p + eps)/a1)
    mpq_class lo = (mpq_class(-a0) - eps) / a1;
    mpq_class hi = (mpq_class(-a0) + eps) / a1;
    if (auto iv = clip01(QuadSurd::rational(lo), QuadSurd::rational(hi))) out.push_back(*iv);
  } else {
    mpq_class c2(a2), c1(a1), c0(a0);
    mpq_class dplus = c1 * c1 - 4 * c2 * (c0 - eps);
    if (dplus > 0) {
      mpq_class center = -c1 / (2 * c2);
      mpq_class scale = mpq_class(1) / (2 * c2);
      mpq_class dminus = c1 * c1 - 4 * c2 * (c0 + eps);
      QuadSurd r1{center, -scale, dplus};
      QuadSurd r2{center, scale, dplus};
      if (dminus > 0) {
        QuadSurd s1{center, -scale, dminus};
        QuadSurd s2{center, scale, dminus};
        if (auto iv = clip01(r1, s1)) out.push_back(*iv);
        if (auto iv = clip01(s2, r2)) out.push_back(*iv);
      } else if (dminus == 0) {
        // F = -eps exactly at the vertex: the open set omits that point
        QuadSurd v = QuadSurd::rational(center);
        if (auto iv = clip01(r1, v)) out.push_back(*iv);
        if (auto iv = clip01(v, r2)) out.push_back(*iv);
      } else {
        if (auto iv = clip01(r1, r2)) out.push_back(*iv);
      }
    }
  }

  RealBall total = RealBall::zero(prec);
  for (auto& iv : out) {
    ResolutionInterval ri;
    ri.lo = iv.lo;
    ri.hi = iv.hi;
    ri.diameter = iv_diameter(iv, prec);
    total = total + ri.diameter;
    rs.intervals.push_back(std::move(ri));
  }
  rs.total_diameter = total;
  return rs;
}

Json CoverSumReport::to_json() const {
  Json viol = Json::array();
  for (const auto& v : theta1_violations)
    viol.push_back(Json{{"q1", v.q1},
                        {"q2", v.q2},
                        {"p", v.p},
                        {"diam_hi", v.diam_hi.get_str()},
                        {"bound", v.bound.get_str()}});
  return Json{{"hmax", hmax},
              {"theta1_sum", poly::ball_to_json(theta1_sum)},
              {"theta2_sum", poly::ball_to_json(theta2_sum)},
              {"theta2_p0_sum", poly::ball_to_json(theta2_p0_sum)},
              {"theta2_rest_sum", poly::ball_to_json(theta2_rest_sum)},
              {"total", poly::ball_to_json(total)},
              {"triples", triples},
              {"nonempty", nonempty},
              {"undecided", undecided},
              {"theta1_max_ratio", theta1_max_ratio.get_str()},
              {"theta1_violations", viol},
              {"theta1_sharp_bound_ok", theta1_sharp_bound_ok},
              {"kappa", kappa.get_str()},
              {"kappa_prime", kappa_prime.get_str()}};
}

namespace {

// nearest integer with ties toward even
mpz_class round_half_even(const mpq_class& x) {
  mpz_class fl = arith::q_floor(x);
  mpq_class frac = x - mpq_class(fl);
  if (frac < mpq_class(1, 2)) return fl;
  if (frac > mpq_class(1, 2)) return fl + 1;
  return mpz_even_p(fl.get_mpz_t()) ? fl : fl + 1;
}

}  // namespace

CoverSumReport cover_sum(const funcs::DimensionFunction& g, const funcs::ApproxFunction& psi,
                         const CoverSumOptions& opt) {
  if (opt.hmax < 1) throw DomainError("cover_sum: hmax >= 1 required");
  const long H = opt.hmax;
  const mpfr_prec_t prec = opt.prec;

  // psi table on 1..H (exact values expected for the surd endpoints; an
  // inexact psi falls back to its certified upper endpoint)
  std::vector<mpq_class> eps(static_cast<size_t>(H) + 1);
  for (long q = 1; q <= H; ++q) {
    Value v = psi.eval(mpq_class(q), prec);
    eps[static_cast<size_t>(q)] = v.is_exact() ? v.exact() : v.ball().hi_q();
  }

  struct Shard {
    RealBall theta1 = RealBall::zero(64), theta2 = RealBall::zero(64);
    RealBall t2p0 = RealBall::zero(64), t2rest = RealBall::zero(64);
    unsigned long triples = 0, nonempty = 0, undecided = 0;
    std::vector<Theta1Violation> violations;
    mpq_class max_ratio{0};
    bool sharp_ok = true;
    mpq_class kappa{0};
  };
  std::vector<Shard> shards(static_cast<size_t>(2 * H + 1));

  auto run_q1 = [&](long q1, Shard& sh) {
    for (long q2 = -H; q2 <= H; ++q2) {
      if (q1 == 0 && q2 == 0) continue;
      long q = std::max(std::labs(q1), std::labs(q2));
      const mpq_class& e = eps[static_cast<size_t>(q)];
      Theta th = theta_split(q1, q2);

      // range of F0 = q1 x + q2 x^2 over [0,1]
      mpq_class f0(0), f1(q1 + q2);
      mpq_class fmin = std::min(f0, f1), fmax = std::max(f0, f1);
      if (q2 != 0) {
        mpq_class v = mpq_class(-q1) / (2 * q2);
        if (v > 0 && v < 1) {
          mpq_class fv = mpq_class(q1) * v + mpq_class(q2) * v * v;
          fmin = std::min(fmin, fv);
          fmax = std::max(fmax, fv);
        }
      }
      // nonempty p range: -fmax - eps < p < -fmin + eps
      mpz_class plo = arith::q_floor(-fmax - e) + 1;
      mpz_class phi = arith::q_ceil(-fmin + e) - 1;
      // the design-decision cap |p| <= C q with C = ceil(max|F0|/q) + 1
      mpq_class absf = std::max(::abs(fmin), ::abs(fmax));
      mpz_class cap = (arith::q_ceil(absf / q) + 1) * q;
      if (plo < -cap) plo = -cap;
      if (phi > cap) phi = cap;

      mpz_class p0 = round_half_even(-(mpq_class(q1) + mpq_class(q2) / 2) / 2);

      RealBall inner_sum = RealBall::zero(64);
      RealBall inner_majorant = RealBall::zero(64);

      for (mpz_class pz = plo; pz <= phi; ++pz) {
        if (!pz.fits_slong_p()) continue;
        long p = pz.get_si();
        ++sh.triples;
        ResolutionSet rs = resolution_intervals(q1, q2, p, e, prec);
        if (rs.intervals.empty()) continue;
        ++sh.nonempty;
        RealBall contrib = RealBall::zero(64);
        for (const auto& iv : rs.intervals) {
          mpq_class dlo = iv.diameter.lo_q(), dhi = iv.diameter.hi_q();
          if (dhi <= 0) continue;
          contrib = contrib + g.eval_interval(dlo, dhi, prec);
        }
        if (th == Theta::Theta1) {
          sh.theta1 = sh.theta1 + contrib;
          // check |mu| <= Psi(|q1|)/|q1| (and the sharp 2M/(M-1) variant)
          mpq_class bound = eps[static_cast<size_t>(std::labs(q1))] / std::labs(q1);
          mpq_class dhi = rs.total_diameter.hi_q();
          mpq_class dlo = rs.total_diameter.lo_q();
          if (bound > 0) {
            mpq_class ratio = dhi / bound;
            if (ratio > sh.max_ratio) sh.max_ratio = ratio;
            if (dlo > bound)
              sh.violations.push_back({q1, q2, p, dhi, bound});
            if (dhi > 3 * bound) sh.sharp_ok = false;
          }
        } else {
          sh.theta2 = sh.theta2 + contrib;
          if (pz == p0) {
            sh.t2p0 = sh.t2p0 + contrib;
          } else {
            sh.t2rest = sh.t2rest + contrib;
            if (opt.measure_inner_constants) {
              inner_sum = inner_sum + contrib;
              // majorant term g(Psi(q) [q |p - p0|]^(-1/2))
              mpz_class dp = ::abs(pz - p0);
              RealBall root = RealBall::from_z(dp * q, prec).sqrt();
              RealBall arg = RealBall::from_q(e, prec).div(root);
              inner_majorant =
                  inner_majorant + g.eval_interval(arg.lo_q(), arg.hi_q(), prec);
            }
          }
        }
      }
      if (opt.measure_inner_constants && th == Theta::Theta2 &&
          inner_majorant.lo_q() > 0) {
        mpq_class kappa_cand = inner_sum.hi_q() / inner_majorant.lo_q();
        if (kappa_cand > sh.kappa) sh.kappa = kappa_cand;
      }
    }
  };

  util::parallel_shards(static_cast<size_t>(2 * H + 1), opt.workers,
                        [&](size_t, size_t b, size_t e2) {
                          for (size_t i = b; i < e2; ++i)
                            run_q1(static_cast<long>(i) - H, shards[i]);
                        });

  CoverSumReport rep;
  rep.hmax = H;
  rep.theta1_sum = RealBall::zero(64);
  rep.theta2_sum = RealBall::zero(64);
  rep.theta2_p0_sum = RealBall::zero(64);
  rep.theta2_rest_sum = RealBall::zero(64);
  for (auto& sh : shards) {
    rep.theta1_sum = rep.theta1_sum + sh.theta1;
    rep.theta2_sum = rep.theta2_sum + sh.theta2;
    rep.theta2_p0_sum = rep.theta2_p0_sum + sh.t2p0;
    rep.theta2_rest_sum = rep.theta2_rest_sum + sh.t2rest;
    rep.triples += sh.triples;
    rep.nonempty += sh.nonempty;
    rep.undecided += sh.undecided;
    for (auto& v : sh.violations) rep.theta1_violations.push_back(std::move(v));
    rep.theta1_max_ratio = std::max(rep.theta1_max_ratio, sh.max_ratio);
    rep.theta1_sharp_bound_ok = rep.theta1_sharp_bound_ok && sh.sharp_ok;
    rep.kappa = std::max(rep.kappa, sh.kappa);
  }
  rep.total = rep.theta1_sum + rep.theta2_sum;

  if (opt.measure_inner_constants) {
    // kappa': sum_{p=1..Cq} max(sqrt(q/p), 1) <= kappa' q, with the widest
    // per-pair constant C observed at each q (C <= H + 2 suffices here)
    mpq_class kp(0);
    for (long q = 1; q <= H; ++q) {
      long cq = (2 * q + 1) * q;  // generous cap: C <= 2q+1 for |q1|,|q2| <= q
      RealBall s = RealBall::zero(64);
      for (long p = 1; p <= cq; ++p) {
        if (p <= q) {
          RealBall r = RealBall::from_q(mpq_class(q, p), prec).sqrt();
          s = s + r;
        } else {
          s = s + RealBall::one(prec);
        }
      }
      mpq_class cand = s.hi_q() / q;
      kp = std::max(kp, cand);
    }
    rep.kappa_prime = kp;
  }
  return rep;
}

}  // namespace dioph::cover
