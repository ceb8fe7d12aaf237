#include "dioph/counterexamples.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dioph/factor.hpp"
#include "dioph/parallel.hpp"

namespace dioph::cex {

using arith::DIntv;
using arith::RealBall;
using arith::Value;
using arith::Verdict3;
using poly::IntPolynomial;

Json Claim1Report::to_json() const {
  Json ls = Json::array();
  for (const auto& l : levels)
    ls.push_back(Json{{"level", l.level},
                      {"exact_route", l.exact_route},
                      {"ball_route", l.ball_route},
                      {"value", poly::ball_to_json(l.value)},
                      {"threshold", l.threshold.str()}});
  return Json{{"certified", certified}, {"levels", ls}};
}

Claim1Report verify_bugresu_claim1(const CFNumber& cf, const funcs::ApproxFunction& psi, int n,
                                   size_t L, mpfr_prec_t prec) {
  Claim1Report rep;
  rep.certified = true;
  if (L + 1 > cf.depth())
    throw DomainError("verify_bugresu_claim1: L <= depth-1 required (exact route needs q_{l+1})");
  for (size_t l = 1; l <= L; ++l) {
    Claim1Level lev;
    lev.level = l;
    auto [rl, rln] = convergent_poly(cf, l, n);
    mpz_class h = rln.height();  // q_l^n, asserted inside convergent_poly

    // exact route: |R_l(x)| <= 1/q_{l+1} and (1/q_{l+1})^n < Psi(q_l^n)
    mpq_class cf_bound(1, cf.q[l + 1]);  // standard convergent bound
    Value thr = psi.eval(mpq_class(h), prec);
    lev.threshold = thr;
    Value lhs = arith::q_pow_si(cf_bound, n);
    lev.exact_route = (lhs.lt(thr) == Verdict3::True);

    // ball route: direct certified evaluation
    RealBall xv = cf.enclosure_width(mpq_class(1, cf.q[l] * cf.q[l] * cf.q[l + 1]), prec);
    lev.value = rln.eval_ball(xv).abs();
    lev.ball_route = (Value(lev.value).le(thr) == Verdict3::True);

    rep.certified = rep.certified && lev.exact_route && lev.ball_route;
    rep.levels.push_back(std::move(lev));
  }
  return rep;
}

bool verify_step_alignment(const CFNumber& cf, int n) {
  for (size_t l = 1; l < cf.q.size(); ++l) {
    mpz_class lo, hi;
    mpz_pow_ui(lo.get_mpz_t(), cf.q[l - 1].get_mpz_t(), static_cast<unsigned long>(n));
    mpz_pow_ui(hi.get_mpz_t(), cf.q[l].get_mpz_t(), static_cast<unsigned long>(n));
    if (!(lo < cf.q[l] && cf.q[l] <= hi)) return false;
  }
  return true;
}

Json Claim2Report::to_json() const {
  return Json{{"delta", poly::ball_to_json(delta)},
              {"argmin", poly::poly_to_json(argmin)},
              {"scanned", scanned},
              {"undecided", undecided},
              {"undecided_over_budget", undecided_over_budget}};
}

namespace {

// deg-2 irreducibility: primitive and the discriminant is not a perfect
// square (cross-checked against factor() in the tests)
bool quick_irreducible2(long a0, long a1, long a2) {
  mpz_class d = mpz_class(a1) * a1 - 4 * mpz_class(a2) * a0;
  if (d >= 0) {
    auto r = arith::exact_root(d, 2);
    if (r) return false;
  }
  return true;
}

}  // namespace

Claim2Report verify_bugresu_claim2(const CFNumber& cf, const funcs::ApproxFunction& psi, int n,
                                   const mpz_class& hmax, mpfr_prec_t prec, int workers) {
  if (!hmax.fits_slong_p() || hmax < 1)
    throw DomainError("verify_bugresu_claim2: bad hmax");
  const long H = hmax.get_si();

  // thresholds Psi(h)^(1/n), exact when w*n is an integer
  std::vector<Value> thr(static_cast<size_t>(H) + 1, Value(mpq_class(0)));
  std::vector<double> thr_hi(static_cast<size_t>(H) + 1, 0.0);
  for (long h = 1; h <= H; ++h) {
    Value t = psi.eval(mpq_class(h), prec).pow_q(mpq_class(1, n), prec);
    thr_hi[static_cast<size_t>(h)] = t.hi_d();
    thr[static_cast<size_t>(h)] = std::move(t);
  }

  // x enclosure tight enough to separate every nonzero |Q(x)| at this
  // scale; the smallest nonzero values are ~ Psi-sized near convergents
  mpq_class want_width = thr[1].is_exact() ? thr[1].exact() : thr[1].ball().lo_q();
  want_width /= mpz_class(H) * mpz_class(H) * 1024;
  RealBall xb = cf.enclosure_width(want_width, std::max<mpfr_prec_t>(prec, 256));
  DIntv xd{xb.lo_d(), xb.hi_d()};

  struct Shard {
    double best_hi = std::numeric_limits<double>::infinity();
    mpq_class best_lo_q, best_hi_q;
    bool have = false;
    IntPolynomial argmin;
    unsigned long scanned = 0, undecided = 0;
    std::vector<IntPolynomial> retry;
  };
  std::vector<Shard> shards;

  // degree-d blocks with positive leading coefficient
  struct Task {
    int d;
    long lead;
  };
  std::vector<Task> tasks;
  for (int d = 1; d <= n; ++d)
    for (long lead = 1; lead <= H; ++lead) tasks.push_back({d, lead});
  shards.resize(tasks.size());

  auto ratio_exact = [&](const IntPolynomial& q, long h, Shard& sh) {
    RealBall val = q.eval_ball(xb).abs();
    if (!val.surely_positive()) {
      sh.retry.push_back(q);
      return;
    }
    const Value& t = thr[static_cast<size_t>(h)];
    RealBall tb = t.ball(prec);
    RealBall ratio = val.div(tb);
    mpq_class rlo = ratio.lo_q(), rhi = ratio.hi_q();
    if (!sh.have || rhi < sh.best_hi_q) {
      sh.best_hi_q = rhi;
      sh.argmin = q;
    }
    if (!sh.have || rlo < sh.best_lo_q) sh.best_lo_q = rlo;
    sh.have = true;
    sh.best_hi = std::min(sh.best_hi, ratio.hi_d());
  };

  auto run_task = [&](size_t ti) {
    const Task& task = tasks[ti];
    Shard& sh = shards[ti];
    const int d = task.d;
    std::vector<long> c(static_cast<size_t>(d) + 1, 0);
    c[static_cast<size_t>(d)] = task.lead;
    for (int i = 0; i < d; ++i) c[static_cast<size_t>(i)] = -H;
    for (;;) {
      long hsel = 0;
      for (long v : c) hsel = std::max(hsel, std::labs(v));
      if (hsel <= H) {
        // primitivity
        long g = std::labs(c[0]);
        for (int i = 1; i <= d; ++i) g = std::gcd(g, std::labs(c[static_cast<size_t>(i)]));
        bool primitive = (g == 1);
        bool irreducible = primitive;
        if (primitive && d == 2) irreducible = quick_irreducible2(c[0], c[1], c[2]);
        if (primitive && d > 2) {
          std::vector<mpz_class> zc(c.size());
          for (size_t i = 0; i < c.size(); ++i) zc[i] = c[i];
          irreducible = poly::is_irreducible(IntPolynomial{std::move(zc)});
        }
        if (irreducible) {
          ++sh.scanned;
          // double filter on the ratio
          DIntv acc{0, 0};
          for (size_t i = c.size(); i-- > 0;) acc = acc * xd + DIntv::point(static_cast<double>(c[i]));
          acc = acc.abs();
          double rlo = acc.lo / std::max(thr_hi[static_cast<size_t>(hsel)], 1e-300);
          if (!(rlo > sh.best_hi * 1.05) || !std::isfinite(sh.best_hi)) {
            std::vector<mpz_class> zc(c.size());
            for (size_t i = 0; i < c.size(); ++i) zc[i] = c[i];
            ratio_exact(IntPolynomial{std::move(zc)}, hsel, sh);
          }
        }
      }
      int i = 0;
      while (i < d && c[static_cast<size_t>(i)] == H) {
        c[static_cast<size_t>(i)] = -H;
        ++i;
      }
      if (i == d) break;
      ++c[static_cast<size_t>(i)];
    }
  };

  util::parallel_shards(tasks.size(), workers, [&](size_t, size_t b, size_t e) {
    for (size_t ti = b; ti < e; ++ti) run_task(ti);
  });

  Claim2Report rep;
  bool have = false;
  mpq_class lo, hi;
  for (auto& sh : shards) {
    rep.scanned += sh.scanned;
    // retries at full depth enclosure
    for (const auto& q : sh.retry) {
      RealBall xb2 = cf.enclosure(cf.depth() - 1, std::max<mpfr_prec_t>(prec * 4, 512));
      RealBall val = q.eval_ball(xb2).abs();
      if (!val.surely_positive()) {
        ++rep.undecided;
        continue;
      }
      long h = q.height().get_si();
      RealBall ratio = val.div(thr[static_cast<size_t>(h)].ball(prec));
      if (!have || ratio.hi_q() < hi) {
        hi = ratio.hi_q();
        rep.argmin = q;
      }
      if (!have || ratio.lo_q() < lo) lo = ratio.lo_q();
      have = true;
    }
    if (sh.have) {
      if (!have || sh.best_hi_q < hi) {
        hi = sh.best_hi_q;
        rep.argmin = sh.argmin;
      }
      if (!have || sh.best_lo_q < lo) lo = sh.best_lo_q;
      have = true;
    }
  }
  if (!have) throw DomainError("verify_bugresu_claim2: no irreducible polynomial certified");
  rep.delta = RealBall::from_q_interval(lo, hi, prec);
  rep.undecided_over_budget = rep.undecided * 100 > rep.scanned;
  return rep;
}

/* ------------------------------ good pairs ------------------------- */

std::vector<GoodPair> good_pairs(const mpz_class& bmax) {
  if (bmax < 2) throw DomainError("good_pairs: bmax >= 2 required");
  if (!bmax.fits_slong_p()) throw DomainError("good_pairs: bmax too large");
  std::vector<GoodPair> out;
  out.push_back({0, 1});
  long B = bmax.get_si();
  for (long b = 2; b <= B; ++b)
    for (long a = 1; a < b; ++a) {
      if (std::gcd(a, b) != 1) continue;
      out.push_back({a, b});
      out.push_back({-a, b});
    }
  return out;
}

std::optional<GoodPair> recognize_good_pair(const mpz_class& q1, const mpz_class& q2) {
  if (q2 < 1) return std::nullopt;
  auto b = arith::exact_root(q2, 2);
  if (!b || *b == 0) return std::nullopt;
  mpz_class den = -2 * (*b);
  mpz_class a = q1 / den;
  if (a * den != q1) return std::nullopt;
  if (::abs(a) >= *b) return std::nullopt;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b->get_mpz_t());
  if (g != 1) return std::nullopt;
  return GoodPair{a, *b};
}

Value psi_goodpair(const funcs::ApproxFunction& psi, const mpz_class& q1, const mpz_class& q2,
                   mpfr_prec_t prec) {
  auto gp = recognize_good_pair(q1, q2);
  if (!gp) return Value(mpq_class(0));
  Value p = psi.eval(mpq_class(gp->b), prec);
  return Value(mpq_class(gp->b * gp->b)) * p * p;
}

IdentityReport verify_goodpair_identity(const mpz_class& a, const mpz_class& b,
                                        const mpq_class& x) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (g != 1 || b <= 0 || ::abs(a) >= b)
    throw DomainError("verify_goodpair_identity: need gcd(a,b)=1, 0 < |a| < b or a = 0");
  IdentityReport rep;
  mpz_class q1 = -2 * a * b, q2 = b * b;
  mpq_class common = mpq_class(q1) * x + mpq_class(q2) * x * x;
  rep.lhs_plus = common + mpq_class(a * a);
  rep.lhs_minus = common - mpq_class(a * a);
  mpq_class diff = x - mpq_class(a, b);
  rep.rhs = mpq_class(q2) * diff * diff;
  rep.plus_matches = (rep.lhs_plus == rep.rhs);
  rep.minus_matches = (rep.lhs_minus == rep.rhs);
  return rep;
}

}  // namespace dioph::cex
