#include "dioph/enumerate.hpp"

#include <algorithm>
#include <cmath>

#include "dioph/parallel.hpp"

namespace dioph::search {

using arith::DIntv;
using arith::RealBall;
using arith::Value;
using arith::Verdict3;
using poly::IntPolynomial;

std::string status_name(HitStatus s) {
  switch (s) {
    case HitStatus::Certified: return "Certified";
    case HitStatus::Rejected: return "Rejected";
    case HitStatus::Undecided: return "Undecided";
  }
  return "?";
}

std::string class_name(PolyClass c) {
  switch (c) {
    case PolyClass::Irreducible: return "Irreducible";
    case PolyClass::ReducibleDistinct: return "ReducibleDistinct";
    case PolyClass::RepeatedRoot: return "RepeatedRoot";
    case PolyClass::Constant: return "Constant";
  }
  return "?";
}

Json ApproximableHit::to_json() const {
  return Json{{"poly", poly::poly_to_json(p)},
              {"height", height.get_str()},
              {"value", poly::ball_to_json(value)},
              {"status", status_name(status)},
              {"class", class_name(cls)}};
}

PolyClass classify_polynomial(const IntPolynomial& p) {
  if (p.degree() < 1) return PolyClass::Constant;
  IntPolynomial g = poly_gcd(p, p.derivative());
  if (g.degree() >= 1) return PolyClass::RepeatedRoot;
  poly::Factorization f = poly::factor(p);
  return f.is_irreducible() ? PolyClass::Irreducible : PolyClass::ReducibleDistinct;
}

std::optional<RepeatedRootWitness> repeated_root_witness(const IntPolynomial& p) {
  if (p.degree() != 2) throw DomainError("repeated_root_witness: quadratic required");
  mpz_class a2 = p.coeff(2), a1 = p.coeff(1), a0 = p.coeff(0);
  if (a1 * a1 != 4 * a2 * a0) return std::nullopt;  // distinct roots
  mpz_class c = p.content();
  mpz_class k = a2 > 0 ? c : mpz_class(-c);
  mpz_class v2 = a2 / k;
  if (v2 * k != a2) return std::nullopt;
  auto v = arith::exact_root(v2, 2);
  if (!v) return std::nullopt;
  // u from the middle coefficient; the constant term re-checks it
  mpz_class den = -2 * k * (*v);
  if (den == 0) return std::nullopt;
  mpz_class u = a1 / den;
  if (u * den != a1) return std::nullopt;
  if (k * u * u != a0) return std::nullopt;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), v->get_mpz_t());
  if (g != 1) return std::nullopt;
  return RepeatedRootWitness{k, u, *v};
}

Value psi_hat(const funcs::ApproxFunction& psi, const mpq_class& q, mpfr_prec_t prec) {
  return psi.eval(q * q, prec).sqrt(prec);
}

ThetaLiftCertificate lift_theta_witness(const mpz_class& u, const mpz_class& v,
                                        const funcs::ApproxFunction& psi, mpfr_prec_t prec) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
  if (g != 1) throw DomainError("lift_theta_witness: gcd(u,v) = 1 required");
  if (2 * ::abs(u) >= v)
    throw DomainError("lift_theta_witness: 2|u| < v required (the x < 1/2 regime)");
  ThetaLiftCertificate cert;
  IntPolynomial q_poly = IntPolynomial::linear(-u, v);
  cert.p = q_poly * q_poly;  // v^2 t^2 - 2uv t + u^2
  cert.height = cert.p.height();
  mpz_class v2 = v * v;
  if (cert.height != v2) throw InternalError("theta lift: H_P != v^2");
  Value ph = psi_hat(psi, mpq_class(v), prec);
  cert.psi_hat_sq = ph * ph;
  cert.psi_at_h = psi.eval(mpq_class(v2), prec);
  if (cert.psi_hat_sq.is_exact() && cert.psi_at_h.is_exact()) {
    cert.identity_certified = cert.psi_hat_sq.exact() == cert.psi_at_h.exact();
  } else {
    // enclosures must overlap; the identity is algebraic, the check is on
    // the evaluation route
    RealBall a = cert.psi_hat_sq.ball(prec), b = cert.psi_at_h.ball(prec);
    cert.identity_certified = !(a.lt(b) == Verdict3::True || b.lt(a) == Verdict3::True);
  }
  return cert;
}

Json ThetaLiftCertificate::to_json() const {
  return Json{{"poly", poly::poly_to_json(p)},
              {"height", height.get_str()},
              {"psi_hat_sq", psi_hat_sq.str()},
              {"psi_at_height", psi_at_h.str()},
              {"identity_certified", identity_certified}};
}

namespace {

struct ThreshTable {
  // per selected height h = 1..hmax: Value (exact or ball), double upper
  std::vector<Value> value;
  std::vector<double> hi_d;
  std::vector<bool> valid;
  long hmax = 0;
};

ThreshTable build_thresholds(const funcs::ApproxFunction& psi, long hmax, mpfr_prec_t prec) {
  ThreshTable t;
  t.hmax = hmax;
  t.value.resize(static_cast<size_t>(hmax) + 1, Value(mpq_class(0)));
  t.hi_d.resize(static_cast<size_t>(hmax) + 1, 0.0);
  t.valid.resize(static_cast<size_t>(hmax) + 1, false);
  mpq_class dmin = psi.domain_min();
  std::optional<mpq_class> dmax = psi.domain_max();
  for (long h = 1; h <= hmax; ++h) {
    mpq_class hq(h);
    if (hq < dmin || (dmax && hq > *dmax)) continue;
    t.value[static_cast<size_t>(h)] = psi.eval(hq, prec);
    t.hi_d[static_cast<size_t>(h)] = t.value[static_cast<size_t>(h)].hi_d();
    t.valid[static_cast<size_t>(h)] = true;
  }
  return t;
}

// certified status of |value_at_x| <= thresh, refining x as needed
HitStatus decide(const IntPolynomial& p, const pts::RealPoint& x, const Value& thresh,
                 mpfr_prec_t prec, mpfr_prec_t prec_cap, RealBall* out) {
  if (x.is_rational() && thresh.is_exact()) {
    mpq_class v = ::abs(p.eval_q(x.rational_value()));
    if (out) *out = RealBall::from_q(v, prec);
    return v <= thresh.exact() ? HitStatus::Certified : HitStatus::Rejected;
  }
  for (mpfr_prec_t pr = prec; pr <= prec_cap; pr *= 2) {
    RealBall xb = x.enclosure(pr);
    RealBall val = p.eval_ball(xb).abs();
    if (out) *out = val;
    Verdict3 v = Value(val).le(thresh);
    if (v == Verdict3::True) return HitStatus::Certified;
    if (v == Verdict3::False) return HitStatus::Rejected;
    if (x.is_rational() && thresh.is_exact()) break;  // nothing left to refine
  }
  return HitStatus::Undecided;
}

}  // namespace

HitStatus status_of(const IntPolynomial& p, const pts::RealPoint& x,
                    const funcs::ApproxFunction& psi, HeightMode mode, mpfr_prec_t prec,
                    mpfr_prec_t prec_cap, RealBall* value_out) {
  if (p.is_zero()) throw DomainError("status_of: zero polynomial");
  mpz_class h = (mode == HeightMode::IncludeConstant) ? p.height()
                                                      : p.height_excluding_constant();
  mpq_class hq(h);
  if (hq < psi.domain_min() || (psi.domain_max() && hq > *psi.domain_max()))
    throw DomainError("status_of: height outside psi domain");
  Value thresh = psi.eval(hq, prec);
  return decide(p, x, thresh, prec, prec_cap, value_out);
}

EnumerationResult enumerate_approximable(const pts::RealPoint& x,
                                         const funcs::ApproxFunction& psi,
                                         const EnumerateOptions& opt) {
  if (opt.degree < 0 || opt.degree > poly::kMaxFactorDegree)
    throw DomainError("enumerate: degree in [0, 8] required");
  if (opt.hmax < 1) throw DomainError("enumerate: hmax >= 1 required");
  if (!opt.hmax.fits_slong_p()) throw DomainError("enumerate: hmax too large");
  const long hmax = opt.hmax.get_si();
  const int n = opt.degree;

  ThreshTable thresh = build_thresholds(psi, hmax, opt.prec);
  DIntv xd = x.enclosure_d();
  const double x_abs_hi = std::max(std::abs(xd.lo), std::abs(xd.hi));

  // ExcludeConstant: the free constant term is bounded through
  // |a0| <= sum_{i>=1} |a_i| |x|^i + max threshold.
  long a0_bound = hmax;
  if (opt.height_mode == HeightMode::ExcludeConstant) {
    double xmax = std::max(1.0, x_abs_hi);
    double rest = 0, xp = 1;
    for (int i = 1; i <= n; ++i) {
      xp *= xmax;
      rest += static_cast<double>(hmax) * xp;
    }
    double tmax = 0;
    for (long h = 1; h <= hmax; ++h)
      if (thresh.valid[static_cast<size_t>(h)]) tmax = std::max(tmax, thresh.hi_d[static_cast<size_t>(h)]);
    a0_bound = static_cast<long>(std::ceil(rest + tmax)) + 1;
  }

  // shard tasks: one per (effective degree d, leading coefficient)
  struct Task {
    int d;
    long lead;
  };
  std::vector<Task> tasks;
  int d_start = (opt.height_mode == HeightMode::ExcludeConstant) ? 1 : 0;
  for (int d = d_start; d <= n; ++d)
    for (long lead = 1; lead <= hmax; ++lead) tasks.push_back({d, lead});

  struct ShardOut {
    std::vector<ApproximableHit> hits;
    unsigned long scanned = 0, certified = 0, undecided = 0;
  };
  std::vector<ShardOut> outs(tasks.size());

  auto run_task = [&](size_t ti) {
    const Task& task = tasks[ti];
    ShardOut& out = outs[ti];
    const int d = task.d;
    std::vector<long> c(static_cast<size_t>(d) + 1, 0);
    c[static_cast<size_t>(d)] = task.lead;
    const long low_bound = (opt.height_mode == HeightMode::ExcludeConstant && d >= 1) ? a0_bound
                                                                                      : hmax;
    // odometer over (a_{d-1}, .., a_1, a_0); a_0 may have its own range
    for (int i = 0; i < d; ++i) c[static_cast<size_t>(i)] = (i == 0) ? -low_bound : -hmax;
    if (d == 0) c[0] = task.lead;

    auto emit = [&](const std::vector<long>& cv) {
      // selected height
      long hsel = 0;
      if (opt.height_mode == HeightMode::IncludeConstant) {
        for (long v : cv) hsel = std::max(hsel, std::labs(v));
      } else {
        for (size_t i = 1; i < cv.size(); ++i) hsel = std::max(hsel, std::labs(cv[i]));
      }
      if (hsel < 1 || hsel > hmax) return;
      if (!thresh.valid[static_cast<size_t>(hsel)]) return;
      ++out.scanned;
      // sound double prefilter
      DIntv acc{0.0, 0.0};
      for (size_t i = cv.size(); i-- > 0;)
        acc = acc * xd + DIntv::point(static_cast<double>(cv[i]));
      acc = acc.abs();
      if (acc.lo > thresh.hi_d[static_cast<size_t>(hsel)] * (1.0 + 1e-9) + 1e-300) return;

      std::vector<mpz_class> zc(cv.size());
      for (size_t i = 0; i < cv.size(); ++i) zc[i] = cv[i];
      IntPolynomial p{std::move(zc)};
      RealBall val(opt.prec);
      HitStatus st = decide(p, x, thresh.value[static_cast<size_t>(hsel)], opt.prec,
                            opt.prec_cap, &val);
      if (st == HitStatus::Rejected) return;
      ApproximableHit hit;
      hit.p = p;
      hit.height = hsel;
      hit.value = val;
      hit.status = st;
      hit.cls = opt.classify ? classify_polynomial(p) : PolyClass::Constant;
      if (st == HitStatus::Certified) ++out.certified;
      else ++out.undecided;
      out.hits.push_back(std::move(hit));
    };

    if (d == 0) {
      emit(c);
      return;
    }
    for (;;) {
      emit(c);
      int i = 0;
      while (i < d) {
        long lim = (i == 0) ? low_bound : hmax;
        if (c[static_cast<size_t>(i)] < lim) break;
        c[static_cast<size_t>(i)] = -lim;
        ++i;
      }
      if (i == d) break;
      ++c[static_cast<size_t>(i)];
    }
  };

  util::parallel_shards(tasks.size(), opt.workers, [&](size_t, size_t b, size_t e) {
    for (size_t ti = b; ti < e; ++ti) run_task(ti);
  });

  EnumerationResult res;
  for (auto& o : outs) {
    res.scanned += o.scanned;
    res.certified += o.certified;
    res.undecided += o.undecided;
    for (auto& h : o.hits) res.hits.push_back(std::move(h));
  }
  res.undecided_over_budget = res.undecided * 100 > res.scanned;
  return res;
}

DSScanResult davenport_schmidt_scan(const pts::RealPoint& x, int n, const mpz_class& hmax,
                                    mpfr_prec_t prec, int workers) {
  if (hmax < 2) throw DomainError("davenport_schmidt_scan: hmax >= 2 required");
  if (!hmax.fits_slong_p()) throw DomainError("davenport_schmidt_scan: hmax too large");
  const long H = hmax.get_si();

  // canonical nonzero polynomials of degree <= n, height <= H
  std::vector<IntPolynomial> polys;
  std::vector<long> heights;
  for (int d = 0; d <= n; ++d) {
    std::vector<long> c(static_cast<size_t>(d) + 1, 0);
    for (long lead = 1; lead <= H; ++lead) {
      c[static_cast<size_t>(d)] = lead;
      for (int i = 0; i < d; ++i) c[static_cast<size_t>(i)] = -H;
      for (;;) {
        long hsel = 0;
        for (long v : c) hsel = std::max(hsel, std::labs(v));
        if (hsel <= H) {
          std::vector<mpz_class> zc(c.size());
          for (size_t i = 0; i < c.size(); ++i) zc[i] = c[i];
          polys.emplace_back(std::move(zc));
          heights.push_back(hsel);
        }
        if (d == 0) break;
        int i = 0;
        while (i < d && c[static_cast<size_t>(i)] == H) {
          c[static_cast<size_t>(i)] = -H;
          ++i;
        }
        if (i == d) break;
        ++c[static_cast<size_t>(i)];
      }
    }
  }

  DIntv xd = x.enclosure_d();
  std::vector<DIntv> vals(polys.size());
  for (size_t i = 0; i < polys.size(); ++i) vals[i] = polys[i].eval_dintv(xd).abs();

  // first pass: double upper bound of the running minimum
  double best_hi = std::numeric_limits<double>::infinity();
  const double exp2n1 = static_cast<double>(2 * n - 1);
  for (size_t i = 0; i < polys.size(); ++i)
    for (size_t j = i + 1; j < polys.size(); ++j) {
      double hv = static_cast<double>(std::max(heights[i], heights[j]));
      double m = std::max(vals[i].hi, vals[j].hi) * std::pow(hv, exp2n1);
      if (m < best_hi) {
        if (poly_gcd(polys[i], polys[j]).degree() == 0) best_hi = m;
      }
    }

  // second pass: certify candidates near the minimum
  DSScanResult res;
  res.min_value = RealBall(prec);
  bool have = false;
  unsigned long pairs = 0, undecided = 0;
  RealBall xb = x.enclosure(prec);
  std::vector<std::optional<RealBall>> exact_vals(polys.size());
  auto val_of = [&](size_t i) -> const RealBall& {
    if (!exact_vals[i]) exact_vals[i] = polys[i].eval_ball(xb).abs();
    return *exact_vals[i];
  };
  mpq_class best_lo_q, best_hi_q;
  for (size_t i = 0; i < polys.size(); ++i)
    for (size_t j = i + 1; j < polys.size(); ++j) {
      double hv = static_cast<double>(std::max(heights[i], heights[j]));
      double scale = std::pow(hv, exp2n1);
      double cand_lo = std::max(vals[i].lo, vals[j].lo) * scale;
      ++pairs;
      if (cand_lo > best_hi * 1.05) continue;
      if (poly_gcd(polys[i], polys[j]).degree() != 0) continue;
      // certified pair value
      const RealBall& a = val_of(i);
      const RealBall& b = val_of(j);
      mpq_class mlo = std::max(a.lo_q(), b.lo_q());
      mpq_class mhi = std::max(a.hi_q(), b.hi_q());
      mpz_class hz(std::max(heights[i], heights[j]));
      mpz_class hpow;
      mpz_pow_ui(hpow.get_mpz_t(), hz.get_mpz_t(), static_cast<unsigned long>(2 * n - 1));
      mlo *= hpow;
      mhi *= hpow;
      if (mlo <= 0) {
        // the pair value cannot be certified positive at this precision;
        // excluded from the minimum and counted
        ++undecided;
        continue;
      }
      if (!have || mhi < best_hi_q) {
        best_hi_q = mhi;
        res.arg_p = polys[i];
        res.arg_q = polys[j];
      }
      if (!have || mlo < best_lo_q) best_lo_q = mlo;
      have = true;
    }
  res.pairs = pairs;
  res.undecided = undecided;
  if (!have) throw DomainError("davenport_schmidt_scan: no coprime pairs certified");
  res.min_value = RealBall::from_q_interval(best_lo_q, best_hi_q, prec);
  (void)workers;
  return res;
}

}  // namespace dioph::search
