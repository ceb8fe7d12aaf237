#include "dioph/extract.hpp"

#include <algorithm>
#include <cmath>

namespace dioph::extract {

using arith::RealBall;
using arith::Value;
using arith::Verdict3;
using poly::IntPolynomial;

namespace {

// psi at an exact or enclosed argument (psi non-increasing).
Value psi_at(const funcs::ApproxFunction& psi, const Value& arg, mpfr_prec_t prec) {
  if (arg.is_exact()) return psi.eval(arg.exact(), prec);
  RealBall b = arg.ball(prec);
  return Value(psi.eval_interval(b.lo_q(), b.hi_q(), prec));
}

Verdict3 le_with_escalation(const pts::RealPoint& x, const IntPolynomial& p,
                            const funcs::ApproxFunction& psi, const Value& height,
                            mpfr_prec_t prec, mpfr_prec_t cap, RealBall* val_out) {
  for (mpfr_prec_t pr = prec; pr <= cap; pr *= 2) {
    RealBall val = p.eval_ball(x.enclosure(pr)).abs();
    if (val_out) *val_out = val;
    Value thresh = psi_at(psi, height, pr);
    Verdict3 v = Value(val).le(thresh);
    if (v != Verdict3::Unknown) return v;
  }
  return Verdict3::Unknown;
}

}  // namespace

Json ExtractionCertificate::to_json() const {
  Json fs = Json::array();
  for (const auto& f : factors) {
    Json e{{"poly", poly::poly_to_json(f.q)},
           {"height", f.height.get_str()},
           {"value", poly::ball_to_json(f.value)},
           {"bounded", f.bounded}};
    if (mode == HeightKind::Mahler) e["mahler"] = poly::ball_to_json(f.mahler);
    if (!f.bounded) {
      e["g"] = poly::ball_to_json(f.g_exp);
      e["h"] = poly::ball_to_json(f.h_exp);
    }
    fs.push_back(std::move(e));
  }
  Json j{{"status", status == CertStatus::Ok
                        ? "Ok"
                        : status == CertStatus::Undecided ? "Undecided" : "PreconditionFailed"},
         {"mode", mode == HeightKind::Naive ? "naive" : "mahler"},
         {"input", poly::poly_to_json(input)},
         {"content", content.get_str()},
         {"primitive", poly::poly_to_json(primitive)},
         {"l", l},
         {"h_x", h_x.get_str()},
         {"d_x", poly::ball_to_json(d_x)},
         {"factors", fs},
         {"selected", selected},
         {"note", note}};
  if (selected >= 0) {
    j["q_value"] = poly::ball_to_json(q_value);
    j["threshold"] = threshold.str();
    j["c_obs"] = poly::ball_to_json(c_obs);
    j["sum_g"] = poly::ball_to_json(sum_g);
    j["sum_h"] = poly::ball_to_json(sum_h);
  }
  return j;
}

ExtractionCertificate extract_irreducible(const IntPolynomial& p, const pts::RealPoint& x,
                                          const funcs::ApproxFunction& psi,
                                          const ExtractOptions& opt) {
  if (p.is_zero() || p.degree() < 1)
    throw DomainError("extract_irreducible: nonconstant polynomial required");
  ExtractionCertificate cert;
  cert.mode = opt.mode;
  cert.input = p;

  // x must not be a root of P
  if (x.is_rational() && p.eval_q(x.rational_value()) == 0)
    throw DomainError("extract_irreducible: x is a root of P");
  {
    bool nonzero = false;
    for (mpfr_prec_t pr = opt.prec; pr <= opt.prec_cap; pr *= 2) {
      RealBall v = p.eval_ball(x.enclosure(pr)).abs();
      if (v.surely_positive()) { nonzero = true; break; }
    }
    if (!nonzero) {
      if (!x.is_rational())
        throw DomainError("extract_irreducible: cannot separate P(x) from 0 (x may be a root)");
    }
  }

  // precondition: P is psi-approximable in the chosen height
  const int n = p.degree();
  Value p_height = (opt.mode == HeightKind::Naive)
                       ? Value(mpq_class(p.height()))
                       : Value([&] {
                           poly::MahlerResult m = poly::mahler_measure(p, 64, opt.prec_cap);
                           return m.value;
                         }());
  if (le_with_escalation(x, p, psi, p_height, opt.prec, opt.prec_cap, nullptr) !=
      Verdict3::True) {
    cert.status = CertStatus::PreconditionFailed;
    cert.note = "|P(x)| <= Psi(H_P) not certified";
    return cert;
  }

  auto [content, prim] = p.primitive_part();
  cert.content = content;
  cert.primitive = prim.sign_canonical();

  // the primitive part stays approximable (re-certified, not assumed)
  Value prim_height = (opt.mode == HeightKind::Naive)
                          ? Value(mpq_class(cert.primitive.height()))
                          : Value(poly::mahler_measure(cert.primitive, 64, opt.prec_cap).value);
  if (le_with_escalation(x, cert.primitive, psi, prim_height, opt.prec, opt.prec_cap, nullptr) !=
      Verdict3::True) {
    cert.status = CertStatus::Undecided;
    cert.note = "primitive-part membership could not be certified";
    return cert;
  }

  poly::Factorization fac = poly::factor(cert.primitive);
  RealBall xb = x.enclosure(opt.prec);
  for (const auto& fp : fac.factors) {
    for (unsigned m = 0; m < fp.multiplicity; ++m) {
      FactorEntry e;
      e.q = fp.poly;
      e.height = fp.poly.height();
      e.value = fp.poly.eval_ball(xb).abs();
      if (opt.mode == HeightKind::Mahler)
        e.mahler = poly::mahler_measure(fp.poly, 64, opt.prec_cap).value;
      cert.factors.push_back(std::move(e));
    }
  }
  const size_t k = cert.factors.size();

  auto finish_with = [&](size_t idx, const std::string& note) {
    cert.selected = static_cast<int>(idx);
    FactorEntry& e = cert.factors[idx];
    // refresh the witness at full precision
    cert.q_value = e.q.eval_ball(x.enclosure(opt.prec)).abs();
    Value hq = (opt.mode == HeightKind::Naive) ? Value(mpq_class(e.height)) : Value(e.mahler);
    cert.threshold = psi_at(psi, hq, opt.prec);
    cert.c_obs = cert.q_value.div(cert.threshold.ball(opt.prec));
    cert.note = note;
    cert.status = CertStatus::Ok;
  };

  if (k == 1) {
    cert.l = 0;
    cert.d_x = RealBall::one(opt.prec);
    cert.sum_g = RealBall::one(opt.prec);
    cert.sum_h = RealBall::one(opt.prec);
    cert.factors[0].g_exp = RealBall::one(opt.prec);
    cert.factors[0].h_exp = RealBall::one(opt.prec);
    finish_with(0, "irreducible input: Q = P with C = 1");
    return cert;
  }

  // bounded block (the proof's l factors of absolutely bounded height)
  cert.d_x = RealBall::one(opt.prec);
  for (auto& e : cert.factors) {
    bool bounded = (opt.mode == HeightKind::Naive)
                       ? (e.height <= opt.bounded_threshold)
                       : (e.mahler.hi_q() <= mpq_class(opt.bounded_threshold));
    e.bounded = bounded;
    if (bounded) {
      ++cert.l;
      cert.h_x *= e.height;
      cert.d_x = cert.d_x * e.value;
    }
  }

  std::vector<size_t> unbounded;
  for (size_t i = 0; i < k; ++i)
    if (!cert.factors[i].bounded) unbounded.push_back(i);

  if (unbounded.empty()) {
    // every factor sits in the bounded block; no exponent machinery, pick
    // the factor with the smallest observed ratio
    size_t best = 0;
    double best_score = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < k; ++i) {
      const FactorEntry& e = cert.factors[i];
      Value hq = (opt.mode == HeightKind::Naive) ? Value(mpq_class(e.height)) : Value(e.mahler);
      Value th = psi_at(psi, hq, opt.prec);
      double score = e.value.hi_d() / std::max(th.lo_d(), 1e-300);
      if (score < best_score) {
        best_score = score;
        best = i;
      }
    }
    cert.sum_g = RealBall::zero(opt.prec);
    cert.sum_h = RealBall::zero(opt.prec);
    finish_with(best, "all factors below the bounded-height threshold; minimal observed ratio");
    return cert;
  }

  // R = product of unbounded factors; logs need |R(x)| < 1 certified
  RealBall r_val = RealBall::one(opt.prec);
  for (size_t i : unbounded) r_val = r_val * cert.factors[i].value;
  if (!(r_val.hi_q() < 1) || !r_val.surely_positive()) {
    // retry at the cap before giving up
    RealBall xb2 = x.enclosure(opt.prec_cap);
    r_val = RealBall::one(opt.prec_cap);
    for (size_t i : unbounded) r_val = r_val * cert.factors[i].q.eval_ball(xb2).abs();
    if (!(r_val.hi_q() < 1) || !r_val.surely_positive()) {
      cert.status = CertStatus::Undecided;
      cert.note = "|R(x)| not certified inside (0, 1); logarithmic profiles ill-conditioned";
      return cert;
    }
  }
  RealBall log_r = r_val.log();  // negative

  // g_i = log|R_i(x)| / log|R(x)|
  RealBall sum_g = RealBall::zero(opt.prec);
  for (size_t i : unbounded) {
    FactorEntry& e = cert.factors[i];
    if (!e.value.surely_positive()) {
      cert.status = CertStatus::Undecided;
      cert.note = "a factor value could not be separated from 0";
      return cert;
    }
    e.g_exp = e.value.log().div(log_r);
    sum_g = sum_g + e.g_exp;
  }
  cert.sum_g = sum_g;

  // raw height exponents
  // naive: h_i = log H_i / log(c^2 H), c = 2^n, then normalized to sum 1;
  // mahler: h_i = log M_i / log M_R, which sums to 1 exactly.
  std::vector<RealBall> h_raw;
  RealBall denom(opt.prec);
  if (opt.mode == HeightKind::Naive) {
    mpz_class c2h = (mpz_class(1) << static_cast<unsigned>(2 * n)) * cert.primitive.height();
    denom = RealBall::from_z(c2h, opt.prec).log();
  } else {
    RealBall m_r = RealBall::one(opt.prec);
    for (size_t i : unbounded) m_r = m_r * cert.factors[i].mahler;
    if (!(m_r.lo_q() > 1)) {
      // M_R = 1 exactly is possible only when every unbounded factor has
      // measure 1; treat as the degenerate equal split below
      denom = RealBall::zero(opt.prec);
    } else {
      denom = m_r.log();
    }
  }

  bool denom_usable = denom.surely_positive();
  mpq_class sum_raw_hi(0);
  std::vector<bool> h_zero(unbounded.size(), false);
  for (size_t idx = 0; idx < unbounded.size(); ++idx) {
    const FactorEntry& e = cert.factors[unbounded[idx]];
    RealBall num(opt.prec);
    bool zero = false;
    if (opt.mode == HeightKind::Naive) {
      if (e.height <= 1) zero = true;
      else num = RealBall::from_z(e.height, opt.prec).log();
    } else {
      if (!(e.mahler.lo_q() > 1)) zero = true;  // measure 1 factor
      else num = e.mahler.log();
    }
    h_zero[idx] = zero;
    if (!zero && denom_usable) {
      h_raw.push_back(num.div(denom));
      sum_raw_hi += h_raw.back().hi_q();
    } else {
      h_raw.push_back(RealBall::zero(opt.prec));
    }
  }

  // normalize so the exponents sum to 1 (raising exponents keeps the
  // upper bounds H_i <= (c^2 H)^{h_i} valid since the base exceeds 1)
  RealBall sum_h = RealBall::zero(opt.prec);
  bool all_zero = true;
  for (size_t idx = 0; idx < unbounded.size(); ++idx)
    if (!h_zero[idx]) all_zero = false;
  if (all_zero || !denom_usable) {
    mpq_class share(1, static_cast<unsigned long>(unbounded.size()));
    for (size_t idx = 0; idx < unbounded.size(); ++idx) {
      cert.factors[unbounded[idx]].h_exp = RealBall::from_q(share, opt.prec);
      sum_h = sum_h + cert.factors[unbounded[idx]].h_exp;
    }
  } else {
    RealBall raw_sum = RealBall::zero(opt.prec);
    for (const auto& h : h_raw) raw_sum = raw_sum + h;
    if (!raw_sum.surely_positive()) {
      cert.status = CertStatus::Undecided;
      cert.note = "height exponents could not be certified positive";
      return cert;
    }
    for (size_t idx = 0; idx < unbounded.size(); ++idx) {
      cert.factors[unbounded[idx]].h_exp = h_raw[idx].div(raw_sum);
      sum_h = sum_h + cert.factors[unbounded[idx]].h_exp;
    }
  }
  cert.sum_h = sum_h;

  // pigeonhole selection: maximize g_i / h_i (h = 0 counts as +infinity)
  int best = -1;
  double best_score = -std::numeric_limits<double>::infinity();
  for (size_t idx = 0; idx < unbounded.size(); ++idx) {
    const FactorEntry& e = cert.factors[unbounded[idx]];
    double h_mid = e.h_exp.mid_d();
    double g_mid = e.g_exp.mid_d();
    double score = (h_mid <= 1e-300) ? std::numeric_limits<double>::infinity() : g_mid / h_mid;
    if (score > best_score) {
      best_score = score;
      best = static_cast<int>(unbounded[idx]);
    }
  }
  finish_with(static_cast<size_t>(best), "pigeonhole selection over the unbounded block");
  return cert;
}

std::optional<ExponentProfile> exponent_profile(const IntPolynomial& p, const pts::RealPoint& x,
                                                const mpz_class& bounded_threshold,
                                                mpfr_prec_t prec) {
  IntPolynomial prim = p.primitive_part().second.sign_canonical();
  poly::Factorization fac = poly::factor(prim);
  size_t k = fac.total_irreducible_count();
  if (k < 1) throw DomainError("exponent_profile: nonconstant polynomial required");

  RealBall xb = x.enclosure(prec);
  std::vector<RealBall> values;
  std::vector<mpz_class> heights;
  for (const auto& fp : fac.factors)
    for (unsigned m = 0; m < fp.multiplicity; ++m) {
      values.push_back(fp.poly.eval_ball(xb).abs());
      heights.push_back(fp.poly.height());
    }

  std::vector<size_t> unbounded;
  for (size_t i = 0; i < values.size(); ++i)
    if (heights[i] > bounded_threshold) unbounded.push_back(i);
  if (unbounded.empty()) throw DomainError("exponent_profile: no unbounded factor");

  RealBall r_val = RealBall::one(prec);
  for (size_t i : unbounded) r_val = r_val * values[i];
  if (!(r_val.hi_q() < 1) || !r_val.surely_positive()) return std::nullopt;
  RealBall log_r = r_val.log();

  ExponentProfile prof;
  const int n = prim.degree();
  mpz_class c2h = (mpz_class(1) << static_cast<unsigned>(2 * n)) * prim.height();
  RealBall denom = RealBall::from_z(c2h, prec).log();
  std::vector<RealBall> raw;
  RealBall raw_sum = RealBall::zero(prec);
  for (size_t i : unbounded) {
    if (!values[i].surely_positive()) return std::nullopt;
    prof.g.push_back(values[i].log().div(log_r));
    RealBall h = (heights[i] <= 1) ? RealBall::zero(prec)
                                   : RealBall::from_z(heights[i], prec).log().div(denom);
    raw.push_back(h);
    raw_sum = raw_sum + h;
  }
  if (raw_sum.surely_positive()) {
    for (auto& h : raw) prof.h.push_back(h.div(raw_sum));
  } else {
    mpq_class share(1, static_cast<unsigned long>(unbounded.size()));
    for (size_t i = 0; i < raw.size(); ++i)
      prof.h.push_back(RealBall::from_q(share, prec));
  }
  return prof;
}

Json Gl22Report::to_json() const {
  Json es = Json::array();
  for (const auto& e : entries)
    es.push_back(Json{{"poly", poly::poly_to_json(e.q)},
                      {"factor_height", e.factor_height.get_str()},
                      {"cofactor_height", e.cofactor_height.get_str()},
                      {"height_exceeds", e.height_exceeds},
                      {"cofactor_within_bound", e.cofactor_within_bound}});
  return Json{{"input_height", input_height.get_str()},
              {"bound_sq", bound_sq.get_str()},
              {"entries", es},
              {"triggered", triggered}};
}

Gl22Report check_gl22(const IntPolynomial& p) {
  if (p.is_zero() || p.degree() < 1) throw DomainError("check_gl22: nonconstant required");
  if (p.degree() > poly::kMaxFactorDegree) throw UnsupportedDegree("check_gl22: degree > 8");
  Gl22Report rep;
  const int n = p.degree();
  rep.input_height = p.height();
  mpz_class b = poly::binomial(static_cast<unsigned>(n), static_cast<unsigned>(n) / 2);
  rep.bound_sq = mpq_class(b * b * (n + 1));
  IntPolynomial prim = p.primitive_part().second.sign_canonical();
  poly::Factorization fac = poly::factor(prim);
  if (fac.is_irreducible()) return rep;  // vacuous: no proper factor
  for (const auto& fp : fac.factors) {
    Gl22Entry e;
    e.q = fp.poly;
    e.factor_height = fp.poly.height();
    auto cof = poly::divide_exact(prim, fp.poly);
    if (!cof) throw InternalError("check_gl22: factor does not divide");
    e.cofactor_height = cof->height();
    e.height_exceeds = e.factor_height > rep.input_height;
    e.cofactor_within_bound =
        mpq_class(e.cofactor_height * e.cofactor_height) <= rep.bound_sq;
    if (e.height_exceeds && e.cofactor_within_bound) rep.triggered = true;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace dioph::extract
