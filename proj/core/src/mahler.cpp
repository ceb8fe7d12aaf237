#include "dioph/mahler.hpp"

#include <algorithm>

#include "dioph/factor.hpp"
#include "dioph/roots.hpp"

namespace dioph::poly {

using arith::RealBall;
using arith::Verdict3;

mpz_class binomial(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

namespace {

// max(1, b) for a nonnegative ball.
RealBall max1(const RealBall& b) {
  mpq_class lo = b.lo_q(), hi = b.hi_q();
  if (lo < 1) lo = 1;
  if (hi < 1) hi = 1;
  return RealBall::from_q_interval(lo, hi, b.prec());
}

// Exact measure for an irreducible factor when available.
std::optional<mpq_class> exact_factor_measure(const IntPolynomial& q) {
  if (q.degree() == 1) {
    mpz_class a = ::abs(q.coeff(1)), b = ::abs(q.coeff(0));
    return mpq_class(std::max(a, b));
  }
  if (q.degree() == 2) {
    mpz_class d = q.coeff(1) * q.coeff(1) - 4 * q.coeff(2) * q.coeff(0);
    if (d < 0) {
      // conjugate pair of modulus sqrt(a0/a2): M = max(|a2|, |a0|)
      mpz_class a = ::abs(q.coeff(2)), b = ::abs(q.coeff(0));
      return mpq_class(std::max(a, b));
    }
  }
  return std::nullopt;
}

// Enclosure of the measure of one irreducible factor.
MahlerResult factor_measure(const IntPolynomial& q, mpfr_prec_t prec, mpfr_prec_t cap) {
  if (auto ex = exact_factor_measure(q))
    return {true, RealBall::from_q(*ex, prec)};
  auto roots = certified_roots(q, prec, cap);
  if (!roots) {
    // trivial sandwich fallback, reported as Undecided
    int d = q.degree();
    mpq_class lo = mpq_class(q.height()) / mpq_class(binomial(static_cast<unsigned>(d),
                                                              static_cast<unsigned>(d) / 2));
    RealBall hi = RealBall::from_z(q.height(), prec) *
                  RealBall::from_si(d + 1, prec).sqrt();
    return {false, RealBall::from_q_interval(lo, hi.hi_q(), prec)};
  }
  RealBall m = RealBall::from_z(::abs(q.leading()), prec);
  for (const auto& r : *roots) m = m * max1(r.modulus);
  return {true, m};
}

}  // namespace

MahlerResult mahler_measure(const IntPolynomial& p, mpfr_prec_t precision, mpfr_prec_t prec_cap) {
  if (p.is_zero()) throw DomainError("mahler_measure: zero polynomial");
  if (p.degree() == 0) return {true, RealBall::from_z(::abs(p.coeff(0)), precision)};

  Factorization fac = factor(p);
  for (mpfr_prec_t prec = std::max<mpfr_prec_t>(precision, 64); prec <= prec_cap; prec *= 2) {
    RealBall acc = RealBall::from_z(fac.content, prec);
    bool all_certified = true;
    for (const auto& fp : fac.factors) {
      MahlerResult fm = factor_measure(fp.poly, prec, prec_cap);
      all_certified = all_certified && fm.certified;
      acc = acc * fm.value.pow_ui(fp.multiplicity);
    }
    // relative width target: width <= 2^(-precision/2) * center
    mpq_class width = acc.width_q();
    mpq_class scale = acc.lo_q();
    bool tight = scale > 0 && width * arith::q_pow_si(mpq_class(2), static_cast<long>(precision / 2)) <= scale;
    if (all_certified && tight) return {true, acc};
    if (!all_certified || prec * 2 > prec_cap) return {all_certified && tight, acc};
  }
  throw InternalError("mahler_measure: unreachable");
}

GelfondReport gelfond_ratio(const std::vector<IntPolynomial>& parts) {
  if (parts.empty()) throw DomainError("gelfond_ratio: empty part list");
  GelfondReport rep;
  IntPolynomial prod = IntPolynomial::constant(1);
  rep.heights_product = 1;
  for (const auto& p : parts) {
    if (p.is_zero()) throw DomainError("gelfond_ratio: zero part");
    prod = prod * p;
    rep.heights_product *= p.height();
  }
  rep.n = prod.degree();
  if (rep.n > kMaxFactorDegree) throw UnsupportedDegree("gelfond_ratio: product degree > 8");
  rep.product_height = prod.height();
  rep.ratio = mpq_class(rep.product_height) / mpq_class(rep.heights_product);
  mpq_class lower = arith::q_pow_si(mpq_class(2), -rep.n);
  rep.lower_ok = rep.ratio >= lower;
  rep.upper_ok = rep.ratio <= mpq_class(rep.n + 1);
  return rep;
}

SandwichReport mahler_height_sandwich(const IntPolynomial& p, mpfr_prec_t precision) {
  if (p.is_zero() || p.degree() < 1)
    throw DomainError("mahler_height_sandwich: need degree >= 1");
  SandwichReport rep;
  int d = p.degree();
  mpz_class h = p.height();
  rep.lower = mpq_class(h) / mpq_class(binomial(static_cast<unsigned>(d), static_cast<unsigned>(d) / 2));
  rep.upper_sq = mpq_class(d + 1) * mpq_class(h) * mpq_class(h);
  rep.mahler = mahler_measure(p, precision);
  if (!rep.mahler.certified) {
    rep.pass = Verdict3::Unknown;
    return rep;
  }
  // lower <= M: certified on the enclosure's lower endpoint;
  // M <= sqrt(d+1) H: compared exactly on squares of the dyadic endpoint.
  mpq_class mlo = rep.mahler.value.lo_q();
  mpq_class mhi = rep.mahler.value.hi_q();
  bool low_ok = mlo >= rep.lower;
  bool up_ok = mhi * mhi <= rep.upper_sq;
  if (low_ok && up_ok) {
    rep.pass = Verdict3::True;
  } else {
    // falsified only if the enclosure lies strictly outside a bound
    bool low_bad = mhi < rep.lower;
    bool up_bad = mlo > 0 && mlo * mlo > rep.upper_sq;
    rep.pass = (low_bad || up_bad) ? Verdict3::False : Verdict3::Unknown;
  }
  return rep;
}

}  // namespace dioph::poly
