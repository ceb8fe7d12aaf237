#include "dioph/cf_number.hpp"

#include <algorithm>
#include <string>

namespace dioph::cex {

using arith::RealBall;

std::pair<mpq_class, mpq_class> CFNumber::bracket(size_t l) const {
  if (l + 1 >= p.size()) throw DomainError("CFNumber::bracket: level beyond depth");
  mpq_class u(p[l], q[l]), v(p[l + 1], q[l + 1]);
  if (u > v) std::swap(u, v);
  return {u, v};
}

RealBall CFNumber::enclosure(size_t level, mpfr_prec_t prec) const {
  auto [lo, hi] = bracket(level);
  // the endpoints must round without widening past the bracket itself
  size_t bits = mpz_sizeinbase(q[level].get_mpz_t(), 2) +
                mpz_sizeinbase(q[level + 1].get_mpz_t(), 2);
  mpfr_prec_t need = static_cast<mpfr_prec_t>(bits) + 64;
  return RealBall::from_q_interval(lo, hi, std::max(prec, need));
}

RealBall CFNumber::enclosure_width(const mpq_class& max_width, mpfr_prec_t prec) const {
  for (size_t l = 0; l + 1 < p.size(); ++l) {
    mpq_class width = mpq_class(1) / mpq_class(q[l] * q[l + 1]);
    if (width <= max_width) return enclosure(l, prec);
  }
  return enclosure(p.size() - 2, prec);
}

CFNumber build_cf_number(int n, const mpq_class& w, const mpz_class& a1, size_t depth) {
  if (n < 1) throw DomainError("build_cf_number: degree must be >= 1");
  if (w <= mpq_class(n) * (2 * n - 1))
    throw DomainError("build_cf_number: need w > n(2n-1)");
  if (a1 < 1) throw DomainError("build_cf_number: a1 must be positive");
  if (depth < 1) throw DomainError("build_cf_number: depth must be >= 1");

  CFNumber cf;
  cf.n = n;
  cf.w = w;
  cf.a.resize(depth + 1);
  cf.p.resize(depth + 1);
  cf.q.resize(depth + 1);
  cf.a[0] = 0;
  cf.p[0] = 0;
  cf.q[0] = 1;
  mpz_class pm1 = 1, qm1 = 0;  // p_{-1}, q_{-1}
  for (size_t l = 1; l <= depth; ++l) {
    cf.a[l] = (l == 1) ? a1 : arith::ceil_pow(cf.a[l - 1], w);
    cf.p[l] = cf.a[l] * cf.p[l - 1] + (l == 1 ? pm1 : cf.p[l - 2]);
    cf.q[l] = cf.a[l] * cf.q[l - 1] + (l == 1 ? qm1 : cf.q[l - 2]);
    if (cf.q[l] < n * cf.p[l])
      throw DomainError("build_cf_number: q_l >= n p_l violated at level " + std::to_string(l) +
                        " (increase a1)");
  }
  return cf;
}

namespace {

// conservative rational bounds of q^w
std::pair<mpq_class, mpq_class> pow_bounds(const mpz_class& base, const mpq_class& w) {
  arith::Value v = arith::rational_pow(mpq_class(base), w, 192);
  if (v.is_exact()) return {v.exact(), v.exact()};
  RealBall b = v.ball();
  return {b.lo_q(), b.hi_q()};
}

}  // namespace

CFGrowthWindow growth_window(const CFNumber& cf) {
  CFGrowthWindow win;
  bool first = true;
  for (size_t l = 1; l < cf.q.size(); ++l) {
    auto [plo, phi] = pow_bounds(cf.q[l - 1], cf.w);
    // c1 < q_l / q_{l-1}^w < c2
    mpq_class lo = mpq_class(cf.q[l]) / phi;
    mpq_class hi = mpq_class(cf.q[l]) / plo;
    if (first || lo < win.c1) win.c1 = lo;
    if (first || hi > win.c2) win.c2 = hi;
    first = false;
  }
  win.c1 *= mpq_class(255, 256);
  win.c2 *= mpq_class(257, 256);
  return win;
}

CFValueWindow value_window(const CFNumber& cf) {
  if (cf.depth() < 2) throw DomainError("value_window: depth >= 2 required");
  CFValueWindow win;
  bool first = true;
  for (size_t l = 1; l + 1 < cf.q.size(); ++l) {
    auto [plo, phi] = pow_bounds(cf.q[l], cf.w);
    // |R_l(x)| in (1/(q_l+q_{l+1}), 1/q_{l+1}); scale by q_l^w
    mpq_class lo = plo / mpq_class(cf.q[l] + cf.q[l + 1]);
    mpq_class hi = phi / mpq_class(cf.q[l + 1]);
    if (first || lo < win.c3) win.c3 = lo;
    if (first || hi > win.c4) win.c4 = hi;
    first = false;
  }
  win.c3 *= mpq_class(255, 256);
  win.c4 *= mpq_class(257, 256);
  return win;
}

std::pair<poly::IntPolynomial, poly::IntPolynomial> convergent_poly(const CFNumber& cf, size_t l,
                                                                    int n) {
  if (l >= cf.q.size()) throw DomainError("convergent_poly: level beyond depth");
  poly::IntPolynomial rl = poly::IntPolynomial::linear(-cf.p[l], cf.q[l]);
  poly::IntPolynomial rln = rl.pow(static_cast<unsigned>(n));
  mpz_class expect;
  mpz_pow_ui(expect.get_mpz_t(), cf.q[l].get_mpz_t(), static_cast<unsigned long>(n));
  if (rln.height() != expect)
    throw DomainError("convergent_poly: H(R_l^n) != q_l^n (q_l >= n p_l violated)");
  return {rl, rln};
}

}  // namespace dioph::cex
