#include "dioph/roots.hpp"

#include <algorithm>
#include <cmath>

namespace dioph::poly {

using arith::RealBall;

namespace {

// Point complex number at a fixed precision, round-to-nearest ops.
struct CP {
  mpfr_t re, im;
  explicit CP(mpfr_prec_t p) {
    mpfr_init2(re, p);
    mpfr_init2(im, p);
    mpfr_set_zero(re, 1);
    mpfr_set_zero(im, 1);
  }
  CP(const CP&) = delete;
  CP& operator=(const CP&) = delete;
  CP(CP&& o) noexcept {
    mpfr_init2(re, mpfr_get_prec(o.re));
    mpfr_init2(im, mpfr_get_prec(o.im));
    mpfr_swap(re, o.re);
    mpfr_swap(im, o.im);
  }
  CP& operator=(CP&&) = delete;
  ~CP() {
    mpfr_clear(re);
    mpfr_clear(im);
  }
};

struct CWork {
  mpfr_prec_t prec;
  mpfr_t t1, t2, t3, t4;
  explicit CWork(mpfr_prec_t p) : prec(p) {
    mpfr_inits2(p, t1, t2, t3, t4, static_cast<mpfr_ptr>(nullptr));
  }
  ~CWork() { mpfr_clears(t1, t2, t3, t4, static_cast<mpfr_ptr>(nullptr)); }
};

void cmul(CP& r, const CP& a, const CP& b, CWork& w) {
  // (a.re*b.re - a.im*b.im, a.re*b.im + a.im*b.re)
  mpfr_mul(w.t1, a.re, b.re, MPFR_RNDN);
  mpfr_mul(w.t2, a.im, b.im, MPFR_RNDN);
  mpfr_mul(w.t3, a.re, b.im, MPFR_RNDN);
  mpfr_mul(w.t4, a.im, b.re, MPFR_RNDN);
  mpfr_sub(r.re, w.t1, w.t2, MPFR_RNDN);
  mpfr_add(r.im, w.t3, w.t4, MPFR_RNDN);
}

void cdiv(CP& r, const CP& a, const CP& b, CWork& w) {
  // a / b = a * conj(b) / |b|^2
  mpfr_mul(w.t1, b.re, b.re, MPFR_RNDN);
  mpfr_mul(w.t2, b.im, b.im, MPFR_RNDN);
  mpfr_add(w.t1, w.t1, w.t2, MPFR_RNDN);  // |b|^2
  mpfr_mul(w.t2, a.re, b.re, MPFR_RNDN);
  mpfr_mul(w.t3, a.im, b.im, MPFR_RNDN);
  mpfr_add(w.t2, w.t2, w.t3, MPFR_RNDN);
  mpfr_mul(w.t3, a.im, b.re, MPFR_RNDN);
  mpfr_mul(w.t4, a.re, b.im, MPFR_RNDN);
  mpfr_sub(w.t3, w.t3, w.t4, MPFR_RNDN);
  mpfr_div(r.re, w.t2, w.t1, MPFR_RNDN);
  mpfr_div(r.im, w.t3, w.t1, MPFR_RNDN);
}

void csub(CP& r, const CP& a, const CP& b) {
  mpfr_sub(r.re, a.re, b.re, MPFR_RNDN);
  mpfr_sub(r.im, a.im, b.im, MPFR_RNDN);
}

// Horner evaluation of p at point z.
void ceval(CP& r, const IntPolynomial& p, const CP& z, CWork& w) {
  mpfr_set_zero(r.re, 1);
  mpfr_set_zero(r.im, 1);
  const auto& c = p.coeffs();
  CP tmp(w.prec);
  for (size_t i = c.size(); i-- > 0;) {
    cmul(tmp, r, z, w);
    mpfr_add_z(r.re, tmp.re, c[i].get_mpz_t(), MPFR_RNDN);
    mpfr_set(r.im, tmp.im, MPFR_RNDN);
  }
}

double cabs_d(const CP& z) {
  double a = mpfr_get_d(z.re, MPFR_RNDN);
  double b = mpfr_get_d(z.im, MPFR_RNDN);
  return std::hypot(a, b);
}

// Complex ball built from exact dyadic point coordinates.
struct CBall {
  RealBall re, im;
};

CBall cball_point(const CP& z, mpfr_prec_t prec) {
  CBall b{RealBall(prec), RealBall(prec)};
  mpfr_set(b.re.lo_raw(), z.re, MPFR_RNDD);
  mpfr_set(b.re.hi_raw(), z.re, MPFR_RNDU);
  mpfr_set(b.im.lo_raw(), z.im, MPFR_RNDD);
  mpfr_set(b.im.hi_raw(), z.im, MPFR_RNDU);
  return b;
}

CBall cball_mul(const CBall& a, const CBall& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

CBall cball_sub(const CBall& a, const CBall& b) { return {a.re - b.re, a.im - b.im}; }

RealBall cball_abs(const CBall& a) {
  RealBall m = a.re.abs() * a.re.abs() + a.im.abs() * a.im.abs();
  return m.sqrt();
}

CBall cball_eval(const IntPolynomial& p, const CBall& z, mpfr_prec_t prec) {
  CBall acc{RealBall::zero(prec), RealBall::zero(prec)};
  const auto& c = p.coeffs();
  for (size_t i = c.size(); i-- > 0;) {
    acc = cball_mul(acc, z);
    acc.re = acc.re + RealBall::from_z(c[i], prec);
  }
  return acc;
}

}  // namespace

std::optional<std::vector<CertifiedRoot>> certified_roots(const IntPolynomial& p,
                                                          mpfr_prec_t start_prec,
                                                          mpfr_prec_t prec_cap) {
  const int n = p.degree();
  if (n < 1) throw DomainError("certified_roots: degree >= 1 required");

  // Cauchy bound 1 + H/|lc| on all root moduli.
  mpq_class bound_q = 1 + mpq_class(p.height()) / mpq_class(::abs(p.leading()));
  double bound = bound_q.get_d() * 1.001;

  std::vector<double> init_re(static_cast<size_t>(n)), init_im(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    double ang = 2.0 * M_PI * (static_cast<double>(i) + 0.25) / n + 0.7;
    double rad = bound * (0.3 + 0.65 * (static_cast<double>(i) + 1) / n);
    init_re[static_cast<size_t>(i)] = rad * std::cos(ang);
    init_im[static_cast<size_t>(i)] = rad * std::sin(ang);
  }

  for (mpfr_prec_t prec = start_prec; prec <= prec_cap; prec *= 2) {
    CWork w(prec);
    std::vector<CP> z;
    z.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      z.emplace_back(prec);
      mpfr_set_d(z.back().re, init_re[static_cast<size_t>(i)], MPFR_RNDN);
      mpfr_set_d(z.back().im, init_im[static_cast<size_t>(i)], MPFR_RNDN);
    }

    // Weierstrass iteration: z_i <- z_i - P(z_i) / (lc * prod(z_i - z_j)).
    CP val(prec), den(prec), diff(prec), corr(prec);
    const long iter_cap = 60 + 8L * prec;
    double target = std::ldexp(1.0, static_cast<int>(-std::min<mpfr_prec_t>(prec - 8, 1000)));
    for (long it = 0; it < iter_cap; ++it) {
      double worst = 0.0;
      for (int i = 0; i < n; ++i) {
        ceval(val, p, z[static_cast<size_t>(i)], w);
        mpfr_set_z(den.re, p.leading().get_mpz_t(), MPFR_RNDN);
        mpfr_set_zero(den.im, 1);
        for (int j = 0; j < n; ++j) {
          if (j == i) continue;
          csub(diff, z[static_cast<size_t>(i)], z[static_cast<size_t>(j)]);
          CP tmp(prec);
          cmul(tmp, den, diff, w);
          mpfr_swap(den.re, tmp.re);
          mpfr_swap(den.im, tmp.im);
        }
        if (mpfr_zero_p(den.re) && mpfr_zero_p(den.im)) {
          // collided approximations; nudge and restart this sweep
          mpfr_add_d(z[static_cast<size_t>(i)].re, z[static_cast<size_t>(i)].re, 1e-3, MPFR_RNDN);
          continue;
        }
        cdiv(corr, val, den, w);
        mpfr_sub(z[static_cast<size_t>(i)].re, z[static_cast<size_t>(i)].re, corr.re, MPFR_RNDN);
        mpfr_sub(z[static_cast<size_t>(i)].im, z[static_cast<size_t>(i)].im, corr.im, MPFR_RNDN);
        double c = cabs_d(corr) / std::max(1.0, cabs_d(z[static_cast<size_t>(i)]));
        worst = std::max(worst, c);
      }
      if (worst < target) break;
    }

    // Certification pass in ball arithmetic over the exact dyadic z_i.
    std::vector<CBall> zb;
    zb.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) zb.push_back(cball_point(z[static_cast<size_t>(i)], prec));

    std::vector<RealBall> radius;
    radius.reserve(static_cast<size_t>(n));
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      CBall num = cball_eval(p, zb[static_cast<size_t>(i)], prec);
      CBall den_b{RealBall::from_z(p.leading(), prec), RealBall::zero(prec)};
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        den_b = cball_mul(den_b, cball_sub(zb[static_cast<size_t>(i)], zb[static_cast<size_t>(j)]));
      }
      RealBall dabs = cball_abs(den_b);
      if (!dabs.surely_positive()) { ok = false; break; }
      RealBall wabs = cball_abs(num).div(dabs);
      // radius n*|W_i|, inflated so the inclusion argument stays strict
      RealBall r = wabs * RealBall::from_q(mpq_class(n) * mpq_class(257, 256), prec);
      radius.push_back(r);
    }
    if (ok) {
      for (int i = 0; i < n && ok; ++i)
        for (int j = i + 1; j < n && ok; ++j) {
          RealBall dist = cball_abs(cball_sub(zb[static_cast<size_t>(i)], zb[static_cast<size_t>(j)]));
          RealBall sum = radius[static_cast<size_t>(i)] + radius[static_cast<size_t>(j)];
          if (dist.le(sum) != arith::Verdict3::False) ok = false;  // need dist > sum
        }
    }
    if (ok) {
      std::vector<CertifiedRoot> out;
      out.reserve(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) {
        const RealBall& r = radius[static_cast<size_t>(i)];
        CertifiedRoot cr{zb[static_cast<size_t>(i)].re + RealBall::from_q_interval(-r.hi_q(), r.hi_q(), prec),
                         zb[static_cast<size_t>(i)].im + RealBall::from_q_interval(-r.hi_q(), r.hi_q(), prec),
                         RealBall(prec)};
        RealBall center_abs = cball_abs(zb[static_cast<size_t>(i)]);
        RealBall lo = center_abs - r;
        RealBall hi = center_abs + r;
        mpq_class l = lo.lo_q();
        if (l < 0) l = 0;
        cr.modulus = RealBall::from_q_interval(l, hi.hi_q(), prec);
        out.push_back(std::move(cr));
      }
      return out;
    }

    // warm-start the next precision from the current approximations
    for (int i = 0; i < n; ++i) {
      init_re[static_cast<size_t>(i)] = mpfr_get_d(z[static_cast<size_t>(i)].re, MPFR_RNDN);
      init_im[static_cast<size_t>(i)] = mpfr_get_d(z[static_cast<size_t>(i)].im, MPFR_RNDN);
    }
  }
  return std::nullopt;
}

}  // namespace dioph::poly
