#include "dioph/int_polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace dioph::poly {

using arith::DIntv;
using arith::RealBall;

mpz_class IntPolynomial::height() const {
  if (is_zero()) throw DomainError("height of zero polynomial");
  mpz_class h = 0;
  for (const auto& a : c_) {
    mpz_class v = ::abs(a);
    if (v > h) h = v;
  }
  return h;
}

mpz_class IntPolynomial::height_excluding_constant() const {
  if (degree() < 1) throw DomainError("||q|| height needs degree >= 1");
  mpz_class h = 0;
  for (size_t i = 1; i < c_.size(); ++i) {
    mpz_class v = ::abs(c_[i]);
    if (v > h) h = v;
  }
  return h;
}

mpz_class IntPolynomial::content() const {
  if (is_zero()) throw DomainError("content of zero polynomial");
  mpz_class g = 0;
  for (const auto& a : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
  return g;
}

std::pair<mpz_class, IntPolynomial> IntPolynomial::primitive_part() const {
  mpz_class g = content();
  std::vector<mpz_class> q(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) q[i] = c_[i] / g;
  return {g, IntPolynomial(std::move(q))};
}

IntPolynomial IntPolynomial::derivative() const {
  if (degree() < 1) return IntPolynomial();
  std::vector<mpz_class> d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return IntPolynomial(std::move(d));
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
  std::vector<mpz_class> r(std::max(c_.size(), o.c_.size()), mpz_class(0));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const { return *this + (-o); }

IntPolynomial IntPolynomial::operator-() const {
  std::vector<mpz_class> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
  if (is_zero() || o.is_zero()) return IntPolynomial();
  std::vector<mpz_class> r(c_.size() + o.c_.size() - 1, mpz_class(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::mul_scalar(const mpz_class& s) const {
  std::vector<mpz_class> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * s;
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::mul_xpow(unsigned k) const {
  if (is_zero() || k == 0) return *this;
  std::vector<mpz_class> r(c_.size() + k, mpz_class(0));
  for (size_t i = 0; i < c_.size(); ++i) r[i + k] = c_[i];
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::pow(unsigned e) const {
  IntPolynomial acc = IntPolynomial::constant(1);
  IntPolynomial b = *this;
  while (e > 0) {
    if (e & 1) acc = acc * b;
    b = b * b;
    e >>= 1;
  }
  return acc;
}

mpq_class IntPolynomial::eval_q(const mpq_class& x) const {
  mpq_class acc = 0;
  for (size_t i = c_.size(); i-- > 0;) {
    acc = acc * x + mpq_class(c_[i]);
  }
  return acc;
}

mpz_class IntPolynomial::eval_z(const mpz_class& x) const {
  mpz_class acc = 0;
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

RealBall IntPolynomial::eval_ball(const RealBall& x) const {
  RealBall acc = RealBall::zero(x.prec());
  for (size_t i = c_.size(); i-- > 0;) {
    acc = acc * x + RealBall::from_z(c_[i], x.prec());
  }
  return acc;
}

DIntv IntPolynomial::eval_dintv(const DIntv& x) const {
  DIntv acc{0.0, 0.0};
  for (size_t i = c_.size(); i-- > 0;) {
    double d = c_[i].get_d();
    acc = acc * x + DIntv{arith::DIntv::point(d).lo, arith::DIntv::point(d).hi};
    // coefficient conversion can itself round for >53-bit values
    if (!c_[i].fits_slong_p()) {
      acc.lo = std::nextafter(acc.lo, -1e300);
      acc.hi = std::nextafter(acc.hi, 1e300);
    }
  }
  return acc;
}

IntPolynomial IntPolynomial::sign_canonical() const {
  if (is_zero() || leading() > 0) return *this;
  return -*this;
}

bool IntPolynomial::canon_less(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (size_t i = 0; i < a.c_.size(); ++i) {
    int c = cmp(a.c_[i], b.c_[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

std::string IntPolynomial::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    mpz_class a = c_[i];
    if (first) {
      if (a < 0) os << "-";
    } else {
      os << (a < 0 ? " - " : " + ");
    }
    mpz_class v = ::abs(a);
    if (v != 1 || i == 0) os << v.get_str();
    if (i >= 1) {
      os << "t";
      if (i >= 2) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

/* ------------------------- division and gcd ------------------------ */

std::optional<IntPolynomial> divide_exact(const IntPolynomial& num, const IntPolynomial& den) {
  if (den.is_zero()) throw DomainError("divide_exact by zero polynomial");
  if (num.is_zero()) return IntPolynomial();
  if (num.degree() < den.degree()) return std::nullopt;
  std::vector<mpz_class> rem = num.coeffs();
  int dn = den.degree();
  std::vector<mpz_class> quot(num.degree() - dn + 1, mpz_class(0));
  const mpz_class& lead = den.leading();
  for (int k = static_cast<int>(quot.size()) - 1; k >= 0; --k) {
    mpz_class& top = rem[k + dn];
    if (top == 0) continue;
    mpz_class q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), top.get_mpz_t(), lead.get_mpz_t());
    if (r != 0) return std::nullopt;
    quot[k] = q;
    for (int i = 0; i <= dn; ++i) rem[k + i] -= q * den.coeff(i);
  }
  for (const auto& c : rem)
    if (c != 0) return std::nullopt;
  return IntPolynomial(std::move(quot));
}

// Pseudo-remainder: lc(b)^(da-db+1) * a = q*b + r.
static IntPolynomial pseudo_rem(const IntPolynomial& a, const IntPolynomial& b) {
  IntPolynomial r = a;
  int db = b.degree();
  const mpz_class& lb = b.leading();
  while (!r.is_zero() && r.degree() >= db) {
    int k = r.degree() - db;
    mpz_class lr = r.leading();
    std::vector<mpz_class> nc(r.coeffs());
    for (auto& c : nc) c *= lb;
    IntPolynomial scaled(std::move(nc));
    IntPolynomial sub = b.mul_scalar(lr).mul_xpow(static_cast<unsigned>(k));
    r = scaled - sub;
  }
  return r;
}

IntPolynomial poly_gcd(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() && b.is_zero()) return IntPolynomial();
  if (a.is_zero()) return b.primitive_part().second.sign_canonical();
  if (b.is_zero()) return a.primitive_part().second.sign_canonical();
  IntPolynomial r0 = a.primitive_part().second;
  IntPolynomial r1 = b.primitive_part().second;
  if (r0.degree() < r1.degree()) std::swap(r0, r1);
  while (!r1.is_zero()) {
    IntPolynomial r2 = pseudo_rem(r0, r1);
    if (!r2.is_zero()) r2 = r2.primitive_part().second;
    r0 = r1;
    r1 = r2;
  }
  return r0.sign_canonical();
}

/* -------------------- resultant and discriminant ------------------- */

// Bareiss fraction-free determinant; rows indexed over the Sylvester
// matrix of (a, b). Exact over Z.
mpz_class resultant(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return mpz_class(0);
  int m = a.degree(), n = b.degree();
  if (m == 0) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), a.coeff(0).get_mpz_t(), static_cast<unsigned long>(n));
    return r;
  }
  if (n == 0) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.coeff(0).get_mpz_t(), static_cast<unsigned long>(m));
    return r;
  }
  int size = m + n;
  std::vector<std::vector<mpz_class>> mat(size, std::vector<mpz_class>(size, mpz_class(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) mat[i][i + j] = a.coeff(static_cast<size_t>(m - j));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) mat[n + i][i + j] = b.coeff(static_cast<size_t>(n - j));

  mpz_class prev(1);
  int sign = 1;
  for (int k = 0; k < size - 1; ++k) {
    if (mat[k][k] == 0) {
      int piv = -1;
      for (int i = k + 1; i < size; ++i)
        if (mat[i][k] != 0) { piv = i; break; }
      if (piv < 0) return mpz_class(0);
      std::swap(mat[k], mat[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < size; ++i) {
      for (int j = k + 1; j < size; ++j) {
        mpz_class num = mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j];
        mpz_divexact(mat[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      mat[i][k] = 0;
    }
    prev = mat[k][k];
  }
  return sign > 0 ? mat[size - 1][size - 1] : mpz_class(-mat[size - 1][size - 1]);
}

mpz_class discriminant(const IntPolynomial& p) {
  int n = p.degree();
  if (n < 1) throw DomainError("discriminant needs degree >= 1");
  if (n == 1) return mpz_class(1);
  mpz_class res = resultant(p, p.derivative());
  mpz_class d;
  mpz_divexact(d.get_mpz_t(), res.get_mpz_t(), p.leading().get_mpz_t());
  int sign = ((static_cast<long>(n) * (n - 1) / 2) % 2 == 0) ? 1 : -1;
  return sign > 0 ? d : mpz_class(-d);
}

bool in_discriminant_class(const IntPolynomial& p, int n, const mpq_class& lambda) {
  if (p.degree() < 1 || p.degree() > n) return false;
  mpz_class d = ::abs(discriminant(p));
  mpz_class h = p.height();
  // |D(P)| <= H_P^{2(n-1-lambda)}  <=>  |D|^den <= H^{2((n-1)den - num)}
  mpq_class e = 2 * (mpq_class(n - 1) - lambda);
  if (e < 0) return d <= 1 && e >= 0;  // degenerate exponent; only H^0 = 1 passes
  unsigned long den = static_cast<unsigned long>(e.get_den().get_ui());
  unsigned long num = static_cast<unsigned long>(e.get_num().get_ui());
  mpz_class lhs, rhs;
  mpz_pow_ui(lhs.get_mpz_t(), d.get_mpz_t(), den);
  mpz_pow_ui(rhs.get_mpz_t(), h.get_mpz_t(), num);
  return lhs <= rhs;
}

/* ------------------------------ JSON ------------------------------- */

Json poly_to_json(const IntPolynomial& p) {
  Json arr = Json::array();
  for (const auto& c : p.coeffs()) arr.push_back(c.get_str());
  return Json{{"coeffs", arr}};
}

IntPolynomial poly_from_json(const Json& j) {
  if (!j.contains("coeffs") || !j["coeffs"].is_array())
    throw ConfigError("polynomial JSON must be {\"coeffs\": [...decimal strings...]}");
  std::vector<mpz_class> c;
  for (const auto& e : j["coeffs"]) {
    if (e.is_string())
      c.emplace_back(e.get<std::string>());
    else if (e.is_number_integer())
      c.emplace_back(static_cast<long>(e.get<int64_t>()));
    else
      throw ConfigError("polynomial coefficient must be a decimal string");
  }
  return IntPolynomial(std::move(c));
}

Json ball_to_json(const arith::RealBall& b) {
  auto p = b.to_dyadic_parts();
  return Json{{"center_mantissa", p.center_mantissa.get_str()},
              {"center_exp", p.center_exp},
              {"radius_mantissa", p.radius_mantissa.get_str()},
              {"radius_exp", p.radius_exp}};
}

arith::RealBall ball_from_json(const Json& j, mpfr_prec_t prec) {
  arith::RealBall::DyadicParts p;
  p.center_mantissa = mpz_class(j.at("center_mantissa").get<std::string>());
  p.center_exp = j.at("center_exp").get<long>();
  p.radius_mantissa = mpz_class(j.at("radius_mantissa").get<std::string>());
  p.radius_exp = j.at("radius_exp").get<long>();
  return arith::RealBall::from_dyadic_parts(p, prec);
}

}  // namespace dioph::poly
