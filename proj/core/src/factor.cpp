#include "dioph/factor.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>

namespace dioph::poly {

namespace {

/* ------------------------ arithmetic mod p ------------------------- */
/* Dense polynomials over F_p, p an odd prime < 2^31. Degrees stay      */
/* <= kMaxFactorDegree so fixed-size arrays are fine.                   */

constexpr int kModCap = 2 * kMaxFactorDegree + 2;

struct ModPoly {
  uint64_t p = 3;
  int deg = -1;  // -1 for zero
  std::array<uint64_t, kModCap> c{};

  static ModPoly zero(uint64_t p) { return ModPoly{p, -1, {}}; }
  static ModPoly one(uint64_t p) {
    ModPoly r{p, 0, {}};
    r.c[0] = 1;
    return r;
  }
  bool is_zero() const { return deg < 0; }
  void trim() {
    while (deg >= 0 && c[static_cast<size_t>(deg)] == 0) --deg;
  }
  uint64_t lead() const { return c[static_cast<size_t>(deg)]; }
};

uint64_t addm(uint64_t a, uint64_t b, uint64_t p) { return (a + b) % p; }
uint64_t subm(uint64_t a, uint64_t b, uint64_t p) { return (a + p - b) % p; }
uint64_t mulm(uint64_t a, uint64_t b, uint64_t p) { return (a * b) % p; }

uint64_t powm(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mulm(r, a, p);
    a = mulm(a, a, p);
    e >>= 1;
  }
  return r;
}

uint64_t invm(uint64_t a, uint64_t p) { return powm(a % p, p - 2, p); }

ModPoly mp_from_int(const IntPolynomial& f, uint64_t p) {
  ModPoly r = ModPoly::zero(p);
  r.deg = f.degree();
  for (int i = 0; i <= f.degree(); ++i) {
    mpz_class m = f.coeff(static_cast<size_t>(i)) % static_cast<long>(p);
    if (m < 0) m += static_cast<long>(p);
    r.c[static_cast<size_t>(i)] = m.get_ui();
  }
  r.trim();
  return r;
}

ModPoly mp_mul(const ModPoly& a, const ModPoly& b) {
  ModPoly r = ModPoly::zero(a.p);
  if (a.is_zero() || b.is_zero()) return r;
  r.deg = a.deg + b.deg;
  for (int i = 0; i <= a.deg; ++i)
    for (int j = 0; j <= b.deg; ++j)
      r.c[static_cast<size_t>(i + j)] =
          addm(r.c[static_cast<size_t>(i + j)],
               mulm(a.c[static_cast<size_t>(i)], b.c[static_cast<size_t>(j)], a.p), a.p);
  r.trim();
  return r;
}

// (quotient, remainder) with b nonzero.
std::pair<ModPoly, ModPoly> mp_divmod(const ModPoly& a, const ModPoly& b) {
  ModPoly q = ModPoly::zero(a.p), r = a;
  if (b.is_zero()) throw InternalError("mod-p division by zero");
  uint64_t binv = invm(b.lead(), a.p);
  if (r.deg >= b.deg) {
    q.deg = r.deg - b.deg;
    std::fill(q.c.begin(), q.c.end(), 0);
  }
  while (!r.is_zero() && r.deg >= b.deg) {
    int k = r.deg - b.deg;
    uint64_t f = mulm(r.lead(), binv, a.p);
    q.c[static_cast<size_t>(k)] = f;
    for (int i = 0; i <= b.deg; ++i)
      r.c[static_cast<size_t>(i + k)] =
          subm(r.c[static_cast<size_t>(i + k)], mulm(f, b.c[static_cast<size_t>(i)], a.p), a.p);
    r.trim();
  }
  q.trim();
  return {q, r};
}

ModPoly mp_mod(const ModPoly& a, const ModPoly& b) { return mp_divmod(a, b).second; }

ModPoly mp_gcd(ModPoly a, ModPoly b) {
  while (!b.is_zero()) {
    ModPoly r = mp_mod(a, b);
    a = b;
    b = r;
  }
  if (!a.is_zero() && a.lead() != 1) {
    uint64_t inv = invm(a.lead(), a.p);
    for (int i = 0; i <= a.deg; ++i) a.c[static_cast<size_t>(i)] = mulm(a.c[static_cast<size_t>(i)], inv, a.p);
  }
  return a;
}

ModPoly mp_monic(ModPoly a) {
  if (a.is_zero() || a.lead() == 1) return a;
  uint64_t inv = invm(a.lead(), a.p);
  for (int i = 0; i <= a.deg; ++i) a.c[static_cast<size_t>(i)] = mulm(a.c[static_cast<size_t>(i)], inv, a.p);
  return a;
}

ModPoly mp_derivative(const ModPoly& a) {
  ModPoly r = ModPoly::zero(a.p);
  if (a.deg < 1) return r;
  r.deg = a.deg - 1;
  for (int i = 1; i <= a.deg; ++i)
    r.c[static_cast<size_t>(i - 1)] = mulm(a.c[static_cast<size_t>(i)], static_cast<uint64_t>(i) % a.p, a.p);
  r.trim();
  return r;
}

ModPoly mp_powmod(ModPoly base, mpz_class e, const ModPoly& f) {
  ModPoly r = ModPoly::one(base.p);
  base = mp_mod(base, f);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mp_mod(mp_mul(r, base), f);
    base = mp_mod(mp_mul(base, base), f);
    e >>= 1;
  }
  return r;
}

// Deterministic small RNG for equal-degree splitting.
struct Lcg {
  uint64_t s;
  uint64_t next() {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    return s >> 17;
  }
};

// Cantor-Zassenhaus equal-degree splitting: f squarefree monic, all
// irreducible factors of degree d.
void edf(const ModPoly& f, int d, Lcg& rng, std::vector<ModPoly>& out) {
  if (f.deg == d) {
    out.push_back(mp_monic(f));
    return;
  }
  uint64_t p = f.p;
  mpz_class pd;
  mpz_ui_pow_ui(pd.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(d));
  mpz_class e = (pd - 1) / 2;
  for (;;) {
    ModPoly a = ModPoly::zero(p);
    a.deg = static_cast<int>(rng.next() % static_cast<uint64_t>(f.deg));
    for (int i = 0; i <= a.deg; ++i) a.c[static_cast<size_t>(i)] = rng.next() % p;
    a.trim();
    if (a.is_zero()) continue;
    ModPoly g = mp_gcd(f, a);
    if (g.deg > 0 && g.deg < f.deg) {
      edf(g, d, rng, out);
      edf(mp_divmod(f, g).first, d, rng, out);
      return;
    }
    ModPoly b = mp_powmod(a, e, f);
    // b - 1
    if (b.deg < 0) { b.deg = 0; b.c[0] = 0; }
    b.c[0] = subm(b.c[0], 1, p);
    if (b.deg == 0) b.trim();
    ModPoly h = mp_gcd(f, b);
    if (h.deg > 0 && h.deg < f.deg) {
      edf(h, d, rng, out);
      edf(mp_divmod(f, h).first, d, rng, out);
      return;
    }
  }
}

// Full factorization of a squarefree monic f mod p (p odd).
std::vector<ModPoly> mp_factor_squarefree(const ModPoly& f0) {
  std::vector<ModPoly> out;
  ModPoly f = mp_monic(f0);
  Lcg rng{0x9e3779b97f4a7c15ull ^ (static_cast<uint64_t>(f.deg) << 32) ^ f.p};
  // distinct-degree stage
  ModPoly x = ModPoly::zero(f.p);
  x.deg = 1;
  x.c[1] = 1;
  ModPoly xp = x;  // x^(p^d) mod f, running
  for (int d = 1; !f.is_zero() && f.deg > 0 && d <= f.deg; ++d) {
    xp = mp_powmod(xp, mpz_class(static_cast<unsigned long>(f.p)), f);
    if (2 * d > f.deg) break;
    ModPoly diff = xp;
    // diff = x^(p^d) - x mod f
    if (diff.deg < 1) {
      ModPoly t = ModPoly::zero(f.p);
      t.deg = std::max(diff.deg, 1);
      t.c = diff.c;
      diff = t;
    }
    diff.c[1] = subm(diff.c[1], 1, f.p);
    diff.deg = std::max(diff.deg, 1);
    diff.trim();
    ModPoly g = mp_gcd(f, diff);
    if (g.deg > 0) {
      edf(g, d, rng, out);
      f = mp_divmod(f, g).first;
      xp = mp_mod(xp, f);
    }
  }
  if (f.deg > 0) out.push_back(mp_monic(f));
  return out;
}

/* -------------------- Hensel lifting (monic case) ------------------- */

// Integer polynomial with coefficients reduced into [0, m).
using ZVec = std::vector<mpz_class>;

ZVec zv_from_mod(const ModPoly& a) {
  ZVec r(static_cast<size_t>(std::max(a.deg + 1, 0)));
  for (int i = 0; i <= a.deg; ++i) r[static_cast<size_t>(i)] = mpz_class(a.c[static_cast<size_t>(i)]);
  return r;
}

int zv_deg(const ZVec& a) {
  int d = static_cast<int>(a.size()) - 1;
  while (d >= 0 && a[static_cast<size_t>(d)] == 0) --d;
  return d;
}

ZVec zv_mul(const ZVec& a, const ZVec& b) {
  if (a.empty() || b.empty()) return {};
  ZVec r(a.size() + b.size() - 1, mpz_class(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

ZVec zv_mul_mod(const ZVec& a, const ZVec& b, const mpz_class& m) {
  ZVec r = zv_mul(a, b);
  for (auto& v : r) {
    v %= m;
    if (v < 0) v += m;
  }
  return r;
}

/*
 * Linear Hensel chain for a monic F: given monic g_i with
 * F = prod g_i (mod p), lift to F = prod G_i (mod p^k).
 * Pairwise step lifts (g, h) with bezout s*g + t*h = 1 (mod p).
 */
struct HenselPair {
  ZVec g, h;
};

// extended gcd in F_p for ModPoly, returning (s, t) with s a + t b = 1.
std::pair<ModPoly, ModPoly> mp_bezout(const ModPoly& a, const ModPoly& b) {
  uint64_t p = a.p;
  ModPoly r0 = a, r1 = b;
  ModPoly s0 = ModPoly::one(p), s1 = ModPoly::zero(p);
  ModPoly t0 = ModPoly::zero(p), t1 = ModPoly::one(p);
  while (!r1.is_zero()) {
    auto [q, r2] = mp_divmod(r0, r1);
    ModPoly s2 = ModPoly::zero(p), t2 = ModPoly::zero(p);
    {
      ModPoly qs = mp_mul(q, s1);
      s2 = s0;
      // s2 = s0 - q*s1
      ModPoly tmp = ModPoly::zero(p);
      tmp.deg = std::max(s2.deg, qs.deg);
      for (int i = 0; i <= tmp.deg; ++i)
        tmp.c[static_cast<size_t>(i)] =
            subm(i <= s2.deg ? s2.c[static_cast<size_t>(i)] : 0,
                 i <= qs.deg ? qs.c[static_cast<size_t>(i)] : 0, p);
      tmp.trim();
      s2 = tmp;
    }
    {
      ModPoly qt = mp_mul(q, t1);
      ModPoly tmp = ModPoly::zero(p);
      tmp.deg = std::max(t0.deg, qt.deg);
      for (int i = 0; i <= tmp.deg; ++i)
        tmp.c[static_cast<size_t>(i)] =
            subm(i <= t0.deg ? t0.c[static_cast<size_t>(i)] : 0,
                 i <= qt.deg ? qt.c[static_cast<size_t>(i)] : 0, p);
      tmp.trim();
      t2 = tmp;
    }
    r0 = r1; r1 = r2;
    s0 = s1; s1 = s2;
    t0 = t1; t1 = t2;
  }
  if (r0.deg != 0) throw InternalError("mp_bezout: inputs not coprime");
  uint64_t inv = invm(r0.c[0], p);
  for (int i = 0; i <= s0.deg; ++i) s0.c[static_cast<size_t>(i)] = mulm(s0.c[static_cast<size_t>(i)], inv, p);
  for (int i = 0; i <= t0.deg; ++i) t0.c[static_cast<size_t>(i)] = mulm(t0.c[static_cast<size_t>(i)], inv, p);
  return {s0, t0};
}

ModPoly mp_from_zv_modp(const ZVec& a, uint64_t p) {
  ModPoly r = ModPoly::zero(p);
  r.deg = zv_deg(a);
  for (int i = 0; i <= r.deg; ++i) {
    mpz_class v = a[static_cast<size_t>(i)] % static_cast<long>(p);
    if (v < 0) v += static_cast<long>(p);
    r.c[static_cast<size_t>(i)] = v.get_ui();
  }
  r.trim();
  return r;
}

// Lift F = g*h (mod p) to (mod p^k), F, g, h monic; returns lifted (g, h).
HenselPair hensel_lift_pair(const ZVec& F, ModPoly g0, ModPoly h0, uint64_t p, unsigned k) {
  auto [s, t] = mp_bezout(g0, h0);
  ZVec g = zv_from_mod(g0), h = zv_from_mod(h0);
  mpz_class m(static_cast<unsigned long>(p));
  mpz_class big;
  mpz_ui_pow_ui(big.get_mpz_t(), static_cast<unsigned long>(p), k);
  while (m < big) {
    // e1 = (F - g h) / m  (exact), reduced mod p
    ZVec gh(F.size(), mpz_class(0));
    {
      ZVec prod = zv_mul(g, h);
      if (prod.size() > gh.size()) gh.resize(prod.size(), mpz_class(0));
      for (size_t i = 0; i < prod.size(); ++i) gh[i] = prod[i];
    }
    ZVec e(gh.size(), mpz_class(0));
    bool zero = true;
    for (size_t i = 0; i < gh.size(); ++i) {
      mpz_class d = (i < F.size() ? F[i] : mpz_class(0)) - gh[i];
      mpz_class q;
      mpz_divexact(q.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
      e[i] = q;
      if (e[i] % static_cast<long>(p) != 0) zero = false;
    }
    if (zero) {
      m *= static_cast<long>(p);
      continue;
    }
    ModPoly e1 = mp_from_zv_modp(e, p);
    // u = t*e1 mod g (quotient q1), w = s*e1 + q1*h
    ModPoly te = mp_mul(t, e1);
    auto [q1, u] = mp_divmod(te, g0);
    ModPoly se = mp_mul(s, e1);
    ModPoly q1h = mp_mul(q1, h0);
    ModPoly w = ModPoly::zero(p);
    w.deg = std::max(se.deg, q1h.deg);
    for (int i = 0; i <= w.deg; ++i)
      w.c[static_cast<size_t>(i)] = addm(i <= se.deg ? se.c[static_cast<size_t>(i)] : 0,
                                         i <= q1h.deg ? q1h.c[static_cast<size_t>(i)] : 0, p);
    w.trim();
    // g += m*u, h += m*w
    if (u.deg >= 0) {
      if (static_cast<size_t>(u.deg) >= g.size()) g.resize(static_cast<size_t>(u.deg) + 1, mpz_class(0));
      for (int i = 0; i <= u.deg; ++i)
        g[static_cast<size_t>(i)] += m * mpz_class(u.c[static_cast<size_t>(i)]);
    }
    if (w.deg >= 0) {
      if (static_cast<size_t>(w.deg) >= h.size()) h.resize(static_cast<size_t>(w.deg) + 1, mpz_class(0));
      for (int i = 0; i <= w.deg; ++i)
        h[static_cast<size_t>(i)] += m * mpz_class(w.c[static_cast<size_t>(i)]);
    }
    m *= static_cast<long>(p);
    for (auto& v : g) { v %= m; if (v < 0) v += m; }
    for (auto& v : h) { v %= m; if (v < 0) v += m; }
  }
  return {g, h};
}

// Lift all monic factors of monic F from mod p to mod p^k (chain).
std::vector<ZVec> hensel_lift_all(const ZVec& F, std::vector<ModPoly> gs, uint64_t p, unsigned k) {
  std::vector<ZVec> out;
  if (gs.size() == 1) {
    // the factor equals F mod p^k
    mpz_class big;
    mpz_ui_pow_ui(big.get_mpz_t(), static_cast<unsigned long>(p), k);
    ZVec f = F;
    for (auto& v : f) { v %= big; if (v < 0) v += big; }
    out.push_back(f);
    return out;
  }
  ModPoly g0 = gs.front();
  ModPoly rest = ModPoly::one(p);
  for (size_t i = 1; i < gs.size(); ++i) rest = mp_mul(rest, gs[i]);
  HenselPair pr = hensel_lift_pair(F, g0, rest, p, k);
  out.push_back(pr.g);
  std::vector<ModPoly> tail(gs.begin() + 1, gs.end());
  std::vector<ZVec> rest_lifted = hensel_lift_all(pr.h, tail, p, k);
  out.insert(out.end(), rest_lifted.begin(), rest_lifted.end());
  return out;
}

/* ---------------------- squarefree decomposition -------------------- */

// Yun's algorithm over Z for a primitive polynomial with positive lead.
// Returns pairs (S_e, e) with S_e squarefree pairwise coprime.
std::vector<std::pair<IntPolynomial, unsigned>> squarefree_decompose(const IntPolynomial& f) {
  std::vector<std::pair<IntPolynomial, unsigned>> out;
  IntPolynomial g = poly_gcd(f, f.derivative());
  if (g.degree() == 0) {
    out.emplace_back(f, 1);
    return out;
  }
  IntPolynomial w = *divide_exact(f, g);
  // w carries each distinct factor once; peel multiplicities
  unsigned e = 1;
  IntPolynomial wk = w;
  IntPolynomial rest = g;
  while (wk.degree() > 0) {
    IntPolynomial d = poly_gcd(wk, rest);
    IntPolynomial s = *divide_exact(wk, d);
    if (s.degree() > 0) out.emplace_back(s.primitive_part().second.sign_canonical(), e);
    wk = d;
    if (d.degree() > 0 || !rest.is_zero()) {
      auto next = divide_exact(rest, d);
      rest = next ? *next : IntPolynomial::constant(1);
    }
    ++e;
  }
  return out;
}

/* ----------------------- Zassenhaus squarefree ---------------------- */

constexpr std::array<uint64_t, 60> kPrimes = {
    3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,  47,  53,
    59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107, 109, 113, 127,
    131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199,
    211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283};

// Factor a primitive squarefree polynomial with positive leading coeff,
// deg >= 2, into irreducible primitive factors over Z.
std::vector<IntPolynomial> factor_squarefree_lifting(const IntPolynomial& f) {
  const int n = f.degree();
  const mpz_class& lc = f.leading();

  // Monicize: F(t) = lc^(n-1) f(t/lc) is monic with integer coefficients.
  ZVec F(static_cast<size_t>(n + 1));
  for (int i = 0; i <= n; ++i) {
    mpz_class s;
    mpz_pow_ui(s.get_mpz_t(), lc.get_mpz_t(), static_cast<unsigned long>(n - 1 - i >= 0 ? n - 1 - i : 0));
    F[static_cast<size_t>(i)] = f.coeff(static_cast<size_t>(i)) * s;
  }
  // leading becomes lc^n / lc^... adjust: coefficient of t^n is lc * lc^(-1) = 1
  F[static_cast<size_t>(n)] = 1;
  IntPolynomial Fp{std::vector<mpz_class>(F)};

  // pick a prime keeping F squarefree
  uint64_t p = 0;
  ModPoly fbar = ModPoly::zero(3);
  for (uint64_t cand : kPrimes) {
    ModPoly m = mp_from_int(Fp, cand);
    if (m.deg != n) continue;
    ModPoly g = mp_gcd(m, mp_derivative(m));
    if (g.deg == 0) {
      p = cand;
      fbar = m;
      break;
    }
  }
  if (p == 0) throw InternalError("factor: no suitable prime for squarefree reduction");

  std::vector<ModPoly> modular = mp_factor_squarefree(fbar);
  std::sort(modular.begin(), modular.end(), [](const ModPoly& a, const ModPoly& b) {
    if (a.deg != b.deg) return a.deg < b.deg;
    for (int i = a.deg; i >= 0; --i)
      if (a.c[static_cast<size_t>(i)] != b.c[static_cast<size_t>(i)])
        return a.c[static_cast<size_t>(i)] < b.c[static_cast<size_t>(i)];
    return false;
  });
  if (modular.size() == 1) return {f};  // irreducible mod p => irreducible over Z

  // Landau-Mignotte style bound for coefficients of monic factors of F.
  mpz_class hF = Fp.height();
  mpz_class norm2_sq = 0;
  for (const auto& c : F) norm2_sq += c * c;
  mpz_class norm2 = sqrt(norm2_sq) + 1;
  mpz_class bound = (mpz_class(1) << static_cast<unsigned>(n)) * norm2;
  unsigned k = 1;
  {
    mpz_class pk(static_cast<unsigned long>(p));
    while (pk <= 2 * bound) {
      pk *= static_cast<long>(p);
      ++k;
    }
  }
  mpz_class big;
  mpz_ui_pow_ui(big.get_mpz_t(), static_cast<unsigned long>(p), k);

  std::vector<ZVec> lifted = hensel_lift_all(F, modular, p, k);

  auto symmetric = [&](mpz_class v) {
    v %= big;
    if (v < 0) v += big;
    if (2 * v > big) v -= big;
    return v;
  };

  // Subset recombination against the original f (via the monic F).
  std::vector<IntPolynomial> result;
  std::vector<ZVec> pool = lifted;
  IntPolynomial remaining = f;  // primitive, positive lead
  bool progress = true;
  while (progress && pool.size() > 0) {
    progress = false;
    size_t m = pool.size();
    for (size_t take = 1; take <= m / 2 && !progress; ++take) {
      std::vector<size_t> idx(take);
      std::iota(idx.begin(), idx.end(), 0);
      for (;;) {
        // candidate = prod of chosen lifted factors mod p^k, sym-reduced
        ZVec cand{mpz_class(1)};
        for (size_t i : idx) cand = zv_mul_mod(cand, pool[i], big);
        for (auto& v : cand) v = symmetric(v);
        IntPolynomial mc{std::vector<mpz_class>(cand)};
        // map back: primitive part of candidate evaluated at lc*t
        std::vector<mpz_class> back(static_cast<size_t>(mc.degree() + 1));
        for (int i = 0; i <= mc.degree(); ++i) {
          mpz_class s;
          mpz_pow_ui(s.get_mpz_t(), lc.get_mpz_t(), static_cast<unsigned long>(i));
          back[static_cast<size_t>(i)] = mc.coeff(static_cast<size_t>(i)) * s;
        }
        IntPolynomial candidate{std::move(back)};
        if (!candidate.is_zero()) {
          candidate = candidate.primitive_part().second.sign_canonical();
          if (candidate.degree() >= 1) {
            if (auto quot = divide_exact(remaining, candidate)) {
              result.push_back(candidate);
              remaining = quot->primitive_part().second.sign_canonical();
              // remove used modular factors from the pool
              std::vector<ZVec> np;
              for (size_t i = 0, j = 0; i < pool.size(); ++i) {
                if (j < idx.size() && idx[j] == i) { ++j; continue; }
                np.push_back(pool[i]);
              }
              pool = np;
              progress = true;
              break;
            }
          }
        }
        // next combination
        int pos = static_cast<int>(take) - 1;
        while (pos >= 0 && idx[static_cast<size_t>(pos)] == m - take + static_cast<size_t>(pos)) --pos;
        if (pos < 0) break;
        ++idx[static_cast<size_t>(pos)];
        for (size_t j = static_cast<size_t>(pos) + 1; j < take; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
  }
  if (remaining.degree() >= 1) result.push_back(remaining);
  return result;
}

/* ----------------------- enumeration backend ------------------------ */

void divisors_of(const mpz_class& v, std::vector<mpz_class>& out) {
  mpz_class a = ::abs(v);
  out.clear();
  for (mpz_class d = 1; d * d <= a; ++d) {
    if (a % d == 0) {
      out.push_back(d);
      if (d * d != a) out.push_back(a / d);
    }
  }
  std::sort(out.begin(), out.end());
}

// Smallest-degree primitive divisor (positive lead) of a primitive f with
// nonzero constant term, searching candidates of degree <= deg(f)/2 with
// height <= 2^n H_f. Edge coefficients are pruned by exact divisibility
// (lead | lc, const | a0), which loses no true divisor.
std::optional<IntPolynomial> enumeration_find_divisor(const IntPolynomial& f) {
  const int n = f.degree();
  mpz_class hbound = (mpz_class(1) << static_cast<unsigned>(n)) * f.height();
  std::vector<mpz_class> lead_divs, const_divs;
  divisors_of(f.leading(), lead_divs);
  divisors_of(f.coeff(0), const_divs);

  for (int k = 1; k <= n / 2; ++k) {
    std::vector<mpz_class> c(static_cast<size_t>(k + 1));
    // iterate lead (positive divisor), const (signed divisor), interior full box
    for (const auto& dk : lead_divs) {
      if (dk > hbound) continue;
      c[static_cast<size_t>(k)] = dk;
      for (const auto& d0a : const_divs) {
        for (int sgn = 0; sgn < 2; ++sgn) {
          mpz_class d0 = sgn ? mpz_class(-d0a) : d0a;
          if (::abs(d0) > hbound) continue;
          c[0] = d0;
          // interior coefficients
          if (k == 1) {
            IntPolynomial cand{std::vector<mpz_class>(c)};
            if (cand.content() == 1 && divide_exact(f, cand)) return cand;
          } else {
            if (!hbound.fits_slong_p())
              throw DomainError("enumeration backend: height bound too large");
            long lim = hbound.get_si();
            std::vector<long> cur(static_cast<size_t>(k - 1), -lim);
            for (;;) {
              for (int i = 1; i < k; ++i) c[static_cast<size_t>(i)] = cur[static_cast<size_t>(i - 1)];
              IntPolynomial cand{std::vector<mpz_class>(c)};
              if (!cand.is_zero() && cand.degree() == k && cand.content() == 1 &&
                  divide_exact(f, cand))
                return cand;
              int i = 0;
              while (i < k - 1 && cur[static_cast<size_t>(i)] == lim) {
                cur[static_cast<size_t>(i)] = -lim;
                ++i;
              }
              if (i == k - 1) break;
              ++cur[static_cast<size_t>(i)];
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

std::vector<IntPolynomial> factor_squarefree_enumeration(const IntPolynomial& f0) {
  std::vector<IntPolynomial> out;
  std::vector<IntPolynomial> stack{f0};
  while (!stack.empty()) {
    IntPolynomial f = stack.back();
    stack.pop_back();
    if (f.degree() <= 1) {
      out.push_back(f);
      continue;
    }
    auto d = enumeration_find_divisor(f);
    if (!d) {
      out.push_back(f);
      continue;
    }
    stack.push_back(*d);
    stack.push_back(divide_exact(f, *d)->primitive_part().second.sign_canonical());
  }
  return out;
}

}  // namespace

/* ------------------------------ frontend ---------------------------- */

IntPolynomial Factorization::reconstruct() const {
  IntPolynomial r = IntPolynomial::constant(content * unit);
  for (const auto& fp : factors) r = r * fp.poly.pow(fp.multiplicity);
  return r;
}

size_t Factorization::total_irreducible_count() const {
  size_t k = 0;
  for (const auto& fp : factors) k += fp.multiplicity;
  return k;
}

bool Factorization::is_irreducible() const {
  return factors.size() == 1 && factors[0].multiplicity == 1;
}

Factorization factor(const IntPolynomial& p, FactorBackend backend) {
  if (p.is_zero()) throw DomainError("factor: zero polynomial");
  if (p.degree() > kMaxFactorDegree)
    throw UnsupportedDegree("factor: degree above supported bound");

  Factorization out;
  auto [content, prim] = p.primitive_part();
  out.content = content;
  out.unit = prim.leading() > 0 ? 1 : -1;
  IntPolynomial f = prim.sign_canonical();
  if (f.degree() == 0) return out;

  // strip t^m
  unsigned tpow = 0;
  while (f.coeff(0) == 0) {
    std::vector<mpz_class> c(f.coeffs().begin() + 1, f.coeffs().end());
    f = IntPolynomial(std::move(c));
    ++tpow;
  }
  std::vector<FactorPart> parts;
  if (tpow > 0) parts.push_back({IntPolynomial{0, 1}, tpow});

  if (f.degree() >= 1) {
    for (auto& [sf, mult] : squarefree_decompose(f)) {
      std::vector<IntPolynomial> irr =
          (backend == FactorBackend::Lifting) ? factor_squarefree_lifting(sf)
                                              : factor_squarefree_enumeration(sf);
      for (auto& q : irr) parts.push_back({q.sign_canonical(), mult});
    }
  }

  // merge equal factors, sort canonically
  std::sort(parts.begin(), parts.end(), [](const FactorPart& a, const FactorPart& b) {
    return IntPolynomial::canon_less(a.poly, b.poly);
  });
  for (auto& fp : parts) {
    if (!out.factors.empty() && out.factors.back().poly == fp.poly)
      out.factors.back().multiplicity += fp.multiplicity;
    else
      out.factors.push_back(fp);
  }

  return out;
}

bool is_irreducible(const IntPolynomial& p, FactorBackend backend) {
  if (p.is_zero() || p.degree() < 1) return false;
  Factorization f = factor(p, backend);
  return f.is_irreducible();
}

}  // namespace dioph::poly
