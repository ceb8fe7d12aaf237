#ifndef DIOPH_ENUMERATE_HPP
#define DIOPH_ENUMERATE_HPP

#include <optional>
#include <vector>

#include "dioph/factor.hpp"
#include "dioph/functions.hpp"
#include "dioph/int_polynomial.hpp"
#include "dioph/real_point.hpp"

namespace dioph::search {

enum class HitStatus { Certified, Rejected, Undecided };
enum class PolyClass { Irreducible, ReducibleDistinct, RepeatedRoot, Constant };
enum class HeightMode { IncludeConstant, ExcludeConstant };

std::string status_name(HitStatus s);
std::string class_name(PolyClass c);

struct ApproximableHit {
  poly::IntPolynomial p;
  mpz_class height;          // the selected height of p
  arith::RealBall value;     // enclosure of |P(x)|
  HitStatus status = HitStatus::Undecided;
  PolyClass cls = PolyClass::Constant;

  Json to_json() const;
};

struct EnumerateOptions {
  int degree = 2;
  mpz_class hmax{10};
  HeightMode height_mode = HeightMode::IncludeConstant;
  mpfr_prec_t prec = arith::kDefaultPrec;
  mpfr_prec_t prec_cap = 2048;
  int workers = 1;
  bool classify = true;
};

struct EnumerationResult {
  std::vector<ApproximableHit> hits;  // Certified and Undecided entries, canonical order
  unsigned long scanned = 0;          // sign-canonical nonzero vectors scanned
  unsigned long certified = 0;
  unsigned long undecided = 0;
  bool undecided_over_budget = false;  // undecided > 1% of scanned
};

/*
 * Exhaustive scan of B'_Psi(x): all coefficient vectors with the selected
 * height <= hmax, up to sign symmetry (P and -P identified). Hits carry
 * certified statuses; Rejected polynomials are counted but not stored.
 */
EnumerationResult enumerate_approximable(const pts::RealPoint& x,
                                         const funcs::ApproxFunction& psi,
                                         const EnumerateOptions& opt);

// Certified membership status of a single polynomial.
HitStatus status_of(const poly::IntPolynomial& p, const pts::RealPoint& x,
                    const funcs::ApproxFunction& psi, HeightMode mode, mpfr_prec_t prec,
                    mpfr_prec_t prec_cap, arith::RealBall* value_out = nullptr);

// RepeatedRoot iff gcd(P, P') is nonconstant; else Irreducible iff the
// factorization has a single factor of multiplicity one.
PolyClass classify_polynomial(const poly::IntPolynomial& p);

// P = k (v t - u)^2 with gcd(u, v) = 1, v > 0, for quadratics with a
// repeated root; nullopt otherwise.
struct RepeatedRootWitness {
  mpz_class k, u, v;
};
std::optional<RepeatedRootWitness> repeated_root_witness(const poly::IntPolynomial& p);

// psi_hat(q) = sqrt(psi(q^2)), the derived function of the theta lift.
arith::Value psi_hat(const funcs::ApproxFunction& psi, const mpq_class& q,
                     mpfr_prec_t prec = arith::kDefaultPrec);

/*
 * The Corollary-2.7 lift: (u, v) coprime with 2|u| < v maps to
 * P = (v t - u)^2 with H_P = v^2 exactly, and |vx - u| <= psi_hat(v)
 * forces |P(x)| <= psi(H_P) because psi_hat(v)^2 = psi(v^2).
 */
struct ThetaLiftCertificate {
  poly::IntPolynomial p;
  mpz_class height;           // v^2
  arith::Value psi_hat_sq;    // psi_hat(v)^2
  arith::Value psi_at_h;      // psi(v^2)
  bool identity_certified = false;

  Json to_json() const;
};
ThetaLiftCertificate lift_theta_witness(const mpz_class& u, const mpz_class& v,
                                        const funcs::ApproxFunction& psi,
                                        mpfr_prec_t prec = arith::kDefaultPrec);

/*
 * Exhaustive Davenport-Schmidt scan: the measured constant
 * min over coprime pairs of max(|P(x)|, |Q(x)|) * H^{2n-1}, H the larger
 * height of the pair.
 */
struct DSScanResult {
  arith::RealBall min_value;
  poly::IntPolynomial arg_p, arg_q;
  unsigned long pairs = 0;
  unsigned long undecided = 0;
};
DSScanResult davenport_schmidt_scan(const pts::RealPoint& x, int n, const mpz_class& hmax,
                                    mpfr_prec_t prec = arith::kDefaultPrec, int workers = 1);

}  // namespace dioph::search

#endif
