#ifndef DIOPH_CONDITIONS_HPP
#define DIOPH_CONDITIONS_HPP

#include <optional>
#include <string>
#include <vector>

#include "dioph/functions.hpp"

namespace dioph::funcs {

enum class ConditionId {
  BED,                  // Psi(q^2) <= Psi(q)^2
  TAUU,                 // log Psi(q) / log q non-increasing
  GLEICHUNG,            // Psi(q/c1) <= c2 Psi(q) for some c2
  SUBMULT,              // Psi(q^alpha) <= Psi(q)^alpha
  ZZZ,                  // r^s1 < g(r) < r^s2
  DIM_RATIO_MONOTONE,   // g(r)/r non-increasing
  ALTEUG,               // g(r) <= r^(2/3+eps) on (0,1)
  OBN_DERIVATIVE,       // d/dq log(phi(q)) = o(1/(q log q)) for the slow part
};

std::string condition_name(ConditionId id);

struct ConditionParams {
  mpq_class c1{2};        // GLEICHUNG
  mpq_class alpha{2};     // SUBMULT, >= 1
  mpq_class s1{2, 5};     // ZZZ
  mpq_class s2{3, 5};     // ZZZ
  mpq_class eps{1, 10};   // ALTEUG
};

enum class ConditionVerdict { Holds, FailsAt, Inconclusive };

struct ConditionReport {
  ConditionId id;
  ConditionParams params;
  std::string grid_description;
  size_t grid_points = 0;
  ConditionVerdict verdict = ConditionVerdict::Inconclusive;
  std::optional<mpq_class> witness;   // grid point of the first failure
  std::string detail;                 // human-readable; includes derived constants
  std::optional<mpq_class> c2_observed;  // GLEICHUNG: smallest c2 seen on the grid
  // A grid verdict is finite-sample evidence, never a proof.
  bool finite_sample = true;

  Json to_json() const;
};

struct Grid {
  std::vector<mpq_class> points;  // ascending
  std::string description;
};

// Dyadic points 2^1..2^kmax clipped to the function domain, plus the
// variant breakpoints.
Grid default_psi_grid(const ApproxFunction& f, long kmax = 64);
// Dyadic points 2^-1..2^-kmax (descending magnitude -> stored ascending),
// clipped, plus breakpoints.
Grid default_dim_grid(const DimensionFunction& g, long kmax = 64);

ConditionReport check_condition(const ApproxFunction& f, ConditionId id,
                                const ConditionParams& params, const Grid& grid,
                                mpfr_prec_t prec = arith::kDefaultPrec);
ConditionReport check_condition(const DimensionFunction& g, ConditionId id,
                                const ConditionParams& params, const Grid& grid,
                                mpfr_prec_t prec = arith::kDefaultPrec);

}  // namespace dioph::funcs

#endif
