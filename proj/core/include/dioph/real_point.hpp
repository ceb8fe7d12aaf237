#ifndef DIOPH_REAL_POINT_HPP
#define DIOPH_REAL_POINT_HPP

#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "dioph/arith.hpp"
#include "dioph/cf_number.hpp"
#include "dioph/json.hpp"

namespace dioph::pts {

/*
 * Refinable real point: evaluation targets for enumeration and extraction.
 * Descriptor forms:
 *   rational      x = r
 *   root          x = a + b * d^(1/k)   (d positive rational, k >= 2)
 *   cf            continued-fraction number (exact convergents)
 *   ball          fixed enclosure, not refinable
 *
 * enclosure(prec) returns an interval of width about 2^-prec (except for
 * fixed balls, which are returned as-is, and CF points which refine down
 * to their generated depth).
 */
class RealPoint {
 public:
  struct Root {
    mpq_class offset;  // a
    mpq_class scale;   // b
    mpq_class radicand;  // d > 0
    unsigned long k = 2;
  };

  static RealPoint rational(mpq_class r);
  static RealPoint root(mpq_class offset, mpq_class scale, mpq_class radicand, unsigned long k);
  static RealPoint cf(std::shared_ptr<const cex::CFNumber> n);
  static RealPoint fixed_ball(arith::RealBall b);

  // (sqrt(5)-1)/2 and 2^(1/3), the paper's two pinned evaluation points.
  static RealPoint golden_conjugate() {
    return root(mpq_class(-1, 2), mpq_class(1, 2), mpq_class(5), 2);
  }
  static RealPoint cbrt2() { return root(0, 1, 2, 3); }

  bool is_rational() const { return std::holds_alternative<mpq_class>(v_); }
  const mpq_class& rational_value() const { return std::get<mpq_class>(v_); }
  const cex::CFNumber* cf_number() const;

  arith::RealBall enclosure(mpfr_prec_t prec) const;
  arith::DIntv enclosure_d() const;

  std::string describe() const;
  Json to_json() const;
  static RealPoint from_json(const Json& j);

 private:
  RealPoint() = default;
  std::variant<mpq_class, Root, std::shared_ptr<const cex::CFNumber>, arith::RealBall> v_;
};

}  // namespace dioph::pts

#endif
