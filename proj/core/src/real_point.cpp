#include "dioph/real_point.hpp"

#include <sstream>

namespace dioph::pts {

using arith::RealBall;

RealPoint RealPoint::rational(mpq_class r) {
  RealPoint p;
  p.v_ = std::move(r);
  return p;
}

RealPoint RealPoint::root(mpq_class offset, mpq_class scale, mpq_class radicand, unsigned long k) {
  if (radicand <= 0) throw DomainError("RealPoint::root: radicand must be positive");
  if (k < 2) throw DomainError("RealPoint::root: k >= 2");
  RealPoint p;
  p.v_ = Root{std::move(offset), std::move(scale), std::move(radicand), k};
  return p;
}

RealPoint RealPoint::cf(std::shared_ptr<const cex::CFNumber> n) {
  RealPoint p;
  p.v_ = std::move(n);
  return p;
}

RealPoint RealPoint::fixed_ball(arith::RealBall b) {
  RealPoint p;
  p.v_ = std::move(b);
  return p;
}

const cex::CFNumber* RealPoint::cf_number() const {
  if (auto* sp = std::get_if<std::shared_ptr<const cex::CFNumber>>(&v_)) return sp->get();
  return nullptr;
}

RealBall RealPoint::enclosure(mpfr_prec_t prec) const {
  if (const auto* r = std::get_if<mpq_class>(&v_)) return RealBall::from_q(*r, prec);
  if (const auto* rt = std::get_if<Root>(&v_)) {
    RealBall rad = RealBall::from_q(rt->radicand, prec + 16).rootn(rt->k);
    return RealBall::from_q(rt->offset, prec) + RealBall::from_q(rt->scale, prec) * rad;
  }
  if (const auto* cf = std::get_if<std::shared_ptr<const cex::CFNumber>>(&v_)) {
    mpq_class width = arith::q_pow_si(mpq_class(2), -static_cast<long>(prec));
    return (*cf)->enclosure_width(width, prec);
  }
  return std::get<RealBall>(v_).with_prec(prec);
}

arith::DIntv RealPoint::enclosure_d() const {
  RealBall b = enclosure(64);
  return arith::DIntv{b.lo_d(), b.hi_d()};
}

std::string RealPoint::describe() const {
  std::ostringstream os;
  if (const auto* r = std::get_if<mpq_class>(&v_)) {
    os << r->get_str();
  } else if (const auto* rt = std::get_if<Root>(&v_)) {
    os << rt->offset.get_str() << " + " << rt->scale.get_str() << " * " << rt->radicand.get_str()
       << "^(1/" << rt->k << ")";
  } else if (std::get_if<std::shared_ptr<const cex::CFNumber>>(&v_)) {
    const auto& cf = *std::get<std::shared_ptr<const cex::CFNumber>>(v_);
    os << "cf[n=" << cf.n << ", w=" << cf.w.get_str() << ", depth=" << cf.depth() << "]";
  } else {
    os << std::get<RealBall>(v_).str(12);
  }
  return os.str();
}

Json RealPoint::to_json() const {
  if (const auto* r = std::get_if<mpq_class>(&v_))
    return Json{{"kind", "rational"}, {"value", r->get_str()}};
  if (const auto* rt = std::get_if<Root>(&v_))
    return Json{{"kind", "root"},
                {"offset", rt->offset.get_str()},
                {"scale", rt->scale.get_str()},
                {"radicand", rt->radicand.get_str()},
                {"k", rt->k}};
  if (const auto* cf = std::get_if<std::shared_ptr<const cex::CFNumber>>(&v_)) {
    Json a = Json::array();
    for (const auto& v : (*cf)->a) a.push_back(v.get_str());
    return Json{{"kind", "cf"},
                {"n", (*cf)->n},
                {"w", (*cf)->w.get_str()},
                {"partial_quotients", a}};
  }
  const auto& b = std::get<RealBall>(v_);
  auto parts = b.to_dyadic_parts();
  return Json{{"kind", "ball"},
              {"center_mantissa", parts.center_mantissa.get_str()},
              {"center_exp", parts.center_exp},
              {"radius_mantissa", parts.radius_mantissa.get_str()},
              {"radius_exp", parts.radius_exp}};
}

RealPoint RealPoint::from_json(const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "rational") return rational(mpq_class(j.at("value").get<std::string>()));
  if (kind == "root")
    return root(mpq_class(j.at("offset").get<std::string>()),
                mpq_class(j.at("scale").get<std::string>()),
                mpq_class(j.at("radicand").get<std::string>()), j.at("k").get<unsigned long>());
  if (kind == "cf") {
    // rebuilt from the generating parameters: a_1 and the stored depth
    int n = j.at("n").get<int>();
    mpq_class w(j.at("w").get<std::string>());
    const auto& a = j.at("partial_quotients");
    if (a.size() < 2) throw ConfigError("cf point needs at least a_0, a_1");
    mpz_class a1(a[1].get<std::string>());
    auto cfn = std::make_shared<cex::CFNumber>(
        cex::build_cf_number(n, w, a1, a.size() - 1));
    return cf(cfn);
  }
  if (kind == "ball") {
    arith::RealBall::DyadicParts p;
    p.center_mantissa = mpz_class(j.at("center_mantissa").get<std::string>());
    p.center_exp = j.at("center_exp").get<long>();
    p.radius_mantissa = mpz_class(j.at("radius_mantissa").get<std::string>());
    p.radius_exp = j.at("radius_exp").get<long>();
    return fixed_ball(arith::RealBall::from_dyadic_parts(p));
  }
  throw ConfigError("unknown point kind: " + kind);
}

}  // namespace dioph::pts
