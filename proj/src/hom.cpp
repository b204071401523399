#include "semeq/hom.hpp"

namespace semeq {

Value SemiringHom::apply(const Value& v) const {
  if (!(v.semiring() && *v.semiring() == *source))
    throw FamilyMismatch("hom " + name + ": value not from source semiring");
  switch (rule) {
    case HomRule::FiniteMap: {
      for (const auto& [from, to] : map)
        if (from == v) return to;
      throw FamilyMismatch("hom " + name + ": value outside mapped carrier");
    }
    case HomRule::TruncateToNatTrunc: {
      int k = target->bound;
      if (source->family == Family::NatInf) {
        const auto& x = v.as_extnat();
        if (x.inf || x.v >= k) return make_int(target, k);
        return make_int(target, x.v);
      }
      BigInt x = v.as_int();
      return make_int(target, x > k ? BigInt(k) : x);
    }
    case HomRule::IdcHom: {
      bool one = sr_add(source, v, *base) == v;
      return make_int(target, one ? 1 : 0);
    }
    case HomRule::PrimeIdealHom: {
      for (const Value& p : ideal)
        if (p == v) return make_int(target, 0);
      return make_int(target, 1);
    }
    case HomRule::Kronecker:
      return make_int(target, kronecker_eval(v.as_poly(), c, e));
    case HomRule::TropicalScale: {
      const auto& x = v.as_extrat();
      if (x.inf) return make_inf(target);
      return make_rat(target, BigRat(scale) * x.v);
    }
  }
  throw Error("hom apply: unknown rule");
}

SemiringHom hom_finite_map(SemiringPtr source, SemiringPtr target,
                           std::vector<std::pair<Value, Value>> map, std::string name) {
  SemiringHom h;
  h.source = std::move(source);
  h.target = std::move(target);
  h.rule = HomRule::FiniteMap;
  h.map = std::move(map);
  h.name = std::move(name);
  return h;
}

SemiringHom hom_truncate(SemiringPtr source, int k) {
  if (source->family != Family::Nat && source->family != Family::NatInf)
    throw FamilyMismatch("truncation hom expects nat or natinf source");
  SemiringHom h;
  h.source = std::move(source);
  h.target = SemiringDescriptor::nat_trunc(k);
  h.rule = HomRule::TruncateToNatTrunc;
  h.name = "truncate:" + std::to_string(k);
  return h;
}

SemiringHom hom_kronecker(SemiringPtr source, const BigInt& c, std::uint64_t e) {
  if (source->family != Family::Poly || source->quot != PolyQuotient::NX)
    throw FamilyMismatch("kronecker hom expects an nx polynomial source");
  if (c < 2 || e < 1) throw Error("kronecker map needs c >= 2, e >= 1");
  SemiringHom h;
  h.source = std::move(source);
  h.target = SemiringDescriptor::nat();
  h.rule = HomRule::Kronecker;
  h.c = c;
  h.e = e;
  h.name = "kronecker:c=" + c.str() + ",e=" + std::to_string(e);
  return h;
}

SemiringHom hom_tropical_scale(const BigInt& factor) {
  if (factor < 1) throw Error("tropical scaling factor must be >= 1");
  SemiringHom h;
  h.source = SemiringDescriptor::tropical();
  h.target = SemiringDescriptor::tropical();
  h.rule = HomRule::TropicalScale;
  h.scale = factor;
  h.name = "tropical-scale:" + factor.str();
  return h;
}

HomVerification verify_hom(const SemiringHom& h, std::uint64_t seed, int samples) {
  const SemiringPtr &S = h.source, &T = h.target;
  HomVerification out;
  auto fail = [&](const std::string& law, const Value& a, const Value& b) {
    out.ok = false;
    out.law = law;
    out.violation = {{a, b}};
    return out;
  };
  if (!(h.apply(sr_zero(S)) == sr_zero(T)))
    return fail("h(0) = 0", sr_zero(S), sr_zero(S));
  if (!(h.apply(sr_one(S)) == sr_one(T)))
    return fail("h(1) = 1", sr_one(S), sr_one(S));

  auto check_pair = [&](const Value& a, const Value& b) -> bool {
    if (!(h.apply(sr_add(S, a, b)) == sr_add(T, h.apply(a), h.apply(b)))) {
      fail("h(s+t) = h(s)+h(t)", a, b);
      return false;
    }
    if (!(h.apply(sr_mul(S, a, b)) == sr_mul(T, h.apply(a), h.apply(b)))) {
      fail("h(s*t) = h(s)*h(t)", a, b);
      return false;
    }
    return true;
  };

  if (auto carrier = carrier_elements(S)) {
    for (const Value& a : *carrier)
      for (const Value& b : *carrier)
        if (!check_pair(a, b)) return out;
    return out;
  }
  std::mt19937_64 rng(seed);
  for (int i = 0; i < samples; ++i) {
    Value a = random_value(S, rng);
    Value b = random_value(S, rng);
    if (!check_pair(a, b)) return out;
  }
  return out;
}

}  // namespace semeq
