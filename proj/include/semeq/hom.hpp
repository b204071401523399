#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "semeq/semiring.hpp"

namespace semeq {

enum class HomRule {
  FiniteMap,           // explicit value table over a finite source carrier
  TruncateToNatTrunc,  // n -> min(n, k), nat/natinf source
  IdcHom,              // h_s(t) = 1 iff t + s = t, Boolean target
  PrimeIdealHom,       // h_P(t) = 0 iff t in P, Boolean target
  Kronecker,           // nx polynomial -> nat at x_j = c^(e^(j-1))
  TropicalScale,       // s -> factor * s on the tropical reals
};

// Semiring homomorphism with a small closed set of construction rules.
struct SemiringHom {
  SemiringPtr source, target;
  HomRule rule;
  std::string name;

  std::vector<std::pair<Value, Value>> map;  // FiniteMap
  std::optional<Value> base;                 // IdcHom element s
  std::vector<Value> ideal;                  // PrimeIdealHom elements
  BigInt c = 0;                              // Kronecker
  std::uint64_t e = 0;                       // Kronecker
  BigInt scale = 0;                          // TropicalScale

  Value apply(const Value& v) const;
};

SemiringHom hom_finite_map(SemiringPtr source, SemiringPtr target,
                           std::vector<std::pair<Value, Value>> map,
                           std::string name = "finite-map");
SemiringHom hom_truncate(SemiringPtr source, int k);
SemiringHom hom_kronecker(SemiringPtr source, const BigInt& c, std::uint64_t e);
SemiringHom hom_tropical_scale(const BigInt& factor);

struct HomVerification {
  bool ok = true;
  std::string law;                            // violated law when !ok
  std::optional<std::pair<Value, Value>> violation;
};

// Exhaustive over finite source carriers, seeded sampling (>= samples pairs)
// otherwise. Returns the first violating pair.
HomVerification verify_hom(const SemiringHom& h, std::uint64_t seed = 0xEF01,
                           int samples = 1000);

}  // namespace semeq
