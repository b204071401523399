#include "semeq/homsets.hpp"

#include <cstdint>
#include <string>

#include "semeq/errors.hpp"

namespace semeq {

namespace {

std::vector<Value> finite_carrier_or_throw(const SemiringPtr& S,
                                           const char* who) {
  auto carrier = carrier_elements(S);
  if (!carrier) {
    throw Error(std::string(who) +
                ": the semiring does not have an enumerable finite carrier");
  }
  return *carrier;
}

std::vector<Value> lattice_carrier_or_throw(const SemiringPtr& S,
                                            const char* who) {
  auto carrier = finite_carrier_or_throw(S, who);
  if (!is_lattice_semiring(S)) {
    throw Error(std::string(who) +
                ": the semiring is not a lattice semiring (fully idempotent "
                "and absorptive)");
  }
  return carrier;
}

bool plus_indecomposable(const SemiringPtr& S, const std::vector<Value>& carrier,
                         const Value& s) {
  if (s == sr_zero(S)) return false;
  for (const Value& r : carrier) {
    if (r == s) continue;
    for (const Value& t : carrier) {
      if (t == s) continue;
      if (sr_add(S, r, t) == s) return false;
    }
  }
  return true;
}

int carrier_index(const std::vector<Value>& carrier, const Value& v) {
  for (int i = 0; i < static_cast<int>(carrier.size()); ++i) {
    if (carrier[i] == v) return i;
  }
  throw Error("carrier_index: operation result left the enumerated carrier");
}

bool valid_prime_ideal(const SemiringPtr& S, const std::vector<Value>& carrier,
                       std::uint32_t mask) {
  int n = static_cast<int>(carrier.size());
  std::uint32_t full = (n == 32) ? 0xffffffffu : ((1u << n) - 1);
  if (mask == 0 || mask == full) return false;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      bool in_i = (mask >> i) & 1, in_j = (mask >> j) & 1;
      if (in_i && in_j) {
        if (!((mask >> carrier_index(carrier, sr_add(S, carrier[i], carrier[j]))) & 1))
          return false;
      }
      int prod = carrier_index(carrier, sr_mul(S, carrier[i], carrier[j]));
      bool in_prod = (mask >> prod) & 1;
      if (in_i && !in_prod) return false;       // absorbs arbitrary factors
      if (!in_i && !in_j && in_prod) return false;  // complement is mult-closed
    }
  }
  return true;
}

std::uint32_t members_to_mask(const std::vector<Value>& carrier,
                              const std::vector<Value>& members) {
  std::uint32_t mask = 0;
  for (const Value& v : members) {
    std::uint32_t bit = 1u << carrier_index(carrier, v);
    if (mask & bit) throw Error("prime ideal lists a member twice");
    mask |= bit;
  }
  return mask;
}

}  // namespace

IdcSet idc_elements(const SemiringPtr& S) {
  auto carrier = lattice_carrier_or_throw(S, "idc_elements");
  IdcSet out{S, {}};
  for (const Value& s : carrier) {
    if (plus_indecomposable(S, carrier, s)) out.elements.push_back(s);
  }
  return out;
}

SemiringHom make_h_s(const SemiringPtr& S, const Value& s) {
  auto carrier = lattice_carrier_or_throw(S, "make_h_s");
  if (!plus_indecomposable(S, carrier, s)) {
    throw Error("make_h_s: " + format_value(s) +
                " is not +-indecomposable, h_s would not respect addition");
  }
  SemiringHom h;
  h.source = S;
  h.target = SemiringDescriptor::boolean();
  h.rule = HomRule::IdcHom;
  h.name = "h_" + format_value(s);
  h.base = s;
  return h;
}

std::vector<PrimeIdeal> prime_ideals(const SemiringPtr& S) {
  auto carrier = lattice_carrier_or_throw(S, "prime_ideals");
  int n = static_cast<int>(carrier.size());
  if (n > 16) {
    throw ResourceError("prime_ideals: carrier of size " + std::to_string(n) +
                        " exceeds the subset-enumeration limit of 16");
  }
  // 0 = t*0 lies in every ideal and 1 in none (1 in P would force P = carrier),
  // so fix those two bits before running the full validation.
  std::uint32_t zero_bit = 1u << carrier_index(carrier, sr_zero(S));
  std::uint32_t one_bit = 1u << carrier_index(carrier, sr_one(S));
  std::vector<PrimeIdeal> out;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (!(mask & zero_bit) || (mask & one_bit)) continue;
    if (!valid_prime_ideal(S, carrier, mask)) continue;
    PrimeIdeal P;
    for (int i = 0; i < n; ++i) {
      if ((mask >> i) & 1) P.members.push_back(carrier[i]);
    }
    out.push_back(std::move(P));
  }
  return out;
}

SemiringHom make_h_P(const SemiringPtr& S, const PrimeIdeal& P) {
  auto carrier = lattice_carrier_or_throw(S, "make_h_P");
  if (!valid_prime_ideal(S, carrier, members_to_mask(carrier, P.members))) {
    throw Error("make_h_P: the given subset is not a prime ideal");
  }
  SemiringHom h;
  h.source = S;
  h.target = SemiringDescriptor::boolean();
  h.rule = HomRule::PrimeIdealHom;
  std::string name = "h_P{";
  for (std::size_t i = 0; i < P.members.size(); ++i) {
    if (i) name += ",";
    name += format_value(P.members[i]);
  }
  h.name = name + "}";
  h.ideal = P.members;
  return h;
}

bool verify_separating(const SemiringPtr& S, const std::vector<SemiringHom>& H) {
  auto carrier = finite_carrier_or_throw(S, "verify_separating");
  for (const SemiringHom& h : H) {
    if (!(*h.source == *S)) {
      throw FamilyMismatch("verify_separating: homomorphism " + h.name +
                           " has a different source semiring");
    }
  }
  for (std::size_t i = 0; i < carrier.size(); ++i) {
    for (std::size_t j = i + 1; j < carrier.size(); ++j) {
      bool separated = false;
      for (const SemiringHom& h : H) {
        if (h.apply(carrier[i]) != h.apply(carrier[j])) {
          separated = true;
          break;
        }
      }
      if (!separated) return false;
    }
  }
  if (!is_lattice_semiring(S)) {
    // A separating family of genuine Boolean homomorphisms exists only over
    // lattice semirings; reaching this line means some h is not a homomorphism.
    for (const SemiringHom& h : H) {
      if (!verify_hom(h).ok) return true;  // separation by a non-hom proves nothing
    }
    throw Error(
        "verify_separating: verified Boolean homomorphisms separate a "
        "non-lattice semiring, which contradicts soundness");
  }
  return true;
}

}  // namespace semeq
