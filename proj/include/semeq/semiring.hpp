#pragma once

#include <array>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "semeq/bigint.hpp"
#include "semeq/errors.hpp"
#include "semeq/polynomial.hpp"

namespace semeq {

enum class Family {
  Boolean,     // ({0,1}, or, and)
  Nat,         // (N, +, *)
  NatInf,      // N with infinity
  NatTrunc,    // ({0..k}, min(s+t,k), min(s*t,k))
  Tropical,    // (R>=0 + inf, min, +, inf, 0), rational carrier
  Viterbi,     // ([0,1], max, *, 0, 1), rational carrier
  Lukasiewicz, // ([0,1], max, max(s+t-1,0), 0, 1)
  Doubt,       // ([0,1], min, min(s+t,1), 1, 0)
  MinMax,      // ({0..k}, max, min, 0, k)
  FiniteTable, // user supplied operation tables
  Poly,        // polynomial quotients over a fixed variable list
};

// User semiring given by explicit operation tables over named elements.
class TableSemiring {
 public:
  std::vector<std::string> carrier;
  int zero = -1, one = -1;
  std::vector<std::vector<int>> add, mul;  // carrier-index tables

  int index_of(const std::string& name) const;
  static TableSemiring load(const std::string& path);
  static TableSemiring parse(const std::string& text);
  std::string dump() const;
  bool operator==(const TableSemiring& o) const = default;
};

struct Violation {
  TableAxiom code;
  std::string detail;
};

// All semiring axioms plus natural-order antisymmetry; empty result means valid.
std::vector<Violation> validate_table_semiring(const TableSemiring& t);

class SemiringDescriptor;
using SemiringPtr = std::shared_ptr<const SemiringDescriptor>;

class SemiringDescriptor {
 public:
  Family family;
  int bound = 0;  // NatTrunc / MinMax parameter k
  std::shared_ptr<const TableSemiring> table;
  PolyQuotient quot = PolyQuotient::NX;
  std::vector<std::string> vars;

  static SemiringPtr boolean();
  static SemiringPtr nat();
  static SemiringPtr nat_inf();
  static SemiringPtr nat_trunc(int k);
  static SemiringPtr tropical();
  static SemiringPtr viterbi();
  static SemiringPtr lukasiewicz();
  static SemiringPtr doubt();
  static SemiringPtr min_max(int k);
  // Validates the table before accepting it.
  static SemiringPtr finite_table(TableSemiring t);
  static SemiringPtr poly(PolyQuotient q, std::vector<std::string> vars);

  // "nat", "minmax:4", "poly:sx:x,y", ... (table semirings render as "table").
  std::string name() const;
  // Parses a spec string; table paths are resolved against base_dir.
  static SemiringPtr from_spec(const std::string& spec, const std::string& base_dir);

  bool operator==(const SemiringDescriptor& o) const;
};

// Nat-or-infinity payload.
struct ExtNat {
  BigInt v;
  bool inf = false;
  bool operator==(const ExtNat& o) const { return inf == o.inf && (inf || v == o.v); }
};

// Non-negative-rational-or-infinity payload (tropical carrier).
struct ExtRat {
  BigRat v;
  bool inf = false;
  bool operator==(const ExtRat& o) const { return inf == o.inf && (inf || v == o.v); }
};

// Exact tagged semiring element. Payload interpretation depends on the family:
// BigInt for Boolean/Nat/NatTrunc/MinMax and as carrier index for FiniteTable;
// ExtNat for NatInf; ExtRat for Tropical; BigRat for the unit-interval
// semirings; Polynomial for Poly.
class Value {
 public:
  Value() = default;
  Value(SemiringPtr sr, std::variant<BigInt, ExtNat, ExtRat, BigRat, Polynomial> payload);

  const SemiringPtr& semiring() const { return sr_; }
  const BigInt& as_int() const { return std::get<BigInt>(payload_); }
  const ExtNat& as_extnat() const { return std::get<ExtNat>(payload_); }
  const ExtRat& as_extrat() const { return std::get<ExtRat>(payload_); }
  const BigRat& as_rat() const { return std::get<BigRat>(payload_); }
  const Polynomial& as_poly() const { return std::get<Polynomial>(payload_); }

  bool operator==(const Value& o) const;
  bool operator!=(const Value& o) const { return !(*this == o); }
  // total order for deterministic containers; not the natural order
  bool operator<(const Value& o) const;

 private:
  SemiringPtr sr_;
  std::variant<BigInt, ExtNat, ExtRat, BigRat, Polynomial> payload_;
};

Value sr_zero(const SemiringPtr& S);
Value sr_one(const SemiringPtr& S);
Value sr_add(const SemiringPtr& S, const Value& s, const Value& t);
Value sr_mul(const SemiringPtr& S, const Value& s, const Value& t);

// Natural preorder: exists r with s + r = t. Closed forms for builtins,
// bounded search over the carrier for table semirings.
bool sr_nat_leq(const SemiringPtr& S, const Value& s, const Value& t);

// n-fold sum and n-fold product (n >= 0; empty sum 0, empty product 1).
Value sr_nsum(const SemiringPtr& S, const Value& v, const BigInt& n);
Value sr_npow(const SemiringPtr& S, const Value& v, const BigInt& n);

struct NIdemResult {
  bool holds;
  // stabilization witness when it fails on a finite carrier
  std::optional<Value> counterexample;
};

// n-idempotence via the stabilization test n*s = (n+1)*s and s^n = s^(n+1)
// over finite carriers; analytic answers for families with infinite carrier.
NIdemResult sr_check_n_idempotent(const SemiringPtr& S, const BigInt& n);

// Carrier enumeration for finite families (FiniteTable, Boolean, NatTrunc,
// MinMax, and PosBool with at most 3 variables). Empty optional otherwise.
std::optional<std::vector<Value>> carrier_elements(const SemiringPtr& S);

bool is_fully_idempotent(const SemiringPtr& S);
bool is_absorptive(const SemiringPtr& S);   // s + s*t = s on the whole carrier
bool is_lattice_semiring(const SemiringPtr& S);

// Value text syntax: decimal integers, rationals p/q, "inf", carrier names,
// polynomial expressions.
Value parse_value(const SemiringPtr& S, const std::string& text);
std::string format_value(const Value& v);

// Convenience constructors.
Value make_int(const SemiringPtr& S, const BigInt& n);      // numeric families
Value make_inf(const SemiringPtr& S);                       // NatInf / Tropical
Value make_rat(const SemiringPtr& S, const BigRat& r);      // rational families
Value make_table(const SemiringPtr& S, const std::string& name);
Value make_poly(const SemiringPtr& S, const Polynomial& p);

// Seeded sample for randomized verification; small-biased but covers extremes.
Value random_value(const SemiringPtr& S, std::mt19937_64& rng);

}  // namespace semeq
