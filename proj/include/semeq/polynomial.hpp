#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "semeq/bigint.hpp"

namespace semeq {

// Quotients of the natural polynomial semiring, ordered by reachability:
// NX -> BX -> WX, NX -> SX -> {SInfX, PosBool}.
enum class PolyQuotient { NX, BX, WX, SX, SInfX, PosBool };

const char* quotient_name(PolyQuotient q);
std::optional<PolyQuotient> quotient_from_name(const std::string& s);
bool quotient_reachable(PolyQuotient from, PolyQuotient to);

// Exponent in N or infinity (infinity only inside S^inf[X]).
struct Exp {
  std::uint64_t v = 0;
  bool inf = false;

  static Exp fin(std::uint64_t n) { return Exp{n, false}; }
  static Exp infinity() { return Exp{0, true}; }
  bool operator==(const Exp& o) const { return inf == o.inf && (inf || v == o.v); }
  // infinity compares above every finite exponent
  bool operator<=(const Exp& o) const { return o.inf || (!inf && v <= o.v); }
};

// Sparse monomial: sorted (variable index, exponent) pairs, exponent never 0.
struct Monomial {
  std::vector<std::pair<int, Exp>> exps;

  static Monomial one() { return Monomial{}; }
  static Monomial var(int idx, Exp e = Exp::fin(1));

  Exp exp_of(int var) const;
  bool is_one() const { return exps.empty(); }
  bool has_infinite_exp() const;
  // product; caps every exponent at 1 when cap_at_one (W[X], PosBool[X])
  Monomial times(const Monomial& o, bool cap_at_one) const;
  Monomial collapse_exponents() const;  // every nonzero exponent becomes 1

  bool operator==(const Monomial& o) const { return exps == o.exps; }
  bool operator<(const Monomial& o) const;  // canonical term order
};

// this absorbs m within S[X]/S^inf[X]: exponents pointwise <= on the given
// variable set (all variables when Y is empty-optional).
bool monomial_absorbs(const Monomial& absorber, const Monomial& m,
                      const std::optional<std::vector<int>>& Y = std::nullopt);

// e_Y(m) = sum of m's exponents on Y; requires them finite.
BigInt exponent_sum_eY(const Monomial& m, const std::vector<int>& Y);

// Polynomial in one of the quotients. Invariants (enforced on construction):
// terms sorted by monomial order; NX coefficients >= 1; all other quotients are
// coefficient-free monomial sets; SX/SInfX/PosBool terms form an antichain
// under absorption; WX/PosBool exponents are <= 1; infinite exponents only in
// SInfX.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(PolyQuotient q, int nvars) : quot_(q), nvars_(nvars) {}

  static Polynomial zero(PolyQuotient q, int nvars) { return Polynomial(q, nvars); }
  static Polynomial one(PolyQuotient q, int nvars);
  static Polynomial constant(PolyQuotient q, int nvars, const BigInt& c);
  static Polynomial variable(PolyQuotient q, int nvars, int idx);
  // normalizes raw terms into the quotient
  static Polynomial from_terms(PolyQuotient q, int nvars,
                               std::vector<std::pair<Monomial, BigInt>> terms);

  PolyQuotient quotient() const { return quot_; }
  int nvars() const { return nvars_; }
  const std::vector<std::pair<Monomial, BigInt>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;

  bool operator==(const Polynomial& o) const;

  friend Polynomial poly_add(const Polynomial& p, const Polynomial& q);
  friend Polynomial poly_mul(const Polynomial& p, const Polynomial& q);

 private:
  PolyQuotient quot_ = PolyQuotient::NX;
  int nvars_ = 0;
  std::vector<std::pair<Monomial, BigInt>> terms_;
};

Polynomial poly_add(const Polynomial& p, const Polynomial& q);
Polynomial poly_mul(const Polynomial& p, const Polynomial& q);

// Keeps the absorption-minimal monomials (antichain normal form).
std::vector<Monomial> normalize_absorptive(std::vector<Monomial> monomials);

// Quotient projection along a reachable path; verified homomorphism.
Polynomial project(const Polynomial& p, PolyQuotient target);

// Whether every coefficient is < c and every exponent is < e (class N[X](c,e)).
bool in_value_class(const Polynomial& p, const BigInt& c, std::uint64_t e);

// Evaluates p in N at x_j = c^(e^(j-1)); bijective on N[X](c,e).
BigInt kronecker_eval(const Polynomial& p, const BigInt& c, std::uint64_t e);

struct YSeparation {
  Monomial m;
  std::vector<int> Y;  // variables of m with finite exponent
  BigInt bound;        // e_Y(m)
  bool from_p;         // which side the monomial came from
};

// For distinct SInfX polynomials: a monomial of one side not Y-absorbed by any
// monomial of the other, with its finite exponent sum. NONE iff p == q.
std::optional<YSeparation> find_Y_separating(const Polynomial& p, const Polynomial& q);

// Text syntax: "3*x^2*y + x*y^inf + 1", "0". Variables resolved by name.
std::string poly_to_string(const Polynomial& p, const std::vector<std::string>& vars);
Polynomial poly_from_string(PolyQuotient q, const std::vector<std::string>& vars,
                            const std::string& text);

// Monomial-count cap for products and normalization intermediates.
inline constexpr std::size_t kPolySizeCap = 10000;

}  // namespace semeq
