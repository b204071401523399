#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "helpers.hpp"
#include "semeq/polynomial.hpp"

using namespace semeq;

namespace {

Polynomial P(PolyQuotient q, const std::string& text,
             std::vector<std::string> vars = {"x", "y"}) {
  return poly_from_string(q, vars, text);
}

Monomial mono(PolyQuotient q, const std::string& text,
              std::vector<std::string> vars = {"x", "y"}) {
  auto p = poly_from_string(q, vars, text);
  REQUIRE(p.terms().size() == 1);
  return p.terms()[0].first;
}

Polynomial random_poly(PolyQuotient q, int nvars, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nterms(0, 3), coef(1, 3), expo(0, 2);
  std::vector<std::pair<Monomial, BigInt>> terms;
  int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    Monomial m;
    for (int v = 0; v < nvars; ++v) {
      int e = expo(rng);
      if (e > 0) m.exps.push_back({v, Exp::fin((std::uint64_t)e)});
    }
    terms.push_back({m, coef(rng)});
  }
  return Polynomial::from_terms(q, nvars, terms);
}

}  // namespace

TEST_CASE("quotient names and reachability") {
  CHECK(quotient_from_name("nx") == PolyQuotient::NX);
  CHECK(quotient_from_name("sinfx") == PolyQuotient::SInfX);
  CHECK_FALSE(quotient_from_name("zz").has_value());
  for (auto q : {PolyQuotient::NX, PolyQuotient::BX, PolyQuotient::WX,
                 PolyQuotient::SX, PolyQuotient::SInfX, PolyQuotient::PosBool})
    CHECK(quotient_from_name(quotient_name(q)) == q);

  CHECK(quotient_reachable(PolyQuotient::NX, PolyQuotient::WX));
  CHECK(quotient_reachable(PolyQuotient::NX, PolyQuotient::PosBool));
  CHECK(quotient_reachable(PolyQuotient::SX, PolyQuotient::SInfX));
  CHECK_FALSE(quotient_reachable(PolyQuotient::BX, PolyQuotient::SX));
  CHECK_FALSE(quotient_reachable(PolyQuotient::WX, PolyQuotient::NX));
  CHECK_FALSE(quotient_reachable(PolyQuotient::SInfX, PolyQuotient::PosBool));
}

TEST_CASE("construction normalizes into the quotient") {
  // absorption: x soaks up x*y
  CHECK(P(PolyQuotient::SX, "x + x*y") == P(PolyQuotient::SX, "x"));
  // free semiring keeps coefficients and exponents
  auto p = P(PolyQuotient::NX, "2*x^2 + 3");
  CHECK(poly_add(p, Polynomial::zero(PolyQuotient::NX, 2)) == p);
  CHECK(poly_to_string(p, {"x", "y"}) == "2*x^2 + 3");
  // W caps exponents and drops coefficients
  CHECK(P(PolyQuotient::WX, "3*x^2") == P(PolyQuotient::WX, "x"));
  // infinite exponents only live in the absorptive-infinity quotient
  CHECK(P(PolyQuotient::SInfX, "x^inf").terms()[0].first.has_infinite_exp());
  CHECK_THROWS_AS(P(PolyQuotient::NX, "x^inf"), Error);
}

TEST_CASE("antichain normalization") {
  auto x = mono(PolyQuotient::SX, "x");
  auto xy = mono(PolyQuotient::SX, "x*y");
  auto x2 = mono(PolyQuotient::SX, "x^2");

  auto n1 = normalize_absorptive({x, xy});
  REQUIRE(n1.size() == 1);
  CHECK(n1[0] == x);

  auto n2 = normalize_absorptive({x2, xy});
  CHECK(n2.size() == 2);

  CHECK(normalize_absorptive({}).empty());
}

TEST_CASE("normalization is idempotent and order-independent") {
  std::mt19937_64 rng(testutil::kSeed);
  std::uniform_int_distribution<int> expo(0, 3), nmons(0, 5);
  for (int i = 0; i < 500; ++i) {
    std::vector<Monomial> ms;
    int n = nmons(rng);
    for (int t = 0; t < n; ++t) {
      Monomial m;
      for (int v = 0; v < 2; ++v) {
        int e = expo(rng);
        if (e == 3) m.exps.push_back({v, Exp::infinity()});
        else if (e > 0) m.exps.push_back({v, Exp::fin((std::uint64_t)e)});
      }
      ms.push_back(m);
    }
    auto once = normalize_absorptive(ms);
    auto twice = normalize_absorptive(once);
    auto sorted_eq = [](std::vector<Monomial> a, std::vector<Monomial> b) {
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      return a == b;
    };
    CHECK(sorted_eq(once, twice));
    std::shuffle(ms.begin(), ms.end(), rng);
    CHECK(sorted_eq(once, normalize_absorptive(ms)));
  }
}

TEST_CASE("absorption between monomials") {
  auto x = mono(PolyQuotient::SInfX, "x");
  auto x2 = mono(PolyQuotient::SInfX, "x^2");
  auto x2y = mono(PolyQuotient::SInfX, "x^2*y");
  auto x3yi = mono(PolyQuotient::SInfX, "x^3*y^inf");
  auto xiyi = mono(PolyQuotient::SInfX, "x^inf*y^inf");

  CHECK(monomial_absorbs(x, x2y));
  CHECK_FALSE(monomial_absorbs(x2, x));
  // restricted to Y = {x} the infinite y-exponents drop out
  CHECK(monomial_absorbs(x3yi, xiyi, std::vector<int>{0}));
  CHECK_FALSE(monomial_absorbs(x3yi, xiyi));

  CHECK(exponent_sum_eY(x3yi, {0}) == 3);
  CHECK(exponent_sum_eY(x3yi, {}) == 0);
  CHECK(exponent_sum_eY(mono(PolyQuotient::SInfX, "x^2*y^3"), {0, 1}) == 5);
  CHECK_THROWS_AS(exponent_sum_eY(x3yi, {0, 1}), Error);
}

TEST_CASE("Y-separation examples") {
  auto p = P(PolyQuotient::SInfX, "x^3*y^inf");
  auto q = P(PolyQuotient::SInfX, "x^inf*y^inf");
  auto sep = find_Y_separating(p, q);
  REQUIRE(sep.has_value());
  CHECK(sep->Y == std::vector<int>{0});
  CHECK(sep->bound == 3);
  CHECK(sep->m == mono(PolyQuotient::SInfX, "x^3*y^inf"));
  CHECK(sep->from_p);

  CHECK_FALSE(find_Y_separating(p, p).has_value());

  auto sum = P(PolyQuotient::SInfX, "x + y");
  auto prod = P(PolyQuotient::SInfX, "x*y");
  auto sep2 = find_Y_separating(sum, prod);
  REQUIRE(sep2.has_value());
  CHECK(sep2->bound == 1);
  CHECK(sep2->Y == std::vector<int>{0, 1});
}

TEST_CASE("Y-separation exists exactly for distinct polynomials") {
  std::mt19937_64 rng(testutil::kSeed);
  std::uniform_int_distribution<int> expo(0, 3), nmons(0, 3);
  auto rand_sinf = [&] {
    std::vector<std::pair<Monomial, BigInt>> terms;
    int n = nmons(rng);
    for (int t = 0; t < n; ++t) {
      Monomial m;
      for (int v = 0; v < 2; ++v) {
        int e = expo(rng);
        if (e == 3) m.exps.push_back({v, Exp::infinity()});
        else if (e > 0) m.exps.push_back({v, Exp::fin((std::uint64_t)e)});
      }
      terms.push_back({m, 1});
    }
    return Polynomial::from_terms(PolyQuotient::SInfX, 2, terms);
  };
  for (int i = 0; i < 500; ++i) {
    auto p = rand_sinf(), q = rand_sinf();
    auto sep = find_Y_separating(p, q);
    CHECK(sep.has_value() == !(p == q));
    if (!sep) continue;
    // re-check: the monomial is not Y-absorbed by any monomial opposite,
    // and the bound is its exponent sum over Y
    const auto& other = sep->from_p ? q : p;
    for (const auto& [m, c] : other.terms())
      CHECK_FALSE(monomial_absorbs(m, sep->m, sep->Y));
    CHECK(exponent_sum_eY(sep->m, sep->Y) == sep->bound);
  }
}

TEST_CASE("projection along the quotient maps") {
  auto p = P(PolyQuotient::NX, "2*x^2 + 3");
  CHECK(poly_to_string(project(p, PolyQuotient::BX), {"x", "y"}) == "x^2 + 1");
  CHECK(poly_to_string(project(p, PolyQuotient::WX), {"x", "y"}) == "x + 1");
  // the constant absorbs everything in the absorptive quotient
  CHECK(poly_to_string(project(p, PolyQuotient::SX), {"x", "y"}) == "1");
  CHECK(project(p, PolyQuotient::NX) == p);
  CHECK_THROWS_AS(project(project(p, PolyQuotient::WX), PolyQuotient::SX), Error);
}

TEST_CASE("projection commutes with addition and multiplication") {
  std::mt19937_64 rng(testutil::kSeed);
  for (auto target : {PolyQuotient::BX, PolyQuotient::WX, PolyQuotient::SX,
                      PolyQuotient::SInfX, PolyQuotient::PosBool}) {
    CAPTURE(quotient_name(target));
    for (int i = 0; i < 250; ++i) {
      auto p = random_poly(PolyQuotient::NX, 2, rng);
      auto q = random_poly(PolyQuotient::NX, 2, rng);
      CHECK(project(poly_add(p, q), target) ==
            poly_add(project(p, target), project(q, target)));
      CHECK(project(poly_mul(p, q), target) ==
            poly_mul(project(p, target), project(q, target)));
    }
  }
}

TEST_CASE("value class membership") {
  auto p = P(PolyQuotient::NX, "2*x^2 + 3");
  CHECK(in_value_class(p, 4, 3));
  CHECK_FALSE(in_value_class(p, 3, 3));  // the constant 3 needs c > 3
  CHECK_FALSE(in_value_class(p, 4, 2));  // the exponent 2 needs e > 2
  CHECK(in_value_class(Polynomial::zero(PolyQuotient::NX, 2), 2, 1));
}

TEST_CASE("digit encoding on one variable") {
  std::vector<std::string> reprs = {"0", "1", "x", "x + 1"};
  std::vector<BigInt> images;
  for (const auto& r : reprs)
    images.push_back(kronecker_eval(P(PolyQuotient::NX, r, {"x"}), 2, 2));
  CHECK(images == std::vector<BigInt>{0, 1, 2, 3});
}

TEST_CASE("digit encoding is bijective on every desk-scale class") {
  // enumerate all polynomials with coefficients < c and exponents < e over
  // nvars variables; their encodings must hit 0 .. c^(e^nvars) - 1 exactly
  auto enumerate_class = [](int c, int e, int nvars) {
    int slots = 1;
    for (int v = 0; v < nvars; ++v) slots *= e;
    std::vector<Polynomial> out;
    std::vector<int> coef(slots, 0);
    while (true) {
      std::vector<std::pair<Monomial, BigInt>> terms;
      for (int s = 0; s < slots; ++s) {
        if (coef[s] == 0) continue;
        Monomial m;
        int rest = s;
        for (int v = 0; v < nvars; ++v) {
          int ex = rest % e;
          rest /= e;
          if (ex > 0) m.exps.push_back({v, Exp::fin((std::uint64_t)ex)});
        }
        terms.push_back({m, coef[s]});
      }
      out.push_back(Polynomial::from_terms(PolyQuotient::NX, nvars, terms));
      int pos = 0;
      while (pos < slots && coef[pos] == c - 1) coef[pos++] = 0;
      if (pos == slots) break;
      ++coef[pos];
    }
    return out;
  };

  for (auto [c, e, nvars] : std::vector<std::tuple<int, int, int>>{
           {2, 2, 1}, {2, 2, 2}, {3, 2, 1}, {2, 2, 3}, {4, 2, 1}, {2, 3, 1},
           {3, 3, 1}, {2, 4, 1}, {2, 3, 2}}) {
    CAPTURE(c);
    CAPTURE(e);
    CAPTURE(nvars);
    auto cls = enumerate_class(c, e, nvars);
    BigInt total = ipow(c, (int)ipow(e, nvars));
    REQUIRE(BigInt(cls.size()) == total);
    std::set<BigInt> images;
    for (const auto& p : cls) {
      CHECK(in_value_class(p, c, (std::uint64_t)e));
      images.insert(kronecker_eval(p, c, (std::uint64_t)e));
    }
    CHECK(BigInt(images.size()) == total);
    CHECK(*images.begin() == 0);
    CHECK(*images.rbegin() == total - 1);
  }
}

TEST_CASE("digit encoding is a verified homomorphism") {
  auto NX2 = SemiringDescriptor::poly(PolyQuotient::NX, {"x", "y"});
  CHECK(verify_hom(hom_kronecker(NX2, 2, 2)).ok);
  auto NX1 = SemiringDescriptor::poly(PolyQuotient::NX, {"x"});
  CHECK(verify_hom(hom_kronecker(NX1, 3, 2)).ok);
}

TEST_CASE("polynomial text round trip") {
  std::mt19937_64 rng(testutil::kSeed);
  for (auto q : {PolyQuotient::NX, PolyQuotient::BX, PolyQuotient::WX,
                 PolyQuotient::SX, PolyQuotient::PosBool}) {
    for (int i = 0; i < 200; ++i) {
      auto p = random_poly(q, 2, rng);
      CHECK(poly_from_string(q, {"x", "y"}, poly_to_string(p, {"x", "y"})) == p);
    }
  }
  CHECK(poly_to_string(Polynomial::zero(PolyQuotient::NX, 2), {"x", "y"}) == "0");
  CHECK_THROWS_AS(P(PolyQuotient::NX, "x + "), ParseError);
  CHECK_THROWS_AS(P(PolyQuotient::NX, "z"), ParseError);
}

TEST_CASE("product size stays capped") {
  // (x + y + 1)^k grows; the cap must reject instead of thrashing
  auto p = P(PolyQuotient::NX, "x + y + 1");
  Polynomial acc = Polynomial::one(PolyQuotient::NX, 2);
  CHECK_THROWS_AS(
      [&] {
        for (int i = 0; i < 300; ++i) acc = poly_mul(acc, p);
      }(),
      ResourceError);
}
