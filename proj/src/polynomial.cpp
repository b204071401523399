#include "semeq/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "semeq/errors.hpp"

namespace semeq {

const char* quotient_name(PolyQuotient q) {
  switch (q) {
    case PolyQuotient::NX: return "nx";
    case PolyQuotient::BX: return "bx";
    case PolyQuotient::WX: return "wx";
    case PolyQuotient::SX: return "sx";
    case PolyQuotient::SInfX: return "sinfx";
    case PolyQuotient::PosBool: return "posbool";
  }
  return "?";
}

std::optional<PolyQuotient> quotient_from_name(const std::string& s) {
  if (s == "nx") return PolyQuotient::NX;
  if (s == "bx") return PolyQuotient::BX;
  if (s == "wx") return PolyQuotient::WX;
  if (s == "sx") return PolyQuotient::SX;
  if (s == "sinfx") return PolyQuotient::SInfX;
  if (s == "posbool") return PolyQuotient::PosBool;
  return std::nullopt;
}

bool quotient_reachable(PolyQuotient from, PolyQuotient to) {
  if (from == to) return true;
  switch (from) {
    case PolyQuotient::NX:
      return to != PolyQuotient::NX;  // every other quotient lies below NX
    case PolyQuotient::BX:
      return to == PolyQuotient::WX;
    case PolyQuotient::SX:
      return to == PolyQuotient::SInfX || to == PolyQuotient::PosBool;
    default:
      return false;
  }
}

Monomial Monomial::var(int idx, Exp e) {
  Monomial m;
  if (!(e == Exp::fin(0))) m.exps.push_back({idx, e});
  return m;
}

Exp Monomial::exp_of(int var) const {
  for (const auto& [v, e] : exps)
    if (v == var) return e;
  return Exp::fin(0);
}

bool Monomial::has_infinite_exp() const {
  for (const auto& [v, e] : exps)
    if (e.inf) return true;
  return false;
}

Monomial Monomial::times(const Monomial& o, bool cap_at_one) const {
  Monomial r;
  std::size_t i = 0, j = 0;
  auto push = [&](int var, Exp e) {
    if (cap_at_one && (e.inf || e.v > 1)) e = Exp::fin(1);
    if (e.inf || e.v > 0) r.exps.push_back({var, e});
  };
  while (i < exps.size() || j < o.exps.size()) {
    if (j == o.exps.size() || (i < exps.size() && exps[i].first < o.exps[j].first)) {
      push(exps[i].first, exps[i].second);
      ++i;
    } else if (i == exps.size() || o.exps[j].first < exps[i].first) {
      push(o.exps[j].first, o.exps[j].second);
      ++j;
    } else {
      Exp a = exps[i].second, b = o.exps[j].second;
      Exp s;
      if (a.inf || b.inf) {
        s = Exp::infinity();
      } else {
        if (a.v > UINT64_MAX - b.v) throw ResourceError("monomial exponent overflow");
        s = Exp::fin(a.v + b.v);
      }
      push(exps[i].first, s);
      ++i;
      ++j;
    }
  }
  return r;
}

Monomial Monomial::collapse_exponents() const {
  Monomial r;
  for (const auto& [v, e] : exps) r.exps.push_back({v, Exp::fin(1)});
  return r;
}

// display precedence: lexicographically larger exponent vector first
bool Monomial::operator<(const Monomial& o) const {
  std::size_t i = 0, j = 0;
  auto ord = [](Exp e) -> std::uint64_t { return e.inf ? UINT64_MAX : e.v; };
  while (i < exps.size() && j < o.exps.size()) {
    if (exps[i].first != o.exps[j].first)
      // smaller variable index with nonzero exponent wins on that variable
      return exps[i].first < o.exps[j].first;
    if (!(exps[i].second == o.exps[j].second))
      return ord(exps[i].second) > ord(o.exps[j].second);
    ++i;
    ++j;
  }
  if (i < exps.size()) return true;   // this has an extra variable, other has 0 there
  return false;                        // equal or other longer
}

bool monomial_absorbs(const Monomial& absorber, const Monomial& m,
                      const std::optional<std::vector<int>>& Y) {
  if (Y) {
    for (int x : *Y)
      if (!(absorber.exp_of(x) <= m.exp_of(x))) return false;
    return true;
  }
  // all variables: union of supports
  std::size_t i = 0, j = 0;
  while (i < absorber.exps.size() || j < m.exps.size()) {
    int va = i < absorber.exps.size() ? absorber.exps[i].first : INT32_MAX;
    int vm = j < m.exps.size() ? m.exps[j].first : INT32_MAX;
    int v = std::min(va, vm);
    if (!(absorber.exp_of(v) <= m.exp_of(v))) return false;
    if (va == v) ++i;
    if (vm == v) ++j;
  }
  return true;
}

BigInt exponent_sum_eY(const Monomial& m, const std::vector<int>& Y) {
  BigInt s = 0;
  for (int x : Y) {
    Exp e = m.exp_of(x);
    if (e.inf) throw Error("exponent_sum_eY: infinite exponent inside Y");
    s += e.v;
  }
  return s;
}

std::vector<Monomial> normalize_absorptive(std::vector<Monomial> monomials) {
  std::vector<Monomial> out;
  for (std::size_t i = 0; i < monomials.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < monomials.size() && !dominated; ++j) {
      if (i == j || monomials[j] == monomials[i]) continue;
      if (monomial_absorbs(monomials[j], monomials[i])) dominated = true;
    }
    if (!dominated && std::find(out.begin(), out.end(), monomials[i]) == out.end())
      out.push_back(monomials[i]);
  }
  return out;
}

Polynomial Polynomial::one(PolyQuotient q, int nvars) {
  return from_terms(q, nvars, {{Monomial::one(), 1}});
}

Polynomial Polynomial::constant(PolyQuotient q, int nvars, const BigInt& c) {
  if (c == 0) return zero(q, nvars);
  return from_terms(q, nvars, {{Monomial::one(), c}});
}

Polynomial Polynomial::variable(PolyQuotient q, int nvars, int idx) {
  if (idx < 0 || idx >= nvars) throw Error("polynomial variable index out of range");
  return from_terms(q, nvars, {{Monomial::var(idx), 1}});
}

bool Polynomial::is_one() const {
  return terms_.size() == 1 && terms_[0].first.is_one() && terms_[0].second == 1;
}

bool Polynomial::operator==(const Polynomial& o) const {
  return quot_ == o.quot_ && nvars_ == o.nvars_ && terms_ == o.terms_;
}

Polynomial Polynomial::from_terms(PolyQuotient q, int nvars,
                                  std::vector<std::pair<Monomial, BigInt>> terms) {
  bool cap1 = q == PolyQuotient::WX || q == PolyQuotient::PosBool;
  bool absorptive = q == PolyQuotient::SX || q == PolyQuotient::SInfX ||
                    q == PolyQuotient::PosBool;
  bool keep_coeff = q == PolyQuotient::NX;

  std::map<Monomial, BigInt> combined;
  for (auto& [m, c] : terms) {
    if (c < 0) throw Error("negative coefficient in natural polynomial");
    if (c == 0) continue;
    for (const auto& [v, e] : m.exps) {
      if (v < 0 || v >= nvars) throw Error("monomial variable index out of range");
      if (e.inf && q != PolyQuotient::SInfX)
        throw FamilyMismatch("infinite exponent outside sinfx");
    }
    Monomial mm = cap1 ? m.collapse_exponents() : m;
    combined[mm] += c;
  }

  std::vector<std::pair<Monomial, BigInt>> out;
  if (absorptive) {
    std::vector<Monomial> ms;
    ms.reserve(combined.size());
    for (auto& [m, c] : combined) ms.push_back(m);
    for (auto& m : normalize_absorptive(std::move(ms))) out.push_back({m, 1});
  } else {
    for (auto& [m, c] : combined) out.push_back({m, keep_coeff ? c : BigInt(1)});
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  if (out.size() > kPolySizeCap)
    throw ResourceError("polynomial exceeds monomial cap of " +
                        std::to_string(kPolySizeCap));
  Polynomial p(q, nvars);
  p.terms_ = std::move(out);
  return p;
}

Polynomial poly_add(const Polynomial& p, const Polynomial& q) {
  if (p.quot_ != q.quot_ || p.nvars_ != q.nvars_)
    throw FamilyMismatch("polynomial addition across different quotients");
  auto terms = p.terms_;
  terms.insert(terms.end(), q.terms_.begin(), q.terms_.end());
  return Polynomial::from_terms(p.quot_, p.nvars_, std::move(terms));
}

Polynomial poly_mul(const Polynomial& p, const Polynomial& q) {
  if (p.quot_ != q.quot_ || p.nvars_ != q.nvars_)
    throw FamilyMismatch("polynomial multiplication across different quotients");
  if (p.terms_.size() * q.terms_.size() > kPolySizeCap)
    throw ResourceError("polynomial product exceeds monomial cap of " +
                        std::to_string(kPolySizeCap));
  bool cap1 = p.quot_ == PolyQuotient::WX || p.quot_ == PolyQuotient::PosBool;
  std::vector<std::pair<Monomial, BigInt>> terms;
  terms.reserve(p.terms_.size() * q.terms_.size());
  for (const auto& [mp, cp] : p.terms_)
    for (const auto& [mq, cq] : q.terms_)
      terms.push_back({mp.times(mq, cap1), cp * cq});
  return Polynomial::from_terms(p.quot_, p.nvars_, std::move(terms));
}

Polynomial project(const Polynomial& p, PolyQuotient target) {
  if (!quotient_reachable(p.quotient(), target))
    throw FamilyMismatch(std::string("quotient ") + quotient_name(target) +
                         " not reachable from " + quotient_name(p.quotient()));
  return Polynomial::from_terms(target, p.nvars(), p.terms());
}

bool in_value_class(const Polynomial& p, const BigInt& c, std::uint64_t e) {
  if (p.quotient() != PolyQuotient::NX) throw FamilyMismatch("value class is for nx");
  for (const auto& [m, coeff] : p.terms()) {
    if (coeff >= c) return false;
    for (const auto& [v, ex] : m.exps)
      if (ex.inf || ex.v >= e) return false;
  }
  return true;
}

BigInt kronecker_eval(const Polynomial& p, const BigInt& c, std::uint64_t e) {
  if (p.quotient() != PolyQuotient::NX)
    throw FamilyMismatch("kronecker evaluation is for nx");
  if (c < 2 || e < 1) throw Error("kronecker map needs c >= 2, e >= 1");
  BigInt total = 0;
  for (const auto& [m, coeff] : p.terms()) {
    BigInt expo = 0;  // sum of m(x_j) * e^j, 0-based j
    for (const auto& [v, ex] : m.exps) {
      if (ex.inf) throw FamilyMismatch("infinite exponent in nx polynomial");
      expo += BigInt(ex.v) * ipow(BigInt(e), BigInt(v));
    }
    total += coeff * ipow(c, expo);
  }
  return total;
}

std::optional<YSeparation> find_Y_separating(const Polynomial& p, const Polynomial& q) {
  auto ok = [](const Polynomial& r) {
    return r.quotient() == PolyQuotient::SInfX || r.quotient() == PolyQuotient::SX;
  };
  if (!ok(p) || !ok(q) || p.nvars() != q.nvars())
    throw FamilyMismatch("Y-separation is for sinfx polynomials over one variable set");
  if (p.terms() == q.terms()) return std::nullopt;

  auto scan = [&](const Polynomial& a, const Polynomial& b,
                  bool from_p) -> std::optional<YSeparation> {
    for (const auto& [m, c] : a.terms()) {
      bool absorbed = false;
      for (const auto& [mb, cb] : b.terms())
        if (monomial_absorbs(mb, m)) { absorbed = true; break; }
      if (!absorbed) {
        YSeparation ys;
        ys.m = m;
        for (int x = 0; x < a.nvars(); ++x)
          if (!m.exp_of(x).inf) ys.Y.push_back(x);
        ys.bound = exponent_sum_eY(m, ys.Y);
        ys.from_p = from_p;
        return ys;
      }
    }
    return std::nullopt;
  };
  if (auto r = scan(p, q, true)) return r;
  if (auto r = scan(q, p, false)) return r;
  // mutual absorption of antichains forces equality, so this is unreachable
  throw Error("distinct antichains with mutual absorption");
}

std::string poly_to_string(const Polynomial& p, const std::vector<std::string>& vars) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first_term = true;
  for (const auto& [m, c] : p.terms()) {
    if (!first_term) out += " + ";
    first_term = false;
    bool wrote = false;
    if (c != 1 || m.is_one()) {
      out += c.str();
      wrote = true;
    }
    for (const auto& [v, e] : m.exps) {
      if (wrote) out += "*";
      out += vars.at(v);
      if (e.inf)
        out += "^inf";
      else if (e.v != 1)
        out += "^" + std::to_string(e.v);
      wrote = true;
    }
  }
  return out;
}

namespace {

struct PolyLexer {
  const std::string& s;
  std::size_t i = 0;
  void skip() { while (i < s.size() && std::isspace((unsigned char)s[i])) ++i; }
  bool eof() { skip(); return i >= s.size(); }
  char peek() { skip(); return i < s.size() ? s[i] : '\0'; }
  std::string ident() {
    skip();
    std::size_t start = i;
    while (i < s.size() && (std::isalnum((unsigned char)s[i]) || s[i] == '_')) ++i;
    if (start == i) throw ParseError("expected identifier in polynomial", i);
    return s.substr(start, i - start);
  }
  BigInt number() {
    skip();
    std::size_t start = i;
    while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
    if (start == i) throw ParseError("expected number in polynomial", i);
    return BigInt(s.substr(start, i - start));
  }
};

}  // namespace

Polynomial poly_from_string(PolyQuotient q, const std::vector<std::string>& vars,
                            const std::string& text) {
  PolyLexer lx{text};
  std::vector<std::pair<Monomial, BigInt>> terms;
  auto var_index = [&](const std::string& name) {
    for (std::size_t k = 0; k < vars.size(); ++k)
      if (vars[k] == name) return (int)k;
    throw ParseError("unknown polynomial variable '" + name + "'", lx.i);
  };
  while (true) {
    BigInt coeff = 1;
    bool saw_coeff = false;
    Monomial m;
    while (true) {
      char c = lx.peek();
      if (std::isdigit((unsigned char)c)) {
        if (saw_coeff) throw ParseError("two coefficients in one term", lx.i);
        coeff = lx.number();
        saw_coeff = true;
      } else if (std::isalpha((unsigned char)c) || c == '_') {
        std::string name = lx.ident();
        Exp e = Exp::fin(1);
        if (lx.peek() == '^') {
          ++lx.i;
          if (std::isdigit((unsigned char)lx.peek())) {
            BigInt n = lx.number();
            if (n > UINT32_MAX) throw ParseError("exponent too large", lx.i);
            e = Exp::fin((std::uint64_t)n);
          } else if (lx.ident() == "inf") {
            e = Exp::infinity();
          } else {
            throw ParseError("bad exponent", lx.i);
          }
        }
        m = m.times(Monomial::var(var_index(name), e), false);
      } else {
        throw ParseError("expected coefficient or variable", lx.i);
      }
      if (lx.peek() == '*') { ++lx.i; continue; }
      break;
    }
    terms.push_back({m, coeff});
    if (lx.peek() == '+') { ++lx.i; continue; }
    break;
  }
  if (!lx.eof()) throw ParseError("trailing input after polynomial", lx.i);
  return Polynomial::from_terms(q, (int)vars.size(), std::move(terms));
}

}  // namespace semeq
