#include "semeq/semiring.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace semeq {

const char* table_axiom_name(TableAxiom a) {
  switch (a) {
    case TableAxiom::Shape: return "table-shape";
    case TableAxiom::ZeroEqualsOne: return "zero-equals-one";
    case TableAxiom::AddNotCommutative: return "add-not-commutative";
    case TableAxiom::AddNotAssociative: return "add-not-associative";
    case TableAxiom::AddZeroNotIdentity: return "add-zero-not-identity";
    case TableAxiom::MulNotCommutative: return "mul-not-commutative";
    case TableAxiom::MulNotAssociative: return "mul-not-associative";
    case TableAxiom::MulOneNotIdentity: return "mul-one-not-identity";
    case TableAxiom::ZeroNotAnnihilating: return "zero-not-annihilating";
    case TableAxiom::NotDistributive: return "not-distributive";
    case TableAxiom::OrderNotAntisymmetric: return "order-not-antisymmetric";
  }
  return "?";
}

int TableSemiring::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < carrier.size(); ++i)
    if (carrier[i] == name) return (int)i;
  return -1;
}

TableSemiring TableSemiring::parse(const std::string& text) {
  TableSemiring t;
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<int>>* block = nullptr;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    std::vector<std::string> rest;
    std::string tok;
    while (ls >> tok) rest.push_back(tok);
    auto need_elem = [&](const std::string& name) {
      int i = t.index_of(name);
      if (i < 0) throw ParseError("unknown carrier element '" + name + "'");
      return i;
    };
    if (kw == "carrier") {
      if (rest.empty()) throw ParseError("empty carrier");
      t.carrier = rest;
    } else if (kw == "zero") {
      if (rest.size() != 1) throw ParseError("zero wants one element");
      t.zero = need_elem(rest[0]);
    } else if (kw == "one") {
      if (rest.size() != 1) throw ParseError("one wants one element");
      t.one = need_elem(rest[0]);
    } else if (kw == "add" || kw == "mul") {
      block = kw == "add" ? &t.add : &t.mul;
      std::vector<int> row;
      for (auto& name : rest) row.push_back(need_elem(name));
      block->push_back(std::move(row));
    } else {
      throw ParseError("unknown table keyword '" + kw + "'");
    }
  }
  return t;
}

TableSemiring TableSemiring::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open semiring table file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

std::string TableSemiring::dump() const {
  std::ostringstream out;
  out << "carrier";
  for (auto& c : carrier) out << " " << c;
  out << "\nzero " << carrier.at(zero) << "\none " << carrier.at(one) << "\n";
  for (auto [name, tbl] : {std::pair{"add", &add}, std::pair{"mul", &mul}})
    for (auto& row : *tbl) {
      out << name;
      for (int e : row) out << " " << carrier.at(e);
      out << "\n";
    }
  return out.str();
}

std::vector<Violation> validate_table_semiring(const TableSemiring& t) {
  std::vector<Violation> out;
  std::size_t n = t.carrier.size();
  auto el = [&](int i) { return t.carrier[i]; };

  if (n == 0) return {{TableAxiom::Shape, "empty carrier"}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (t.carrier[i] == t.carrier[j])
        return {{TableAxiom::Shape, "duplicate carrier name '" + t.carrier[i] + "'"}};
  if (t.zero < 0 || t.zero >= (int)n || t.one < 0 || t.one >= (int)n)
    return {{TableAxiom::Shape, "zero/one missing or out of range"}};
  for (auto* tbl : {&t.add, &t.mul}) {
    if (tbl->size() != n) return {{TableAxiom::Shape, "operation table needs one row per carrier element"}};
    for (auto& row : *tbl) {
      if (row.size() != n) return {{TableAxiom::Shape, "ragged operation row"}};
      for (int e : row)
        if (e < 0 || e >= (int)n) return {{TableAxiom::Shape, "table entry out of range"}};
    }
  }

  if (t.zero == t.one) out.push_back({TableAxiom::ZeroEqualsOne, "0 = 1"});

  auto check_comm = [&](const std::vector<std::vector<int>>& op, TableAxiom code,
                        const std::string& sym) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (op[a][b] != op[b][a]) {
          out.push_back({code, el(a) + sym + el(b) + " != " + el(b) + sym + el(a)});
          return;
        }
  };
  auto check_assoc = [&](const std::vector<std::vector<int>>& op, TableAxiom code,
                         const std::string& sym) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (op[op[a][b]][c] != op[a][op[b][c]]) {
            out.push_back({code, "(" + el(a) + sym + el(b) + ")" + sym + el(c) +
                                     " != " + el(a) + sym + "(" + el(b) + sym + el(c) + ")"});
            return;
          }
  };
  check_comm(t.add, TableAxiom::AddNotCommutative, "+");
  check_assoc(t.add, TableAxiom::AddNotAssociative, "+");
  check_comm(t.mul, TableAxiom::MulNotCommutative, "*");
  check_assoc(t.mul, TableAxiom::MulNotAssociative, "*");

  for (std::size_t a = 0; a < n; ++a)
    if (t.add[t.zero][a] != (int)a) {
      out.push_back({TableAxiom::AddZeroNotIdentity, "0+" + el(a) + " != " + el(a)});
      break;
    }
  for (std::size_t a = 0; a < n; ++a)
    if (t.mul[t.one][a] != (int)a) {
      out.push_back({TableAxiom::MulOneNotIdentity, "1*" + el(a) + " != " + el(a)});
      break;
    }
  for (std::size_t a = 0; a < n; ++a)
    if (t.mul[t.zero][a] != t.zero) {
      out.push_back({TableAxiom::ZeroNotAnnihilating, "0*" + el(a) + " != 0"});
      break;
    }
  [&] {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (t.mul[a][t.add[b][c]] != t.add[t.mul[a][b]][t.mul[a][c]]) {
            out.push_back({TableAxiom::NotDistributive,
                           el(a) + "*(" + el(b) + "+" + el(c) + ") != " + el(a) + "*" +
                               el(b) + "+" + el(a) + "*" + el(c)});
            return;
          }
  }();

  // natural preorder must be a partial order
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t r = 0; r < n; ++r)
        if (t.add[a][r] == (int)b) { leq[a][b] = true; break; }
  for (std::size_t a = 0; a < n && out.empty(); ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b && leq[a][b] && leq[b][a]) {
        out.push_back({TableAxiom::OrderNotAntisymmetric,
                       el(a) + " <= " + el(b) + " <= " + el(a)});
        return out;
      }
  return out;
}

// --- descriptor -------------------------------------------------------------

namespace {
SemiringPtr make_desc(Family f, int bound = 0,
                      std::shared_ptr<const TableSemiring> tbl = nullptr,
                      PolyQuotient q = PolyQuotient::NX,
                      std::vector<std::string> vars = {}) {
  auto d = std::make_shared<SemiringDescriptor>();
  d->family = f;
  d->bound = bound;
  d->table = std::move(tbl);
  d->quot = q;
  d->vars = std::move(vars);
  return d;
}
}  // namespace

SemiringPtr SemiringDescriptor::boolean() { static SemiringPtr s = make_desc(Family::Boolean); return s; }
SemiringPtr SemiringDescriptor::nat() { static SemiringPtr s = make_desc(Family::Nat); return s; }
SemiringPtr SemiringDescriptor::nat_inf() { static SemiringPtr s = make_desc(Family::NatInf); return s; }
SemiringPtr SemiringDescriptor::tropical() { static SemiringPtr s = make_desc(Family::Tropical); return s; }
SemiringPtr SemiringDescriptor::viterbi() { static SemiringPtr s = make_desc(Family::Viterbi); return s; }
SemiringPtr SemiringDescriptor::lukasiewicz() { static SemiringPtr s = make_desc(Family::Lukasiewicz); return s; }
SemiringPtr SemiringDescriptor::doubt() { static SemiringPtr s = make_desc(Family::Doubt); return s; }

SemiringPtr SemiringDescriptor::nat_trunc(int k) {
  if (k < 1) throw Error("nattrunc needs k >= 1");
  return make_desc(Family::NatTrunc, k);
}

SemiringPtr SemiringDescriptor::min_max(int k) {
  if (k < 1) throw Error("minmax needs k >= 1");
  return make_desc(Family::MinMax, k);
}

SemiringPtr SemiringDescriptor::finite_table(TableSemiring t) {
  auto viol = validate_table_semiring(t);
  if (!viol.empty()) throw ValidationError(viol[0].code, viol[0].detail);
  return make_desc(Family::FiniteTable, 0, std::make_shared<TableSemiring>(std::move(t)));
}

SemiringPtr SemiringDescriptor::poly(PolyQuotient q, std::vector<std::string> vars) {
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j]) throw Error("duplicate polynomial variable " + vars[i]);
  return make_desc(Family::Poly, 0, nullptr, q, std::move(vars));
}

std::string SemiringDescriptor::name() const {
  switch (family) {
    case Family::Boolean: return "boolean";
    case Family::Nat: return "nat";
    case Family::NatInf: return "natinf";
    case Family::NatTrunc: return "nattrunc:" + std::to_string(bound);
    case Family::Tropical: return "tropical";
    case Family::Viterbi: return "viterbi";
    case Family::Lukasiewicz: return "lukasiewicz";
    case Family::Doubt: return "doubt";
    case Family::MinMax: return "minmax:" + std::to_string(bound);
    case Family::FiniteTable: return "table";
    case Family::Poly: {
      std::string s = std::string("poly:") + quotient_name(quot) + ":";
      for (std::size_t i = 0; i < vars.size(); ++i) s += (i ? "," : "") + vars[i];
      return s;
    }
  }
  return "?";
}

SemiringPtr SemiringDescriptor::from_spec(const std::string& spec, const std::string& base_dir) {
  auto colon = spec.find(':');
  std::string head = spec.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto want_int = [&]() {
    try {
      std::size_t used = 0;
      int k = std::stoi(rest, &used);
      if (used != rest.size()) throw std::invalid_argument("");
      return k;
    } catch (...) { throw ParseError("bad parameter in semiring spec '" + spec + "'"); }
  };
  if (head == "boolean") return boolean();
  if (head == "nat") return nat();
  if (head == "natinf") return nat_inf();
  if (head == "tropical") return tropical();
  if (head == "viterbi") return viterbi();
  if (head == "lukasiewicz") return lukasiewicz();
  if (head == "doubt") return doubt();
  if (head == "nattrunc") return nat_trunc(want_int());
  if (head == "minmax") return min_max(want_int());
  if (head == "table") {
    std::string path = rest;
    if (!path.empty() && path[0] != '/' && !base_dir.empty()) path = base_dir + "/" + path;
    return finite_table(TableSemiring::load(path));
  }
  if (head == "poly") {
    auto c2 = rest.find(':');
    if (c2 == std::string::npos) throw ParseError("poly spec wants poly:<quot>:<vars>");
    auto q = quotient_from_name(rest.substr(0, c2));
    if (!q) throw ParseError("unknown polynomial quotient in '" + spec + "'");
    std::vector<std::string> vars;
    std::string vs = rest.substr(c2 + 1);
    std::string cur;
    for (char ch : vs) {
      if (ch == ',') { if (!cur.empty()) vars.push_back(cur); cur.clear(); }
      else cur += ch;
    }
    if (!cur.empty()) vars.push_back(cur);
    return poly(*q, std::move(vars));
  }
  throw ParseError("unknown semiring spec '" + spec + "'");
}

bool SemiringDescriptor::operator==(const SemiringDescriptor& o) const {
  if (family != o.family || bound != o.bound || quot != o.quot || vars != o.vars)
    return false;
  if (family == Family::FiniteTable) {
    if (table == o.table) return true;
    return table && o.table && *table == *o.table;
  }
  return true;
}

// --- values -----------------------------------------------------------------

namespace {
bool same_sr(const SemiringPtr& a, const SemiringPtr& b) {
  return a == b || (a && b && *a == *b);
}
void check_same(const SemiringPtr& S, const Value& v, const char* who) {
  if (!same_sr(S, v.semiring()))
    throw FamilyMismatch(std::string(who) + ": value from semiring " +
                         (v.semiring() ? v.semiring()->name() : "<none>") +
                         " used in " + S->name());
}
}  // namespace

Value::Value(SemiringPtr sr, std::variant<BigInt, ExtNat, ExtRat, BigRat, Polynomial> payload)
    : sr_(std::move(sr)), payload_(std::move(payload)) {
  if (!sr_) throw FamilyMismatch("value without semiring");
  auto bad = [&](const std::string& why) {
    throw FamilyMismatch("invalid value for " + sr_->name() + ": " + why);
  };
  switch (sr_->family) {
    case Family::Boolean:
      if (!std::holds_alternative<BigInt>(payload_)) bad("wrong payload");
      if (as_int() != 0 && as_int() != 1) bad("not 0/1");
      break;
    case Family::Nat:
      if (!std::holds_alternative<BigInt>(payload_)) bad("wrong payload");
      if (as_int() < 0) bad("negative");
      break;
    case Family::NatTrunc:
    case Family::MinMax:
      if (!std::holds_alternative<BigInt>(payload_)) bad("wrong payload");
      if (as_int() < 0 || as_int() > sr_->bound) bad("outside 0..k");
      break;
    case Family::FiniteTable:
      if (!std::holds_alternative<BigInt>(payload_)) bad("wrong payload");
      if (as_int() < 0 || as_int() >= (int)sr_->table->carrier.size()) bad("bad carrier index");
      break;
    case Family::NatInf:
      if (!std::holds_alternative<ExtNat>(payload_)) bad("wrong payload");
      if (!as_extnat().inf && as_extnat().v < 0) bad("negative");
      break;
    case Family::Tropical:
      if (!std::holds_alternative<ExtRat>(payload_)) bad("wrong payload");
      if (!as_extrat().inf && as_extrat().v < 0) bad("negative");
      break;
    case Family::Viterbi:
    case Family::Lukasiewicz:
    case Family::Doubt:
      if (!std::holds_alternative<BigRat>(payload_)) bad("wrong payload");
      if (as_rat() < 0 || as_rat() > 1) bad("outside [0,1]");
      break;
    case Family::Poly:
      if (!std::holds_alternative<Polynomial>(payload_)) bad("wrong payload");
      if (as_poly().quotient() != sr_->quot || as_poly().nvars() != (int)sr_->vars.size())
        bad("polynomial from different quotient or variable list");
      break;
  }
}

bool Value::operator==(const Value& o) const {
  if (!sr_ || !o.sr_) return !sr_ && !o.sr_;
  if (!same_sr(sr_, o.sr_)) return false;
  return payload_ == o.payload_;
}

bool Value::operator<(const Value& o) const {
  if (payload_.index() != o.payload_.index()) return payload_.index() < o.payload_.index();
  if (std::holds_alternative<BigInt>(payload_)) return as_int() < o.as_int();
  if (std::holds_alternative<ExtNat>(payload_)) {
    if (as_extnat().inf != o.as_extnat().inf) return !as_extnat().inf;
    return !as_extnat().inf && as_extnat().v < o.as_extnat().v;
  }
  if (std::holds_alternative<ExtRat>(payload_)) {
    if (as_extrat().inf != o.as_extrat().inf) return !as_extrat().inf;
    return !as_extrat().inf && as_extrat().v < o.as_extrat().v;
  }
  if (std::holds_alternative<BigRat>(payload_)) return as_rat() < o.as_rat();
  const auto& p = as_poly().terms();
  const auto& q = o.as_poly().terms();
  return std::lexicographical_compare(
      p.begin(), p.end(), q.begin(), q.end(), [](const auto& a, const auto& b) {
        if (!(a.first == b.first)) return a.first < b.first;
        return a.second < b.second;
      });
}

Value make_int(const SemiringPtr& S, const BigInt& n) {
  switch (S->family) {
    case Family::Boolean:
    case Family::Nat:
    case Family::NatTrunc:
    case Family::MinMax:
      return Value(S, n);
    case Family::NatInf:
      return Value(S, ExtNat{n, false});
    case Family::Tropical:
      return Value(S, ExtRat{BigRat(n), false});
    case Family::Viterbi:
    case Family::Lukasiewicz:
    case Family::Doubt:
      return Value(S, BigRat(n));
    case Family::Poly:
      return Value(S, Polynomial::constant(S->quot, (int)S->vars.size(), n));
    case Family::FiniteTable:
      throw FamilyMismatch("table semiring values are carrier names");
  }
  throw FamilyMismatch("make_int: unsupported family");
}

Value make_inf(const SemiringPtr& S) {
  if (S->family == Family::NatInf) return Value(S, ExtNat{0, true});
  if (S->family == Family::Tropical) return Value(S, ExtRat{BigRat(0), true});
  throw FamilyMismatch("inf only exists in natinf and tropical");
}

Value make_rat(const SemiringPtr& S, const BigRat& r) {
  if (S->family == Family::Tropical) return Value(S, ExtRat{r, false});
  if (S->family == Family::Viterbi || S->family == Family::Lukasiewicz ||
      S->family == Family::Doubt)
    return Value(S, r);
  if (denominator(r) == 1) return make_int(S, numerator(r));
  throw FamilyMismatch("rational value in non-rational semiring " + S->name());
}

Value make_table(const SemiringPtr& S, const std::string& name) {
  if (S->family != Family::FiniteTable) throw FamilyMismatch("not a table semiring");
  int i = S->table->index_of(name);
  if (i < 0) throw FamilyMismatch("unknown carrier element '" + name + "'");
  return Value(S, BigInt(i));
}

Value make_poly(const SemiringPtr& S, const Polynomial& p) { return Value(S, p); }

Value sr_zero(const SemiringPtr& S) {
  switch (S->family) {
    case Family::Tropical: return make_inf(S);
    case Family::Doubt: return make_rat(S, BigRat(1));
    case Family::FiniteTable: return Value(S, BigInt(S->table->zero));
    case Family::Poly: return Value(S, Polynomial::zero(S->quot, (int)S->vars.size()));
    default: return make_int(S, 0);
  }
}

Value sr_one(const SemiringPtr& S) {
  switch (S->family) {
    case Family::Tropical: return make_rat(S, BigRat(0));
    case Family::Doubt: return make_rat(S, BigRat(0));
    case Family::Viterbi:
    case Family::Lukasiewicz: return make_rat(S, BigRat(1));
    case Family::MinMax: return make_int(S, S->bound);
    case Family::FiniteTable: return Value(S, BigInt(S->table->one));
    case Family::Poly: return Value(S, Polynomial::one(S->quot, (int)S->vars.size()));
    default: return make_int(S, 1);
  }
}

Value sr_add(const SemiringPtr& S, const Value& s, const Value& t) {
  check_same(S, s, "sr_add");
  check_same(S, t, "sr_add");
  switch (S->family) {
    case Family::Boolean:
      return make_int(S, (s.as_int() != 0 || t.as_int() != 0) ? 1 : 0);
    case Family::Nat:
      return make_int(S, s.as_int() + t.as_int());
    case Family::NatTrunc: {
      BigInt r = s.as_int() + t.as_int();
      return make_int(S, r > S->bound ? BigInt(S->bound) : r);
    }
    case Family::MinMax:
      return make_int(S, std::max(s.as_int(), t.as_int()));
    case Family::NatInf:
      if (s.as_extnat().inf || t.as_extnat().inf) return make_inf(S);
      return make_int(S, s.as_extnat().v + t.as_extnat().v);
    case Family::Tropical: {  // min, with inf as neutral
      if (s.as_extrat().inf) return t;
      if (t.as_extrat().inf) return s;
      return make_rat(S, std::min(s.as_extrat().v, t.as_extrat().v));
    }
    case Family::Viterbi:
    case Family::Lukasiewicz:
      return make_rat(S, std::max(s.as_rat(), t.as_rat()));
    case Family::Doubt:
      return make_rat(S, std::min(s.as_rat(), t.as_rat()));
    case Family::FiniteTable:
      return Value(S, BigInt(S->table->add[(int)s.as_int()][(int)t.as_int()]));
    case Family::Poly:
      return Value(S, poly_add(s.as_poly(), t.as_poly()));
  }
  throw FamilyMismatch("sr_add: unsupported family");
}

Value sr_mul(const SemiringPtr& S, const Value& s, const Value& t) {
  check_same(S, s, "sr_mul");
  check_same(S, t, "sr_mul");
  switch (S->family) {
    case Family::Boolean:
      return make_int(S, (s.as_int() != 0 && t.as_int() != 0) ? 1 : 0);
    case Family::Nat:
      return make_int(S, s.as_int() * t.as_int());
    case Family::NatTrunc: {
      BigInt r = s.as_int() * t.as_int();
      return make_int(S, r > S->bound ? BigInt(S->bound) : r);
    }
    case Family::MinMax:
      return make_int(S, std::min(s.as_int(), t.as_int()));
    case Family::NatInf: {
      const auto &a = s.as_extnat(), &b = t.as_extnat();
      if ((!a.inf && a.v == 0) || (!b.inf && b.v == 0)) return make_int(S, 0);
      if (a.inf || b.inf) return make_inf(S);
      return make_int(S, a.v * b.v);
    }
    case Family::Tropical: {  // numeric addition, inf (= zero) absorbs
      if (s.as_extrat().inf || t.as_extrat().inf) return make_inf(S);
      return make_rat(S, s.as_extrat().v + t.as_extrat().v);
    }
    case Family::Viterbi:
      return make_rat(S, s.as_rat() * t.as_rat());
    case Family::Lukasiewicz:
      return make_rat(S, std::max(BigRat(s.as_rat() + t.as_rat() - 1), BigRat(0)));
    case Family::Doubt:
      return make_rat(S, std::min(BigRat(s.as_rat() + t.as_rat()), BigRat(1)));
    case Family::FiniteTable:
      return Value(S, BigInt(S->table->mul[(int)s.as_int()][(int)t.as_int()]));
    case Family::Poly:
      return Value(S, poly_mul(s.as_poly(), t.as_poly()));
  }
  throw FamilyMismatch("sr_mul: unsupported family");
}

bool sr_nat_leq(const SemiringPtr& S, const Value& s, const Value& t) {
  check_same(S, s, "sr_nat_leq");
  check_same(S, t, "sr_nat_leq");
  switch (S->family) {
    case Family::Boolean:
    case Family::Nat:
    case Family::NatTrunc:
    case Family::MinMax:
      return s.as_int() <= t.as_int();
    case Family::NatInf:
      if (t.as_extnat().inf) return true;
      if (s.as_extnat().inf) return false;
      return s.as_extnat().v <= t.as_extnat().v;
    case Family::Tropical:  // zero = inf sits at the bottom
      if (s.as_extrat().inf) return true;
      if (t.as_extrat().inf) return false;
      return t.as_extrat().v <= s.as_extrat().v;
    case Family::Viterbi:
    case Family::Lukasiewicz:
      return s.as_rat() <= t.as_rat();
    case Family::Doubt:
      return t.as_rat() <= s.as_rat();
    case Family::FiniteTable: {
      for (std::size_t r = 0; r < S->table->carrier.size(); ++r)
        if (S->table->add[(int)s.as_int()][r] == (int)t.as_int()) return true;
      return false;
    }
    case Family::Poly: {
      const auto &p = s.as_poly(), &q = t.as_poly();
      if (S->quot == PolyQuotient::NX) {
        // coefficient-wise comparison
        for (const auto& [m, c] : p.terms()) {
          BigInt cq = 0;
          for (const auto& [mq, c2] : q.terms())
            if (mq == m) { cq = c2; break; }
          if (c > cq) return false;
        }
        return true;
      }
      // additively idempotent quotients: s <= t iff s + t = t
      return poly_add(p, q) == q;
    }
  }
  throw FamilyMismatch("sr_nat_leq: unsupported family");
}

Value sr_nsum(const SemiringPtr& S, const Value& v, const BigInt& n) {
  check_same(S, v, "sr_nsum");
  if (n < 0) throw Error("sr_nsum: negative count");
  if (n == 0) return sr_zero(S);
  switch (S->family) {
    case Family::Boolean:
    case Family::MinMax:
    case Family::Tropical:
    case Family::Viterbi:
    case Family::Lukasiewicz:
    case Family::Doubt:
      return v;  // idempotent addition
    case Family::Nat:
      return make_int(S, v.as_int() * n);
    case Family::NatInf:
      if (v.as_extnat().inf) return v;
      return make_int(S, v.as_extnat().v * n);
    case Family::NatTrunc: {
      BigInt r = v.as_int() * n;
      return make_int(S, r > S->bound ? BigInt(S->bound) : r);
    }
    case Family::Poly:
      if (S->quot == PolyQuotient::NX) {
        std::vector<std::pair<Monomial, BigInt>> terms;
        for (const auto& [m, c] : v.as_poly().terms()) terms.push_back({m, c * n});
        return Value(S, Polynomial::from_terms(PolyQuotient::NX,
                                               v.as_poly().nvars(), std::move(terms)));
      }
      return v;  // the other quotients have idempotent addition
    case Family::FiniteTable: {
      // double-and-add over the table
      Value acc = sr_zero(S);
      Value base = v;
      BigInt e = n;
      while (e > 0) {
        if (bit_test(e, 0)) acc = sr_add(S, acc, base);
        e >>= 1;
        if (e > 0) base = sr_add(S, base, base);
      }
      return acc;
    }
  }
  throw FamilyMismatch("sr_nsum: unsupported family");
}

Value sr_npow(const SemiringPtr& S, const Value& v, const BigInt& n) {
  check_same(S, v, "sr_npow");
  if (n < 0) throw Error("sr_npow: negative exponent");
  if (n == 0) return sr_one(S);
  switch (S->family) {
    case Family::Boolean:
    case Family::MinMax:
      return v;  // idempotent multiplication
    case Family::Nat:
      return make_int(S, ipow(v.as_int(), n));
    case Family::NatInf:
      if (v.as_extnat().inf) return v;
      if (v.as_extnat().v == 0) return make_int(S, 0);
      if (v.as_extnat().v == 1) return make_int(S, 1);
      return make_int(S, ipow(v.as_extnat().v, n));
    case Family::NatTrunc: {
      Value acc = sr_one(S);
      Value base = v;
      BigInt e = n;
      while (e > 0) {  // saturating, so the loop stays cheap
        if (bit_test(e, 0)) acc = sr_mul(S, acc, base);
        e >>= 1;
        if (e > 0) base = sr_mul(S, base, base);
      }
      return acc;
    }
    case Family::Tropical: {
      if (v.as_extrat().inf) return v;
      return make_rat(S, v.as_extrat().v * BigRat(n));
    }
    case Family::Viterbi: {
      BigInt num = ipow(numerator(v.as_rat()), n), den = ipow(denominator(v.as_rat()), n);
      return make_rat(S, BigRat(num, den));
    }
    case Family::Lukasiewicz: {
      BigRat r = 1 - BigRat(n) * (1 - v.as_rat());
      return make_rat(S, r < 0 ? BigRat(0) : r);
    }
    case Family::Doubt: {
      BigRat r = BigRat(n) * v.as_rat();
      return make_rat(S, r > 1 ? BigRat(1) : r);
    }
    case Family::FiniteTable:
    case Family::Poly: {
      Value acc = sr_one(S);
      Value base = v;
      BigInt e = n;
      while (e > 0) {
        if (bit_test(e, 0)) acc = sr_mul(S, acc, base);
        e >>= 1;
        if (e > 0) {
          Value sq = sr_mul(S, base, base);
          if (sq == base && bit_test(e, 0) == false) {
            // multiplicatively stable from here on
          }
          base = std::move(sq);
        }
      }
      return acc;
    }
  }
  throw FamilyMismatch("sr_npow: unsupported family");
}

std::optional<std::vector<Value>> carrier_elements(const SemiringPtr& S) {
  std::vector<Value> out;
  switch (S->family) {
    case Family::Boolean:
      return std::vector<Value>{make_int(S, 0), make_int(S, 1)};
    case Family::NatTrunc:
    case Family::MinMax:
      for (int i = 0; i <= S->bound; ++i) out.push_back(make_int(S, i));
      return out;
    case Family::FiniteTable:
      for (std::size_t i = 0; i < S->table->carrier.size(); ++i)
        out.push_back(Value(S, BigInt((long)i)));
      return out;
    case Family::Poly: {
      if (S->quot != PolyQuotient::PosBool || S->vars.size() > 3) return std::nullopt;
      int nv = (int)S->vars.size();
      int nsets = 1 << nv;
      for (unsigned fam = 0; fam < (1u << nsets); ++fam) {
        // family of variable subsets; keep antichains only
        bool anti = true;
        for (int a = 0; a < nsets && anti; ++a)
          for (int b = 0; b < nsets && anti; ++b)
            if (a != b && (fam >> a & 1) && (fam >> b & 1) && (a & b) == a)
              anti = false;  // set a is a subset of set b
        if (!anti) continue;
        std::vector<std::pair<Monomial, BigInt>> terms;
        for (int a = 0; a < nsets; ++a) {
          if (!(fam >> a & 1)) continue;
          Monomial m;
          for (int v = 0; v < nv; ++v)
            if (a >> v & 1) m.exps.push_back({v, Exp::fin(1)});
          terms.push_back({m, 1});
        }
        out.push_back(Value(S, Polynomial::from_terms(PolyQuotient::PosBool, nv, terms)));
      }
      return out;
    }
    default:
      return std::nullopt;
  }
}

NIdemResult sr_check_n_idempotent(const SemiringPtr& S, const BigInt& n) {
  if (n < 1) throw Error("n-idempotence needs n >= 1");
  if (auto carrier = carrier_elements(S)) {
    for (const Value& s : *carrier) {
      if (!(sr_nsum(S, s, n) == sr_nsum(S, s, n + 1)) ||
          !(sr_npow(S, s, n) == sr_npow(S, s, n + 1)))
        return {false, s};
    }
    return {true, std::nullopt};
  }
  switch (S->family) {
    case Family::Nat:
      return {false, make_int(S, 1)};
    case Family::NatInf:
      return {false, make_int(S, 1)};
    case Family::Tropical:
      return {false, make_rat(S, BigRat(1))};
    case Family::Viterbi:
      return {false, make_rat(S, BigRat(1, 2))};
    case Family::Lukasiewicz:
      return {false, make_rat(S, BigRat(2 * n - 1, 2 * n))};
    case Family::Doubt:
      return {false, make_rat(S, BigRat(1, 2 * n))};
    case Family::Poly: {
      int nv = (int)S->vars.size();
      if (nv == 0) {
        // no variables: NX degenerates to Nat, the rest to the Booleans
        if (S->quot == PolyQuotient::NX) return {false, make_int(S, 1)};
        return {true, std::nullopt};
      }
      switch (S->quot) {
        case PolyQuotient::PosBool:
          return {true, std::nullopt};
        case PolyQuotient::WX: {
          // sums and products of >= |X| copies stabilize; (x1+..+xk)^n is the
          // hardest case and needs n >= |X|
          if (n >= nv) return {true, std::nullopt};
          Value sum = sr_zero(S);
          for (int v = 0; v < nv; ++v)
            sum = sr_add(S, sum, Value(S, Polynomial::variable(S->quot, nv, v)));
          return {false, sum};
        }
        case PolyQuotient::NX:
          return {false, make_int(S, 1)};
        default:  // BX, SX, SInfX: powers of a variable never stabilize
          return {false, Value(S, Polynomial::variable(S->quot, nv, 0))};
      }
    }
    default:
      throw Error("n-idempotence undecided for family " + S->name() +
                  ": no finite carrier or analytic rule");
  }
}

bool is_fully_idempotent(const SemiringPtr& S) {
  if (auto carrier = carrier_elements(S)) {
    for (const Value& s : *carrier)
      if (!(sr_add(S, s, s) == s) || !(sr_mul(S, s, s) == s)) return false;
    return true;
  }
  return S->family == Family::Poly && S->quot == PolyQuotient::PosBool;
}

bool is_absorptive(const SemiringPtr& S) {
  if (auto carrier = carrier_elements(S)) {
    for (const Value& s : *carrier)
      for (const Value& t : *carrier)
        if (!(sr_add(S, s, sr_mul(S, s, t)) == s)) return false;
    return true;
  }
  switch (S->family) {
    case Family::Tropical:
    case Family::Viterbi:
    case Family::Lukasiewicz:
    case Family::Doubt:
      return true;  // min/max against a dominated product
    case Family::Poly:
      return S->quot == PolyQuotient::SX || S->quot == PolyQuotient::SInfX ||
             S->quot == PolyQuotient::PosBool;
    default:
      return false;
  }
}

bool is_lattice_semiring(const SemiringPtr& S) {
  return is_fully_idempotent(S) && is_absorptive(S);
}

Value parse_value(const SemiringPtr& S, const std::string& text) {
  std::string t = text;
  // trim
  while (!t.empty() && std::isspace((unsigned char)t.front())) t.erase(t.begin());
  while (!t.empty() && std::isspace((unsigned char)t.back())) t.pop_back();
  if (t.empty()) throw ParseError("empty value");
  switch (S->family) {
    case Family::FiniteTable:
      return make_table(S, t);
    case Family::Poly:
      return Value(S, poly_from_string(S->quot, S->vars, t));
    case Family::NatInf:
    case Family::Tropical:
      if (t == "inf") return make_inf(S);
      [[fallthrough]];
    default: {
      if (t == "inf") throw ParseError("inf is not a value of " + S->name());
      try {
        return make_rat(S, rat_from_string(t));
      } catch (const FamilyMismatch& e) {
        throw ParseError(e.what());
      }
    }
  }
}

std::string format_value(const Value& v) {
  const SemiringPtr& S = v.semiring();
  switch (S->family) {
    case Family::Boolean:
    case Family::Nat:
    case Family::NatTrunc:
    case Family::MinMax:
      return v.as_int().str();
    case Family::NatInf:
      return v.as_extnat().inf ? "inf" : v.as_extnat().v.str();
    case Family::Tropical:
      return v.as_extrat().inf ? "inf" : rat_to_string(v.as_extrat().v);
    case Family::Viterbi:
    case Family::Lukasiewicz:
    case Family::Doubt:
      return rat_to_string(v.as_rat());
    case Family::FiniteTable:
      return S->table->carrier.at((int)v.as_int());
    case Family::Poly:
      return poly_to_string(v.as_poly(), S->vars);
  }
  return "?";
}

Value random_value(const SemiringPtr& S, std::mt19937_64& rng) {
  auto pick = [&](int n) { return (int)(rng() % (unsigned)n); };
  switch (S->family) {
    case Family::Boolean:
      return make_int(S, pick(2));
    case Family::Nat:
      if (pick(10) == 0) return make_int(S, BigInt(1) << (20 + pick(20)));
      return make_int(S, pick(10));
    case Family::NatInf:
      if (pick(4) == 0) return make_inf(S);
      return make_int(S, pick(10));
    case Family::NatTrunc:
    case Family::MinMax:
      return make_int(S, pick(S->bound + 1));
    case Family::Tropical:
      if (pick(5) == 0) return make_inf(S);
      return make_rat(S, BigRat(pick(12), 1 + pick(5)));
    case Family::Viterbi:
    case Family::Lukasiewicz:
    case Family::Doubt: {
      int den = 1 + pick(9);
      return make_rat(S, BigRat(pick(den + 1), den));
    }
    case Family::FiniteTable:
      return Value(S, BigInt(pick((int)S->table->carrier.size())));
    case Family::Poly: {
      int nv = (int)S->vars.size();
      std::vector<std::pair<Monomial, BigInt>> terms;
      int nterms = pick(4);
      for (int i = 0; i < nterms; ++i) {
        Monomial m;
        for (int v = 0; v < nv; ++v) {
          int e = pick(4);  // 0..2, or inf in sinfx
          if (e == 3) {
            if (S->quot == PolyQuotient::SInfX)
              m.exps.push_back({v, Exp::infinity()});
          } else if (e > 0) {
            m.exps.push_back({v, Exp::fin((unsigned)e)});
          }
        }
        terms.push_back({m, 1 + pick(3)});
      }
      return Value(S, Polynomial::from_terms(S->quot, nv, std::move(terms)));
    }
  }
  throw Error("random_value: unsupported family");
}

}  // namespace semeq
