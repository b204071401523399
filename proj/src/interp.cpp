#include "semeq/interp.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace semeq {

int Vocabulary::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < rels.size(); ++i)
    if (rels[i].first == name) return (int)i;
  return -1;
}

Interpretation::Interpretation(SemiringPtr sr, Vocabulary vocab,
                               std::vector<std::string> universe, bool allow_empty)
    : sr_(std::move(sr)), vocab_(std::move(vocab)), universe_(std::move(universe)) {
  if (universe_.empty() && !allow_empty)
    throw Error("empty universe rejected (pass the explicit flag to allow it)");
  for (std::size_t i = 0; i < universe_.size(); ++i)
    for (std::size_t j = i + 1; j < universe_.size(); ++j)
      if (universe_[i] == universe_[j])
        throw ParseError("duplicate universe element '" + universe_[i] + "'");
  for (auto& [name, ar] : vocab_.rels)
    if (ar < 1) throw Error("relation " + name + " must have arity >= 1");
  for (std::size_t i = 0; i < vocab_.rels.size(); ++i)
    for (std::size_t j = i + 1; j < vocab_.rels.size(); ++j)
      if (vocab_.rels[i].first == vocab_.rels[j].first)
        throw ParseError("duplicate relation '" + vocab_.rels[i].first + "'");
  values_.resize(vocab_.rels.size());
  for (std::size_t r = 0; r < vocab_.rels.size(); ++r) {
    std::size_t n = 1;
    for (int k = 0; k < vocab_.arity((int)r); ++k) n *= universe_.size();
    values_[r][0].resize(n);
    values_[r][1].resize(n);
  }
}

int Interpretation::element(const std::string& name) const {
  for (std::size_t i = 0; i < universe_.size(); ++i)
    if (universe_[i] == name) return (int)i;
  return -1;
}

std::size_t Interpretation::flat_index(int rel, const std::vector<int>& tuple) const {
  if ((int)tuple.size() != vocab_.arity(rel))
    throw Error("literal arity mismatch for " + vocab_.rel_name(rel));
  std::size_t idx = 0;
  for (int e : tuple) {
    if (e < 0 || e >= size()) throw Error("element index out of range");
    idx = idx * universe_.size() + (std::size_t)e;
  }
  return idx;
}

void Interpretation::set_literal(int rel, bool negated, const std::vector<int>& tuple,
                                 Value v) {
  if (!(v.semiring() && *v.semiring() == *sr_))
    throw FamilyMismatch("literal value from a different semiring");
  values_.at(rel)[negated][flat_index(rel, tuple)] = std::move(v);
}

void Interpretation::set_literal(const std::string& rel, bool negated,
                                 const std::vector<std::string>& tuple, const Value& v) {
  int r = vocab_.index_of(rel);
  if (r < 0) throw Error("unknown relation '" + rel + "'");
  std::vector<int> t;
  for (auto& name : tuple) {
    int e = element(name);
    if (e < 0) throw Error("unknown universe element '" + name + "'");
    t.push_back(e);
  }
  set_literal(r, negated, t, v);
}

const Value& Interpretation::literal(int rel, bool negated,
                                     const std::vector<int>& tuple) const {
  const auto& slot = values_.at(rel)[negated][flat_index(rel, tuple)];
  if (!slot)
    throw Error("literal " + std::string(negated ? "!" : "") + vocab_.rel_name(rel) +
                " unset on a tuple; interpretation not total");
  return *slot;
}

std::vector<std::string> Interpretation::missing_literals() const {
  std::vector<std::string> out;
  for (std::size_t r = 0; r < vocab_.rels.size(); ++r) {
    int ar = vocab_.arity((int)r);
    std::size_t n = values_[r][0].size();
    for (int neg = 0; neg < 2; ++neg)
      for (std::size_t i = 0; i < n; ++i) {
        if (values_[r][neg][i]) continue;
        std::string s = (neg ? "!" : "") + vocab_.rel_name((int)r) + "(";
        std::size_t rest = i;
        std::vector<std::string> parts(ar);
        for (int k = ar - 1; k >= 0; --k) {
          parts[k] = universe_[rest % universe_.size()];
          rest /= universe_.size();
        }
        for (int k = 0; k < ar; ++k) s += (k ? "," : "") + parts[k];
        out.push_back(s + ")");
      }
  }
  return out;
}

void Interpretation::require_total() const {
  auto missing = missing_literals();
  if (!missing.empty())
    throw Error("interpretation not total; first missing literal: " + missing[0]);
}

void Interpretation::fill_default_complement() {
  Value zero = sr_zero(sr_), one = sr_one(sr_);
  for (std::size_t r = 0; r < values_.size(); ++r)
    for (std::size_t i = 0; i < values_[r][0].size(); ++i) {
      if (!values_[r][0][i]) values_[r][0][i] = zero;
      if (!values_[r][1][i]) values_[r][1][i] = one;
    }
}

bool Interpretation::is_model_defining() const {
  require_total();
  Value zero = sr_zero(sr_);
  for (std::size_t r = 0; r < values_.size(); ++r)
    for (std::size_t i = 0; i < values_[r][0].size(); ++i) {
      bool pos_zero = *values_[r][0][i] == zero;
      bool neg_zero = *values_[r][1][i] == zero;
      if (pos_zero == neg_zero) return false;
    }
  return true;
}

Interpretation Interpretation::load(const std::string& path, bool allow_empty) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open interpretation file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  auto slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? "." : path.substr(0, slash);
  return parse(ss.str(), base, allow_empty);
}

Interpretation Interpretation::parse(const std::string& text, const std::string& base_dir,
                                     bool allow_empty) {
  SemiringPtr sr;
  Vocabulary vocab;
  std::vector<std::string> universe;
  bool saw_universe = false, default_complement = false;
  struct Lit {
    bool neg;
    std::string rel;
    std::vector<std::string> tuple;
    std::string value;
  };
  std::vector<Lit> lits;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    auto fail = [&](const std::string& why) {
      throw ParseError("interpretation line " + std::to_string(lineno) + ": " + why);
    };
    if (kw == "semiring") {
      std::string spec;
      if (!(ls >> spec)) fail("missing semiring spec");
      sr = SemiringDescriptor::from_spec(spec, base_dir);
    } else if (kw == "vocab") {
      std::string item;
      while (ls >> item) {
        auto slash = item.find('/');
        if (slash == std::string::npos) fail("vocab entries look like R/2");
        int ar = 0;
        try { ar = std::stoi(item.substr(slash + 1)); } catch (...) { fail("bad arity"); }
        vocab.rels.push_back({item.substr(0, slash), ar});
      }
    } else if (kw == "universe") {
      std::string e;
      while (ls >> e) universe.push_back(e);
      saw_universe = true;
    } else if (kw == "default") {
      std::string what;
      ls >> what;
      if (what != "complement") fail("only 'default complement' is supported");
      default_complement = true;
    } else if (kw == "lit") {
      std::string rest;
      std::getline(ls, rest);
      auto eq = rest.find('=');
      if (eq == std::string::npos) fail("lit lines look like: lit R(a,b) = value");
      std::string atom = rest.substr(0, eq);
      std::string value = rest.substr(eq + 1);
      auto strip = [](std::string s) {
        while (!s.empty() && std::isspace((unsigned char)s.front())) s.erase(s.begin());
        while (!s.empty() && std::isspace((unsigned char)s.back())) s.pop_back();
        return s;
      };
      atom = strip(atom);
      value = strip(value);
      Lit lit;
      lit.neg = !atom.empty() && atom[0] == '!';
      if (lit.neg) atom = strip(atom.substr(1));
      auto open = atom.find('(');
      if (open == std::string::npos || atom.back() != ')') fail("malformed literal");
      lit.rel = strip(atom.substr(0, open));
      std::string args = atom.substr(open + 1, atom.size() - open - 2);
      std::string cur;
      for (char ch : args) {
        if (ch == ',') { lit.tuple.push_back(strip(cur)); cur.clear(); }
        else cur += ch;
      }
      if (!strip(cur).empty()) lit.tuple.push_back(strip(cur));
      lit.value = value;
      lits.push_back(std::move(lit));
    } else {
      fail("unknown keyword '" + kw + "'");
    }
  }
  if (!sr) throw ParseError("interpretation needs a semiring line");
  if (!saw_universe) throw ParseError("interpretation needs a universe line");
  Interpretation I(sr, vocab, universe, allow_empty);
  for (auto& lit : lits)
    I.set_literal(lit.rel, lit.neg, lit.tuple, parse_value(sr, lit.value));
  if (default_complement) I.fill_default_complement();
  I.require_total();
  return I;
}

std::string Interpretation::dump() const {
  std::ostringstream out;
  out << "semiring " << sr_->name() << "\n";
  out << "vocab";
  for (auto& [name, ar] : vocab_.rels) out << " " << name << "/" << ar;
  out << "\nuniverse";
  for (auto& e : universe_) out << " " << e;
  out << "\n";
  int n = size();
  for (std::size_t r = 0; r < values_.size(); ++r) {
    int ar = vocab_.arity((int)r);
    std::size_t count = values_[r][0].size();
    for (int neg = 0; neg < 2; ++neg)
      for (std::size_t i = 0; i < count; ++i) {
        if (!values_[r][neg][i]) continue;
        std::vector<int> tuple(ar);
        std::size_t rest = i;
        for (int k = ar - 1; k >= 0; --k) { tuple[k] = (int)(rest % n); rest /= n; }
        out << "lit " << (neg ? "!" : "") << vocab_.rel_name((int)r) << "(";
        for (int k = 0; k < ar; ++k) out << (k ? "," : "") << universe_[tuple[k]];
        out << ") = " << format_value(*values_[r][neg][i]) << "\n";
      }
  }
  return out.str();
}

bool local_iso(const Interpretation& A, const std::vector<int>& as,
               const Interpretation& B, const std::vector<int>& bs) {
  if (as.size() != bs.size()) return false;
  if (!(A.vocab() == B.vocab())) throw FamilyMismatch("vocabulary mismatch");
  std::size_t n = as.size();
  if (n == 0) return true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if ((as[i] == as[j]) != (bs[i] == bs[j])) return false;  // not a well-defined injection
  // all instantiated literals over the tuple positions
  for (std::size_t r = 0; r < A.vocab().rels.size(); ++r) {
    int ar = A.vocab().arity((int)r);
    std::vector<int> pos((std::size_t)ar, 0);
    while (true) {
      std::vector<int> ta(ar), tb(ar);
      for (int k = 0; k < ar; ++k) { ta[k] = as[pos[k]]; tb[k] = bs[pos[k]]; }
      for (int neg = 0; neg < 2; ++neg)
        if (A.literal((int)r, neg, ta) != B.literal((int)r, neg, tb)) return false;
      int k = ar - 1;
      while (k >= 0 && pos[k] == (int)n - 1) { pos[k] = 0; --k; }
      if (k < 0) break;
      ++pos[k];
    }
  }
  return true;
}

bool partial_map_local_iso(const Interpretation& A, const Interpretation& B,
                           const PartialMap& pm) {
  std::vector<int> as, bs;
  for (auto& [a, b] : pm) { as.push_back(a); bs.push_back(b); }
  return local_iso(A, as, B, bs);
}

namespace {
// per-element signature over constant tuples, for candidate pruning
std::vector<Value> element_profile(const Interpretation& I, int e) {
  std::vector<Value> out;
  for (std::size_t r = 0; r < I.vocab().rels.size(); ++r) {
    std::vector<int> tuple((std::size_t)I.vocab().arity((int)r), e);
    out.push_back(I.literal((int)r, false, tuple));
    out.push_back(I.literal((int)r, true, tuple));
  }
  return out;
}

bool extend_iso(const Interpretation& A, const Interpretation& B, std::vector<int>& map,
                std::vector<bool>& used, int next,
                const std::vector<std::vector<Value>>& profA,
                const std::vector<std::vector<Value>>& profB) {
  int n = A.size();
  if (next == n) return true;
  for (int b = 0; b < n; ++b) {
    if (used[b] || !(profA[next] == profB[b])) continue;
    // incremental consistency on all literals touching `next`
    map[next] = b;
    bool ok = true;
    std::vector<int> as, bs;
    for (int i = 0; i <= next; ++i) { as.push_back(i); bs.push_back(map[i]); }
    ok = local_iso(A, as, B, bs);
    if (ok) {
      used[b] = true;
      if (extend_iso(A, B, map, used, next + 1, profA, profB)) return true;
      used[b] = false;
    }
    map[next] = -1;
  }
  return false;
}
}  // namespace

std::optional<std::vector<int>> find_isomorphism(const Interpretation& A,
                                                 const Interpretation& B) {
  if (!(A.vocab() == B.vocab())) throw FamilyMismatch("vocabulary mismatch");
  if (A.size() != B.size()) return std::nullopt;
  std::vector<std::vector<Value>> profA, profB;
  for (int e = 0; e < A.size(); ++e) profA.push_back(element_profile(A, e));
  for (int e = 0; e < B.size(); ++e) profB.push_back(element_profile(B, e));
  std::vector<int> map(A.size(), -1);
  std::vector<bool> used(B.size(), false);
  if (extend_iso(A, B, map, used, 0, profA, profB)) return map;
  return std::nullopt;
}

Interpretation compose_hom_interp(const SemiringHom& h, const Interpretation& I) {
  if (!(*h.source == *I.semiring()))
    throw FamilyMismatch("hom source does not match interpretation semiring");
  Interpretation out(h.target, I.vocab(), I.universe(), /*allow_empty=*/true);
  int n = I.size();
  for (std::size_t r = 0; r < I.vocab().rels.size(); ++r) {
    int ar = I.vocab().arity((int)r);
    std::size_t count = 1;
    for (int k = 0; k < ar; ++k) count *= (std::size_t)n;
    for (std::size_t i = 0; i < count; ++i) {
      std::vector<int> tuple(ar);
      std::size_t rest = i;
      for (int k = ar - 1; k >= 0; --k) { tuple[k] = (int)(rest % n); rest /= n; }
      for (int neg = 0; neg < 2; ++neg)
        out.set_literal((int)r, neg, tuple, h.apply(I.literal((int)r, neg, tuple)));
    }
  }
  return out;
}

}  // namespace semeq
