#include "semeq/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace semeq {

namespace {

std::size_t hash_mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

void finish(FormulaNode& n) {
  std::size_t h = (std::size_t)n.kind * 0x100000001b3ULL;
  h = hash_mix(h, std::hash<std::string>{}(n.rel));
  for (auto& a : n.args) h = hash_mix(h, std::hash<std::string>{}(a));
  h = hash_mix(h, std::hash<std::string>{}(n.var));
  std::set<std::string> free;
  switch (n.kind) {
    case FormulaKind::PosLit:
    case FormulaKind::NegLit:
    case FormulaKind::Eq:
    case FormulaKind::Neq:
      free.insert(n.args.begin(), n.args.end());
      n.qr = 0;
      n.node_count = 1;
      break;
    default: {
      n.qr = 0;
      n.node_count = 1;
      for (auto& c : n.children) {
        n.qr = std::max(n.qr, c->qr);
        n.node_count += c->node_count;
        free.insert(c->free_vars.begin(), c->free_vars.end());
        h = hash_mix(h, c->hash);
      }
      if (n.kind == FormulaKind::Exists || n.kind == FormulaKind::Forall) {
        n.qr += 1;
        free.erase(n.var);
      }
      if (n.kind == FormulaKind::RepAnd || n.kind == FormulaKind::RepOr)
        h = hash_mix(h, std::hash<std::string>{}(n.count.str()));
      break;
    }
  }
  n.free_vars.assign(free.begin(), free.end());
  n.hash = h;
}

Formula make(FormulaNode n) {
  finish(n);
  return std::make_shared<const FormulaNode>(std::move(n));
}

void check_var(const std::string& v) {
  if (v.empty()) throw Error("empty variable name");
  if (!(std::isalpha((unsigned char)v[0]) || v[0] == '_'))
    throw Error("variable name must start with a letter: '" + v + "'");
  for (char c : v)
    if (!(std::isalnum((unsigned char)c) || c == '_'))
      throw Error("bad character in variable name: '" + v + "'");
}

}  // namespace

Formula f_pos(const std::string& rel, std::vector<std::string> args) {
  check_var(rel);
  if (args.empty()) throw Error("relation atoms need at least one argument");
  for (auto& a : args) check_var(a);
  FormulaNode n;
  n.kind = FormulaKind::PosLit;
  n.rel = rel;
  n.args = std::move(args);
  return make(std::move(n));
}

Formula f_neg(const std::string& rel, std::vector<std::string> args) {
  auto p = f_pos(rel, std::move(args));
  FormulaNode n = *p;
  n.kind = FormulaKind::NegLit;
  return make(std::move(n));
}

Formula f_eq(const std::string& a, const std::string& b) {
  check_var(a);
  check_var(b);
  FormulaNode n;
  n.kind = FormulaKind::Eq;
  n.args = {a, b};
  return make(std::move(n));
}

Formula f_neq(const std::string& a, const std::string& b) {
  check_var(a);
  check_var(b);
  FormulaNode n;
  n.kind = FormulaKind::Neq;
  n.args = {a, b};
  return make(std::move(n));
}

Formula f_and(std::vector<Formula> children) {
  for (auto& c : children)
    if (!c) throw Error("null subformula");
  if (children.size() == 1) return children[0];
  FormulaNode n;
  n.kind = FormulaKind::And;
  n.children = std::move(children);
  return make(std::move(n));
}

Formula f_or(std::vector<Formula> children) {
  for (auto& c : children)
    if (!c) throw Error("null subformula");
  if (children.size() == 1) return children[0];
  FormulaNode n;
  n.kind = FormulaKind::Or;
  n.children = std::move(children);
  return make(std::move(n));
}

Formula f_exists(const std::string& var, Formula body) {
  check_var(var);
  if (!body) throw Error("null subformula");
  FormulaNode n;
  n.kind = FormulaKind::Exists;
  n.var = var;
  n.children = {std::move(body)};
  return make(std::move(n));
}

Formula f_forall(const std::string& var, Formula body) {
  check_var(var);
  if (!body) throw Error("null subformula");
  FormulaNode n;
  n.kind = FormulaKind::Forall;
  n.var = var;
  n.children = {std::move(body)};
  return make(std::move(n));
}

Formula f_rep_and(Formula body, const BigInt& count) {
  if (!body) throw Error("null subformula");
  if (count < 1) throw Error("repetition count must be >= 1");
  if (count == 1) return body;
  FormulaNode n;
  n.kind = FormulaKind::RepAnd;
  n.children = {std::move(body)};
  n.count = count;
  return make(std::move(n));
}

Formula f_rep_or(Formula body, const BigInt& count) {
  if (!body) throw Error("null subformula");
  if (count < 1) throw Error("repetition count must be >= 1");
  if (count == 1) return body;
  FormulaNode n;
  n.kind = FormulaKind::RepOr;
  n.children = {std::move(body)};
  n.count = count;
  return make(std::move(n));
}

Formula f_true() { return f_and({}); }
Formula f_false() { return f_or({}); }

bool formula_equal(const Formula& a, const Formula& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->hash != b->hash || a->kind != b->kind || a->rel != b->rel ||
      a->args != b->args || a->var != b->var || a->count != b->count ||
      a->children.size() != b->children.size())
    return false;
  for (std::size_t i = 0; i < a->children.size(); ++i)
    if (!formula_equal(a->children[i], b->children[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// printing

namespace {

void print(std::ostringstream& out, const Formula& f) {
  // children of And/Or get parens when bare printing would re-associate or
  // would let a quantifier swallow the rest of the line
  auto child_of_junction = [&](const Formula& c, FormulaKind parent) {
    bool parens = c->kind == parent || c->kind == FormulaKind::Exists ||
                  c->kind == FormulaKind::Forall ||
                  (parent == FormulaKind::And && c->kind == FormulaKind::Or);
    if (parens) out << "(";
    print(out, c);
    if (parens) out << ")";
  };
  switch (f->kind) {
    case FormulaKind::PosLit:
    case FormulaKind::NegLit:
      if (f->kind == FormulaKind::NegLit) out << "!";
      out << f->rel << "(";
      for (std::size_t i = 0; i < f->args.size(); ++i)
        out << (i ? "," : "") << f->args[i];
      out << ")";
      break;
    case FormulaKind::Eq:
      out << f->args[0] << " = " << f->args[1];
      break;
    case FormulaKind::Neq:
      out << f->args[0] << " != " << f->args[1];
      break;
    case FormulaKind::And:
      if (f->children.empty()) { out << "true"; break; }
      for (std::size_t i = 0; i < f->children.size(); ++i) {
        if (i) out << " & ";
        child_of_junction(f->children[i], FormulaKind::And);
      }
      break;
    case FormulaKind::Or:
      if (f->children.empty()) { out << "false"; break; }
      for (std::size_t i = 0; i < f->children.size(); ++i) {
        if (i) out << " | ";
        child_of_junction(f->children[i], FormulaKind::Or);
      }
      break;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      out << (f->kind == FormulaKind::Exists ? "E " : "A ") << f->var << ". ";
      print(out, f->children[0]);
      break;
    case FormulaKind::RepAnd:
    case FormulaKind::RepOr:
      out << "(";
      print(out, f->children[0]);
      out << ")^" << (f->kind == FormulaKind::RepAnd ? "*" : "+") << f->count.str();
      break;
  }
}

}  // namespace

std::string formula_to_string(const Formula& f) {
  if (!f) throw Error("null formula");
  std::ostringstream out;
  print(out, f);
  return out.str();
}

// ---------------------------------------------------------------------------
// parsing

namespace {

struct FLexer {
  enum Tok { IDENT, NAT, LPAREN, RPAREN, COMMA, AMP, PIPE, BANG, EQ, NEQ, DOT, CARET,
             STAR, PLUS, END };
  std::string text;
  std::size_t pos = 0;
  Tok tok = END;
  std::string ident;  // IDENT spelling or NAT digits

  explicit FLexer(std::string t) : text(std::move(t)) { advance(); }

  [[noreturn]] void fail(const std::string& why) const { throw ParseError(why, pos); }

  void advance() {
    while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos;
    if (pos >= text.size()) { tok = END; return; }
    char c = text[pos];
    if (std::isalpha((unsigned char)c) || c == '_') {
      std::size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum((unsigned char)text[pos]) || text[pos] == '_'))
        ++pos;
      ident = text.substr(start, pos - start);
      tok = IDENT;
      return;
    }
    if (std::isdigit((unsigned char)c)) {
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit((unsigned char)text[pos])) ++pos;
      ident = text.substr(start, pos - start);
      tok = NAT;
      return;
    }
    ++pos;
    switch (c) {
      case '(': tok = LPAREN; return;
      case ')': tok = RPAREN; return;
      case ',': tok = COMMA; return;
      case '&': tok = AMP; return;
      case '|': tok = PIPE; return;
      case '.': tok = DOT; return;
      case '^': tok = CARET; return;
      case '*': tok = STAR; return;
      case '+': tok = PLUS; return;
      case '=': tok = EQ; return;
      case '!':
        if (pos < text.size() && text[pos] == '=') { ++pos; tok = NEQ; return; }
        tok = BANG;
        return;
      default: fail(std::string("unexpected character '") + c + "'");
    }
  }
};

struct FParser {
  FLexer lx;
  explicit FParser(std::string t) : lx(std::move(t)) {}

  Formula parse_or() {
    std::vector<Formula> parts{parse_and()};
    while (lx.tok == FLexer::PIPE) {
      lx.advance();
      parts.push_back(parse_and());
    }
    return parts.size() == 1 ? parts[0] : f_or(std::move(parts));
  }

  Formula parse_and() {
    std::vector<Formula> parts{parse_primary()};
    while (lx.tok == FLexer::AMP) {
      lx.advance();
      parts.push_back(parse_primary());
    }
    return parts.size() == 1 ? parts[0] : f_and(std::move(parts));
  }

  std::string expect_ident(const char* what) {
    if (lx.tok != FLexer::IDENT) lx.fail(std::string("expected ") + what);
    std::string s = lx.ident;
    lx.advance();
    return s;
  }

  Formula parse_atom_from(const std::string& name, bool negated) {
    if (lx.tok == FLexer::LPAREN) {
      lx.advance();
      std::vector<std::string> args{expect_ident("variable")};
      while (lx.tok == FLexer::COMMA) {
        lx.advance();
        args.push_back(expect_ident("variable"));
      }
      if (lx.tok != FLexer::RPAREN) lx.fail("expected ')'");
      lx.advance();
      return negated ? f_neg(name, std::move(args)) : f_pos(name, std::move(args));
    }
    if (negated) lx.fail("expected '(' after negated relation name");
    if (lx.tok == FLexer::EQ) {
      lx.advance();
      return f_eq(name, expect_ident("variable"));
    }
    if (lx.tok == FLexer::NEQ) {
      lx.advance();
      return f_neq(name, expect_ident("variable"));
    }
    lx.fail("expected '(', '=' or '!=' after '" + name + "'");
  }

  Formula parse_primary() {
    if (lx.tok == FLexer::BANG) {
      lx.advance();
      return parse_atom_from(expect_ident("relation name"), true);
    }
    if (lx.tok == FLexer::LPAREN) {
      lx.advance();
      Formula inner = parse_or();
      if (lx.tok != FLexer::RPAREN) lx.fail("expected ')'");
      lx.advance();
      if (lx.tok == FLexer::CARET) {
        lx.advance();
        bool is_and = lx.tok == FLexer::STAR;
        if (!is_and && lx.tok != FLexer::PLUS) lx.fail("expected '*' or '+' after '^'");
        lx.advance();
        if (lx.tok != FLexer::NAT) lx.fail("expected repetition count");
        BigInt count(lx.ident);
        lx.advance();
        return is_and ? f_rep_and(inner, count) : f_rep_or(inner, count);
      }
      return inner;
    }
    if (lx.tok != FLexer::IDENT) lx.fail("expected a formula");
    std::string name = lx.ident;
    if (name == "true") { lx.advance(); return f_true(); }
    if (name == "false") { lx.advance(); return f_false(); }
    lx.advance();
    if ((name == "E" || name == "A") && lx.tok == FLexer::IDENT) {
      std::string var = lx.ident;
      lx.advance();
      if (lx.tok != FLexer::DOT) lx.fail("expected '.' after quantified variable");
      lx.advance();
      Formula body = parse_or();
      return name == "E" ? f_exists(var, body) : f_forall(var, body);
    }
    return parse_atom_from(name, false);
  }
};

}  // namespace

Formula formula_from_string(const std::string& text) {
  FParser p(text);
  Formula f = p.parse_or();
  if (p.lx.tok != FLexer::END) p.lx.fail("trailing input after formula");
  return f;
}

}  // namespace semeq
