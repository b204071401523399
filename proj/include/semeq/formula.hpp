#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "semeq/bigint.hpp"
#include "semeq/errors.hpp"

namespace semeq {

// Negation-normal-form first-order formulas. Negation exists only on literals;
// And/Or are n-ary; RepAnd/RepOr are explicit n-fold repetitions of one child
// (semantically phi^n and n*phi) kept symbolic so huge multiplicities stay cheap
// to build and print.
enum class FormulaKind {
  PosLit,
  NegLit,
  Eq,
  Neq,
  And,
  Or,
  Exists,
  Forall,
  RepAnd,
  RepOr,
};

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  FormulaKind kind;
  std::string rel;                // PosLit/NegLit
  std::vector<std::string> args;  // PosLit/NegLit arguments; Eq/Neq use args[0], args[1]
  std::string var;                // Exists/Forall
  std::vector<Formula> children;  // And/Or: any number; quantifiers and Rep*: exactly one
  BigInt count = 1;               // RepAnd/RepOr multiplicity, >= 2 after normalization

  // cached on construction
  int qr = 0;
  std::uint64_t node_count = 1;  // atoms count 1, every other node 1 + sum over children
  std::vector<std::string> free_vars;  // sorted, distinct
  std::size_t hash = 0;
};

Formula f_pos(const std::string& rel, std::vector<std::string> args);
Formula f_neg(const std::string& rel, std::vector<std::string> args);
Formula f_eq(const std::string& a, const std::string& b);
Formula f_neq(const std::string& a, const std::string& b);
// Empty conjunction is the formula "true", empty disjunction "false"; a
// single-child And/Or collapses to that child.
Formula f_and(std::vector<Formula> children);
Formula f_or(std::vector<Formula> children);
Formula f_exists(const std::string& var, Formula body);
Formula f_forall(const std::string& var, Formula body);
// count >= 1; count == 1 collapses to the body itself.
Formula f_rep_and(Formula body, const BigInt& count);
Formula f_rep_or(Formula body, const BigInt& count);
Formula f_true();
Formula f_false();

bool formula_equal(const Formula& a, const Formula& b);

// Grammar, also produced by formula_to_string (round-trip stable):
//   or     := and ('|' and)*
//   and    := primary ('&' primary)*
//   primary:= 'true' | 'false'
//           | ('E'|'A') VAR '.' or          (scope extends maximally right)
//           | REL '(' VAR (',' VAR)* ')' | '!' REL '(' VAR (',' VAR)* ')'
//           | VAR '=' VAR | VAR '!=' VAR
//           | '(' or ')' [ '^' ('*'|'+') NAT ]   ('^*' n-fold And, '^+' n-fold Or)
Formula formula_from_string(const std::string& text);
std::string formula_to_string(const Formula& f);

}  // namespace semeq
