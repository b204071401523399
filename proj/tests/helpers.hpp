#pragma once

// Shared fixtures for the test suites: small interpretation builders, the
// finite lattice semirings used as random targets, seeded generators,
// strategy replay, and an independent classical model checker.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "semeq/charform.hpp"
#include "semeq/enumerate.hpp"
#include "semeq/equiv.hpp"
#include "semeq/eval.hpp"
#include "semeq/gallery.hpp"
#include "semeq/games.hpp"
#include "semeq/homsets.hpp"
#include "semeq/interp.hpp"

namespace testutil {

using namespace semeq;

inline constexpr std::uint64_t kSeed = 0xEF01;

// Monadic interpretation over elements e1..eN with one row of positive and
// one row of negative values per relation.
inline Interpretation monadic(SemiringPtr S, const std::vector<std::string>& rels,
                              const std::vector<std::vector<Value>>& pos,
                              const std::vector<std::vector<Value>>& neg) {
  Vocabulary voc;
  for (const auto& r : rels) voc.rels.push_back({r, 1});
  std::vector<std::string> universe;
  for (std::size_t i = 0; i < pos.size(); ++i)
    universe.push_back("e" + std::to_string(i + 1));
  Interpretation I(std::move(S), voc, universe);
  for (int a = 0; a < (int)pos.size(); ++a) {
    for (int r = 0; r < (int)rels.size(); ++r) {
      I.set_literal(r, false, {a}, pos[a][r]);
      I.set_literal(r, true, {a}, neg[a][r]);
    }
  }
  I.require_total();
  return I;
}

// One unary relation, negations fixed to a constant.
inline Interpretation monadic_r(const SemiringPtr& S, const std::vector<Value>& rows,
                                const Value& neg) {
  std::vector<std::vector<Value>> pos, negs;
  for (const auto& v : rows) {
    pos.push_back({v});
    negs.push_back({neg});
  }
  return monadic(S, {"R"}, pos, negs);
}

inline Interpretation nat_rows(const std::vector<int>& rows) {
  auto S = SemiringDescriptor::nat();
  std::vector<Value> vals;
  for (int r : rows) vals.push_back(make_int(S, r));
  return monadic_r(S, vals, make_int(S, 0));
}

// The chain lattice 0 < 1 < ... < n-1 as an explicit operation table.
inline TableSemiring chain_table(int n) {
  TableSemiring t;
  for (int i = 0; i < n; ++i) t.carrier.push_back(std::to_string(i));
  t.zero = 0;
  t.one = n - 1;
  t.add.assign(n, std::vector<int>(n));
  t.mul.assign(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      t.add[i][j] = std::max(i, j);
      t.mul[i][j] = std::min(i, j);
    }
  return t;
}

// The 2-atom diamond lattice 0 < p, q < 1 (p + q = 1, p * q = 0).
inline TableSemiring diamond_table() {
  TableSemiring t;
  t.carrier = {"0", "p", "q", "1"};
  t.zero = 0;
  t.one = 3;
  auto join = [](int a, int b) {
    if (a == b) return a;
    if (a > b) std::swap(a, b);
    if (a == 0) return b;
    return 3;
  };
  auto meet = [](int a, int b) {
    if (a == b) return a;
    if (a > b) std::swap(a, b);
    if (b == 3) return a;
    return 0;
  };
  t.add.assign(4, std::vector<int>(4));
  t.mul.assign(4, std::vector<int>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      t.add[i][j] = join(i, j);
      t.mul[i][j] = meet(i, j);
    }
  return t;
}

// Every bounded distributive lattice with at most 4 elements, as validated
// table semirings: the chains of height 1..3 and the diamond.
inline const std::vector<SemiringPtr>& small_lattice_semirings() {
  static const std::vector<SemiringPtr> all = [] {
    std::vector<SemiringPtr> v;
    for (int n = 2; n <= 4; ++n)
      v.push_back(SemiringDescriptor::finite_table(chain_table(n)));
    v.push_back(SemiringDescriptor::finite_table(diamond_table()));
    return v;
  }();
  return all;
}

// Random monadic interpretation with one unary relation whose positive and
// negative values are drawn from the pool.
inline Interpretation random_monadic(const SemiringPtr& S, const std::vector<Value>& pool,
                                     std::mt19937_64& rng, int max_universe) {
  std::uniform_int_distribution<int> usize(1, max_universe);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  int n = usize(rng);
  std::vector<std::vector<Value>> pos, neg;
  for (int i = 0; i < n; ++i) {
    pos.push_back({pool[pick(rng)]});
    neg.push_back({pool[pick(rng)]});
  }
  return monadic(S, {"R"}, pos, neg);
}

// Classical first-order truth over a model-defining Boolean interpretation:
// a negated literal is true exactly when the positive one has value 0.
inline bool classical_eval(const Interpretation& I, const Formula& f,
                           std::map<std::string, int>& asg) {
  switch (f->kind) {
    case FormulaKind::PosLit:
    case FormulaKind::NegLit: {
      std::vector<int> tuple;
      for (const auto& a : f->args) tuple.push_back(asg.at(a));
      int rel = I.vocab().index_of(f->rel);
      bool pos = I.literal(rel, false, tuple) != sr_zero(I.semiring());
      return f->kind == FormulaKind::PosLit ? pos : !pos;
    }
    case FormulaKind::Eq:
      return asg.at(f->args[0]) == asg.at(f->args[1]);
    case FormulaKind::Neq:
      return asg.at(f->args[0]) != asg.at(f->args[1]);
    case FormulaKind::And:
    case FormulaKind::RepAnd: {
      for (const auto& c : f->children)
        if (!classical_eval(I, c, asg)) return false;
      return true;
    }
    case FormulaKind::Or:
    case FormulaKind::RepOr: {
      for (const auto& c : f->children)
        if (classical_eval(I, c, asg)) return true;
      return false;
    }
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      bool exists = f->kind == FormulaKind::Exists;
      auto saved = asg.find(f->var) != asg.end()
                       ? std::optional<int>(asg[f->var])
                       : std::nullopt;
      bool result = !exists;
      for (int a = 0; a < I.size(); ++a) {
        asg[f->var] = a;
        bool sub = classical_eval(I, f->children[0], asg);
        if (exists && sub) { result = true; break; }
        if (!exists && !sub) { result = false; break; }
      }
      if (saved)
        asg[f->var] = *saved;
      else
        asg.erase(f->var);
      return result;
    }
  }
  return false;
}

// Replays one random play of the classic game against a Spoiler strategy:
// follows the fixed Spoiler picks, answers uniformly at random, and demands a
// covering branch at every round and a violated position at the leaf.
inline bool spoiler_trace_wins_once(const Interpretation& A, const Interpretation& B,
                                    StrategyPtr node, std::mt19937_64& rng) {
  while (true) {
    if (!node || node->winner != Winner::Spoiler) return false;
    if (node->branches.empty()) {
      if (node->truncated) return true;  // depth cap reached, nothing to check
      return !partial_map_local_iso(A, B, node->position);
    }
    const GameMove& pick = node->branches[0].moves[0];
    int oppsize = pick.side == 0 ? B.size() : A.size();
    std::uniform_int_distribution<int> reply(0, oppsize - 1);
    int e2 = reply(rng);
    const RoundBranch* chosen = nullptr;
    for (const auto& br : node->branches) {
      if (br.moves.size() == 2 && br.moves[0].side == pick.side &&
          br.moves[0].element == pick.element && br.moves[1].element == e2) {
        chosen = &br;
        break;
      }
    }
    if (!chosen) return false;  // the witness fails to cover a legal response
    node = chosen->child;
  }
}

inline bool spoiler_trace_beats_random(const Interpretation& A, const Interpretation& B,
                                       const StrategyPtr& root, std::mt19937_64& rng,
                                       int plays = 100) {
  for (int i = 0; i < plays; ++i)
    if (!spoiler_trace_wins_once(A, B, root, rng)) return false;
  return true;
}

// Exhaustively replays a Duplicator strategy for the classic game: every
// position must be a partial isomorphism, every Spoiler option must have a
// branch, and every leaf must have exhausted the moves (or hit the depth cap).
inline bool duplicator_table_survives(const Interpretation& A, const Interpretation& B,
                                      const StrategyPtr& node) {
  if (!node || node->winner != Winner::Duplicator) return false;
  if (!partial_map_local_iso(A, B, node->position)) return false;
  if (node->branches.empty()) return node->truncated || node->moves_left == 0;
  std::set<std::pair<int, int>> covered;
  for (const auto& br : node->branches) {
    if (br.moves.size() != 2) return false;
    covered.insert({br.moves[0].side, br.moves[0].element});
    if (!duplicator_table_survives(A, B, br.child)) return false;
  }
  return covered.size() == (std::size_t)A.size() + (std::size_t)B.size();
}

// Structural validity of a back-and-forth system: nonempty levels of local
// isomorphisms with the forth and back extension properties between
// consecutive levels.
inline bool back_and_forth_sound(const Interpretation& A, const Interpretation& B,
                                 const BackAndForth& bf) {
  if (!bf.valid) return false;
  for (const auto& level : bf.levels) {
    if (level.empty()) return false;
    for (const auto& pm : level)
      if (!partial_map_local_iso(A, B, pm)) return false;
  }
  // levels[j] must extend one step into levels[j - 1]
  for (std::size_t j = 1; j < bf.levels.size(); ++j) {
    for (const auto& pm : bf.levels[j]) {
      for (int a = 0; a < A.size(); ++a) {
        bool found = false;
        for (int b = 0; b < B.size() && !found; ++b) {
          PartialMap ext = pm;
          ext.push_back({a, b});
          std::sort(ext.begin(), ext.end());
          ext.erase(std::unique(ext.begin(), ext.end()), ext.end());
          const auto& prev = bf.levels[j - 1];
          found = std::find(prev.begin(), prev.end(), ext) != prev.end();
        }
        if (!found) return false;
      }
      for (int b = 0; b < B.size(); ++b) {
        bool found = false;
        for (int a = 0; a < A.size() && !found; ++a) {
          PartialMap ext = pm;
          ext.push_back({a, b});
          std::sort(ext.begin(), ext.end());
          ext.erase(std::unique(ext.begin(), ext.end()), ext.end());
          const auto& prev = bf.levels[j - 1];
          found = std::find(prev.begin(), prev.end(), ext) != prev.end();
        }
        if (!found) return false;
      }
    }
  }
  return true;
}

// Renames every universe element of I with a prefix, preserving order and all
// literal values; the identity on indices then witnesses an isomorphism.
inline Interpretation relabeled(const Interpretation& I, const std::string& prefix) {
  std::vector<std::string> universe;
  for (const auto& e : I.universe()) universe.push_back(prefix + e);
  Interpretation out(I.semiring(), I.vocab(), universe);
  for (int rel = 0; rel < (int)I.vocab().rels.size(); ++rel) {
    int ar = I.vocab().arity(rel);
    std::vector<int> tuple(ar, 0);
    while (true) {
      for (bool neg : {false, true})
        out.set_literal(rel, neg, tuple, I.literal(rel, neg, tuple));
      int pos = ar - 1;
      while (pos >= 0 && tuple[pos] == I.size() - 1) tuple[pos--] = 0;
      if (pos < 0) break;
      ++tuple[pos];
    }
  }
  out.require_total();
  return out;
}

}  // namespace testutil
