#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "semeq/formula.hpp"
#include "semeq/interp.hpp"

namespace semeq {

// Streams every canonical NNF formula over a vocabulary in deterministic
// (size, construction) order. Size is the node count: atoms are 1, every other
// node is 1 plus the sizes of its children. Canonical means:
//   - variables come from the fixed pool x1, x2, ...; with v variables in
//     scope a quantifier always binds x_{v+1}
//   - equality atoms are ordered (xi = xj and xi != xj only for i <= j)
//   - And/Or have >= 2 children, strictly increasing in enumeration order
//     (so no duplicates), and a child never repeats its parent's kind
//   - empty junctions (true/false) and Rep* nodes are not produced
// Vacuously quantified formulas are kept: E x. phi multiplies by the universe
// size, which separates structures in counting semirings.
struct EnumeratorOptions {
  int max_qr = 2;
  std::uint64_t max_nodes = 9;
  int free_vars = 0;  // x1..x_free_vars may occur free
};

class FormulaEnumerator {
 public:
  FormulaEnumerator(Vocabulary vocab, EnumeratorOptions opt);

  Formula next();  // nullptr once exhausted
  std::uint64_t emitted() const { return emitted_; }

 private:
  const std::vector<Formula>& exact(std::uint64_t size, int qr, int vars);

  Vocabulary vocab_;
  EnumeratorOptions opt_;
  std::map<std::tuple<std::uint64_t, int, int>, std::vector<Formula>> memo_;
  std::uint64_t cur_size_ = 1;
  std::size_t cur_index_ = 0;
  std::uint64_t emitted_ = 0;
};

// Convenience: all canonical formulas, materialized.
std::vector<Formula> enumerate_formulas(const Vocabulary& vocab,
                                        const EnumeratorOptions& opt);

}  // namespace semeq
