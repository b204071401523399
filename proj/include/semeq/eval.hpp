#pragma once

#include <map>
#include <string>
#include <vector>

#include "semeq/formula.hpp"
#include "semeq/interp.hpp"

namespace semeq {

using Assignment = std::map<std::string, int>;  // variable name -> element index

// Evaluates formulas over one fixed interpretation. Results are memoized per
// (subformula, assignment restricted to its free variables), and n-fold powers
// additionally per (base value, exponent) since characteristic formulas repeat
// the same huge exponent across many subterms.
class Evaluator {
 public:
  explicit Evaluator(const Interpretation& I) : I_(I) {}

  Value eval(const Formula& f, const Assignment& asg = {});

 private:
  Value eval_node(const Formula& f, const Assignment& asg);

  const Interpretation& I_;
  using Key = std::pair<const FormulaNode*, std::vector<std::pair<std::string, int>>>;
  std::map<Key, Value> cache_;
  std::map<std::pair<Value, BigInt>, Value> pow_cache_;
};

Value eval_formula(const Interpretation& I, const Formula& f, const Assignment& asg = {});

// Truth of a {0,1}-valued formula evaluation, defined for any semiring as
// "value differs from zero". For Boolean interpretations this is classical truth.
bool eval_nonzero(const Interpretation& I, const Formula& f, const Assignment& asg = {});

}  // namespace semeq
