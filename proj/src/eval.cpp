#include "semeq/eval.hpp"

namespace semeq {

Value Evaluator::eval(const Formula& f, const Assignment& asg) {
  if (!f) throw Error("null formula");
  for (auto& v : f->free_vars)
    if (!asg.count(v)) throw Error("free variable '" + v + "' has no assignment");
  return eval_node(f, asg);
}

Value Evaluator::eval_node(const Formula& f, const Assignment& asg) {
  Key key;
  key.first = f.get();
  for (auto& v : f->free_vars) key.second.push_back({v, asg.at(v)});
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  const SemiringPtr& S = I_.semiring();
  Value result = sr_zero(S);
  switch (f->kind) {
    case FormulaKind::PosLit:
    case FormulaKind::NegLit: {
      int r = I_.vocab().index_of(f->rel);
      if (r < 0) throw Error("formula uses unknown relation '" + f->rel + "'");
      if (I_.vocab().arity(r) != (int)f->args.size())
        throw Error("arity mismatch for relation '" + f->rel + "'");
      std::vector<int> tuple;
      for (auto& a : f->args) tuple.push_back(asg.at(a));
      result = I_.literal(r, f->kind == FormulaKind::NegLit, tuple);
      break;
    }
    case FormulaKind::Eq:
      result = asg.at(f->args[0]) == asg.at(f->args[1]) ? sr_one(S) : sr_zero(S);
      break;
    case FormulaKind::Neq:
      result = asg.at(f->args[0]) != asg.at(f->args[1]) ? sr_one(S) : sr_zero(S);
      break;
    case FormulaKind::And: {
      result = sr_one(S);
      for (auto& c : f->children) result = sr_mul(S, result, eval_node(c, asg));
      break;
    }
    case FormulaKind::Or: {
      result = sr_zero(S);
      for (auto& c : f->children) result = sr_add(S, result, eval_node(c, asg));
      break;
    }
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      bool ex = f->kind == FormulaKind::Exists;
      result = ex ? sr_zero(S) : sr_one(S);
      Assignment inner = asg;
      for (int a = 0; a < I_.size(); ++a) {
        inner[f->var] = a;
        Value v = eval_node(f->children[0], inner);
        result = ex ? sr_add(S, result, v) : sr_mul(S, result, v);
      }
      break;
    }
    case FormulaKind::RepAnd: {
      Value base = eval_node(f->children[0], asg);
      std::pair<Value, BigInt> pk{base, f->count};
      if (auto it = pow_cache_.find(pk); it != pow_cache_.end()) {
        result = it->second;
      } else {
        result = sr_npow(S, base, f->count);
        pow_cache_.emplace(std::move(pk), result);
      }
      break;
    }
    case FormulaKind::RepOr:
      result = sr_nsum(S, eval_node(f->children[0], asg), f->count);
      break;
  }
  cache_.emplace(std::move(key), result);
  return result;
}

Value eval_formula(const Interpretation& I, const Formula& f, const Assignment& asg) {
  Evaluator ev(I);
  return ev.eval(f, asg);
}

bool eval_nonzero(const Interpretation& I, const Formula& f, const Assignment& asg) {
  return !(eval_formula(I, f, asg) == sr_zero(I.semiring()));
}

}  // namespace semeq
