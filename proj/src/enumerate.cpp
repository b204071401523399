#include "semeq/enumerate.hpp"

#include <functional>

namespace semeq {

namespace {

std::string pool_var(int i) { return "x" + std::to_string(i); }

}  // namespace

FormulaEnumerator::FormulaEnumerator(Vocabulary vocab, EnumeratorOptions opt)
    : vocab_(std::move(vocab)), opt_(opt) {
  if (opt_.free_vars < 0) throw Error("negative free variable count");
  if (opt_.max_qr < 0) throw Error("negative quantifier rank bound");
}

const std::vector<Formula>& FormulaEnumerator::exact(std::uint64_t size, int qr,
                                                     int vars) {
  auto key = std::make_tuple(size, qr, vars);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  std::vector<Formula> out;

  if (size == 1) {
    for (bool neg : {false, true})
      for (std::size_t r = 0; r < vocab_.rels.size(); ++r) {
        int ar = vocab_.arity((int)r);
        // all var tuples in lex order
        std::vector<int> tup((std::size_t)ar, 1);
        if (vars == 0) continue;
        while (true) {
          std::vector<std::string> args;
          for (int t : tup) args.push_back(pool_var(t));
          out.push_back(neg ? f_neg(vocab_.rel_name((int)r), args)
                            : f_pos(vocab_.rel_name((int)r), args));
          int k = ar - 1;
          while (k >= 0 && tup[k] == vars) { tup[k] = 1; --k; }
          if (k < 0) break;
          ++tup[k];
        }
      }
    for (int i = 1; i <= vars; ++i)
      for (int j = i; j <= vars; ++j) out.push_back(f_eq(pool_var(i), pool_var(j)));
    for (int i = 1; i <= vars; ++i)
      for (int j = i; j <= vars; ++j) out.push_back(f_neq(pool_var(i), pool_var(j)));
  } else {
    // junctions: children strictly increasing in (size, index) order, child
    // kind differs from the junction's own kind
    for (FormulaKind jk : {FormulaKind::And, FormulaKind::Or}) {
      std::uint64_t budget = size - 1;
      // candidate pool: everything of size <= budget - 1 (at least 2 children)
      std::vector<Formula> pool;
      for (std::uint64_t s = 1; s + 1 <= budget; ++s)
        for (auto& f : exact(s, qr, vars))
          if (f->kind != jk) pool.push_back(f);
      std::vector<Formula> chosen;
      std::function<void(std::size_t, std::uint64_t)> dfs = [&](std::size_t from,
                                                                std::uint64_t rem) {
        if (rem == 0) {
          if (chosen.size() >= 2)
            out.push_back(jk == FormulaKind::And
                              ? f_and(std::vector<Formula>(chosen))
                              : f_or(std::vector<Formula>(chosen)));
          return;
        }
        for (std::size_t i = from; i < pool.size(); ++i) {
          if (pool[i]->node_count > rem) continue;
          chosen.push_back(pool[i]);
          dfs(i + 1, rem - pool[i]->node_count);
          chosen.pop_back();
        }
      };
      dfs(0, budget);
    }
    if (qr >= 1) {
      std::string bv = pool_var(vars + 1);
      for (auto& body : exact(size - 1, qr - 1, vars + 1))
        out.push_back(f_exists(bv, body));
      for (auto& body : exact(size - 1, qr - 1, vars + 1))
        out.push_back(f_forall(bv, body));
    }
  }
  return memo_.emplace(key, std::move(out)).first->second;
}

Formula FormulaEnumerator::next() {
  while (cur_size_ <= opt_.max_nodes) {
    const auto& list = exact(cur_size_, opt_.max_qr, opt_.free_vars);
    if (cur_index_ < list.size()) {
      ++emitted_;
      return list[cur_index_++];
    }
    ++cur_size_;
    cur_index_ = 0;
  }
  return nullptr;
}

std::vector<Formula> enumerate_formulas(const Vocabulary& vocab,
                                        const EnumeratorOptions& opt) {
  FormulaEnumerator en(vocab, opt);
  std::vector<Formula> out;
  while (auto f = en.next()) out.push_back(f);
  return out;
}

}  // namespace semeq
