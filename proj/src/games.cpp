#include "semeq/games.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace semeq {

std::string winner_name(Winner w) {
  return w == Winner::Duplicator ? "Duplicator" : "Spoiler";
}

std::string move_to_string(const GameMove& mv, const Interpretation& A,
                           const Interpretation& B) {
  const Interpretation& I = mv.side == 0 ? A : B;
  const char* side = mv.side == 0 ? "left" : "right";
  std::ostringstream out;
  switch (mv.kind) {
    case GameMove::Kind::PickElement:
      out << "pick " << I.universe()[mv.element] << " (" << side << ")";
      break;
    case GameMove::Kind::PickFromSet:
      out << "take " << I.universe()[mv.element] << " from the offered set (" << side
          << ")";
      break;
    case GameMove::Kind::PickBijection:
      out << "bijection {";
      for (std::size_t a = 0; a < mv.bij.size(); ++a)
        out << (a ? ", " : "") << A.universe()[a] << "->" << B.universe()[mv.bij[a]];
      out << "}";
      break;
    case GameMove::Kind::PickSet:
      out << "set {";
      for (std::size_t i = 0; i < mv.set.size(); ++i)
        out << (i ? ", " : "") << I.universe()[mv.set[i]];
      out << "} (" << side << ")";
      break;
  }
  return out.str();
}

namespace {

PartialMap normalized(PartialMap pm) {
  std::sort(pm.begin(), pm.end());
  pm.erase(std::unique(pm.begin(), pm.end()), pm.end());
  return pm;
}

PartialMap extended(const PartialMap& pm, int a, int b) {
  PartialMap out = pm;
  out.push_back({a, b});
  return normalized(std::move(out));
}

void check_compatible(const Interpretation& A, const Interpretation& B) {
  if (!(A.vocab() == B.vocab())) throw FamilyMismatch("game needs a common vocabulary");
  if (!(*A.semiring() == *B.semiring()))
    throw FamilyMismatch("game needs a common semiring");
}

// Live positions are injective partial maps, so they stop growing once the
// smaller universe is exhausted; every further round either repeats a pledge
// or loses immediately. The winner is therefore stable past growth + 1 moves.
int capped_moves(const Interpretation& A, const Interpretation& B,
                 const PartialMap& pm, int m) {
  int growth = std::min(A.size(), B.size()) - (int)pm.size();
  if (growth < 0) growth = 0;
  return std::min(m, growth + 1);
}

GameMove pick_move(int side, int e) {
  GameMove mv;
  mv.kind = GameMove::Kind::PickElement;
  mv.side = side;
  mv.element = e;
  return mv;
}

struct PairGameSolver {
  const Interpretation& A;
  const Interpretation& B;
  bool one_sided;
  std::map<PartialMap, bool> ok_memo;
  std::map<std::pair<PartialMap, int>, Winner> memo;

  PairGameSolver(const Interpretation& a, const Interpretation& b, bool os)
      : A(a), B(b), one_sided(os) {
    check_compatible(A, B);
  }

  bool ok(const PartialMap& pm) {
    auto it = ok_memo.find(pm);
    if (it != ok_memo.end()) return it->second;
    bool v = one_sided ? one_sided_ok(A, B, pm) : partial_map_local_iso(A, B, pm);
    ok_memo.emplace(pm, v);
    return v;
  }

  PartialMap child_of(const PartialMap& pm, int side, int e, int e2) const {
    return side == 0 ? extended(pm, e, e2) : extended(pm, e2, e);
  }

  Winner winner(const PartialMap& pm0, int m) {
    PartialMap pm = normalized(pm0);
    if (!ok(pm)) return Winner::Spoiler;
    m = capped_moves(A, B, pm, m);
    if (m == 0) return Winner::Duplicator;
    auto key = std::make_pair(pm, m);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Winner w = Winner::Duplicator;
    for (int side = 0; side < 2 && w == Winner::Duplicator; ++side) {
      const Interpretation& P = side == 0 ? A : B;
      const Interpretation& O = side == 0 ? B : A;
      for (int e = 0; e < P.size() && w == Winner::Duplicator; ++e) {
        bool dup = false;
        for (int e2 = 0; e2 < O.size() && !dup; ++e2)
          if (winner(child_of(pm, side, e, e2), m - 1) == Winner::Duplicator) dup = true;
        if (!dup) w = Winner::Spoiler;
      }
    }
    memo.emplace(key, w);
    return w;
  }

  StrategyPtr witness(const PartialMap& pm0, int m, int depth) {
    PartialMap pm = normalized(pm0);
    auto node = std::make_shared<StrategyNode>();
    node->position = pm;
    node->winner = winner(pm, m);
    m = capped_moves(A, B, pm, m);
    node->moves_left = m;
    if (!ok(pm)) {
      node->note = one_sided ? "position violates the one-sided condition"
                             : "position is not a partial isomorphism";
      return node;
    }
    if (m == 0) {
      node->note = "no moves left";
      return node;
    }
    if (depth <= 0) {
      node->truncated = true;
      return node;
    }
    if (node->winner == Winner::Spoiler) {
      for (int side = 0; side < 2; ++side) {
        const Interpretation& P = side == 0 ? A : B;
        const Interpretation& O = side == 0 ? B : A;
        for (int e = 0; e < P.size(); ++e) {
          bool all_lose = true;
          for (int e2 = 0; e2 < O.size() && all_lose; ++e2)
            if (winner(child_of(pm, side, e, e2), m - 1) == Winner::Duplicator)
              all_lose = false;
          if (!all_lose) continue;
          for (int e2 = 0; e2 < O.size(); ++e2)
            node->branches.push_back(
                {{pick_move(side, e), pick_move(1 - side, e2)},
                 witness(child_of(pm, side, e, e2), m - 1, depth - 1)});
          return node;
        }
      }
      throw Error("internal: winning pick not found");
    }
    for (int side = 0; side < 2; ++side) {
      const Interpretation& P = side == 0 ? A : B;
      const Interpretation& O = side == 0 ? B : A;
      for (int e = 0; e < P.size(); ++e)
        for (int e2 = 0; e2 < O.size(); ++e2) {
          PartialMap child = child_of(pm, side, e, e2);
          if (winner(child, m - 1) != Winner::Duplicator) continue;
          node->branches.push_back({{pick_move(side, e), pick_move(1 - side, e2)},
                                    witness(child, m - 1, depth - 1)});
          break;
        }
    }
    return node;
  }
};

struct BijectionSolver {
  const Interpretation& A;
  const Interpretation& B;
  std::map<PartialMap, bool> ok_memo;
  std::map<std::pair<PartialMap, int>, Winner> memo;

  BijectionSolver(const Interpretation& a, const Interpretation& b) : A(a), B(b) {
    check_compatible(A, B);
  }

  bool ok(const PartialMap& pm) {
    auto it = ok_memo.find(pm);
    if (it != ok_memo.end()) return it->second;
    bool v = partial_map_local_iso(A, B, pm);
    ok_memo.emplace(pm, v);
    return v;
  }

  // Searches for a bijection all of whose pledges keep Duplicator winning;
  // bijections with an immediately losing pledge are dominated, so skipping
  // them during the search is exact.
  bool winning_bijection(const PartialMap& pm, int m, std::vector<int>& f,
                         std::vector<bool>& used, int a) {
    if (a == A.size()) return true;
    for (int b = 0; b < B.size(); ++b) {
      if (used[b]) continue;
      if (winner(extended(pm, a, b), m - 1) != Winner::Duplicator) continue;
      used[b] = true;
      f[a] = b;
      if (winning_bijection(pm, m, f, used, a + 1)) return true;
      used[b] = false;
      f[a] = -1;
    }
    return false;
  }

  Winner winner(const PartialMap& pm0, int m) {
    PartialMap pm = normalized(pm0);
    if (!ok(pm)) return Winner::Spoiler;
    m = capped_moves(A, B, pm, m);
    if (m == 0) return Winner::Duplicator;
    if (A.size() != B.size()) return Winner::Spoiler;
    auto key = std::make_pair(pm, m);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::vector<int> f(A.size(), -1);
    std::vector<bool> used(B.size(), false);
    Winner w = winning_bijection(pm, m, f, used, 0) ? Winner::Duplicator
                                                    : Winner::Spoiler;
    memo.emplace(key, w);
    return w;
  }

  StrategyPtr witness(const PartialMap& pm0, int m, int depth) {
    PartialMap pm = normalized(pm0);
    auto node = std::make_shared<StrategyNode>();
    node->position = pm;
    node->winner = winner(pm, m);
    m = capped_moves(A, B, pm, m);
    node->moves_left = m;
    if (!ok(pm)) {
      node->note = "position is not a partial isomorphism";
      return node;
    }
    if (m == 0) {
      node->note = "no moves left";
      return node;
    }
    if (A.size() != B.size()) {
      node->note = "universes differ in size, no bijection exists";
      return node;
    }
    if (depth <= 0) {
      node->truncated = true;
      return node;
    }
    auto bij_move = [&](const std::vector<int>& f) {
      GameMove mv;
      mv.kind = GameMove::Kind::PickBijection;
      mv.bij = f;
      return mv;
    };
    if (node->winner == Winner::Duplicator) {
      std::vector<int> f(A.size(), -1);
      std::vector<bool> used(B.size(), false);
      if (!winning_bijection(pm, m, f, used, 0))
        throw Error("internal: winning bijection not found");
      for (int a = 0; a < A.size(); ++a)
        node->branches.push_back({{bij_move(f), pick_move(0, a)},
                                  witness(extended(pm, a, f[a]), m - 1, depth - 1)});
      return node;
    }
    // Spoiler wins: answer every bijection with a breaking element
    std::vector<int> f(A.size());
    for (int i = 0; i < A.size(); ++i) f[i] = i;
    std::sort(f.begin(), f.end());
    do {
      int bad = -1;
      for (int a = 0; a < A.size() && bad < 0; ++a)
        if (winner(extended(pm, a, f[a]), m - 1) == Winner::Spoiler) bad = a;
      if (bad < 0) throw Error("internal: bijection admits no breaking pick");
      node->branches.push_back({{bij_move(f), pick_move(0, bad)},
                                witness(extended(pm, bad, f[bad]), m - 1, depth - 1)});
    } while (std::next_permutation(f.begin(), f.end()));
    return node;
  }
};

struct CountingSolver {
  const Interpretation& A;
  const Interpretation& B;
  int n;
  std::map<PartialMap, bool> ok_memo;
  std::map<std::pair<PartialMap, int>, Winner> memo;

  CountingSolver(const Interpretation& a, const Interpretation& b, int set_size)
      : A(a), B(b), n(set_size) {
    check_compatible(A, B);
    if (n < 1) throw Error("set size bound must be >= 1");
    if (A.size() > 20 || B.size() > 20)
      throw ResourceError("universe too large for the counting game solver");
  }

  bool ok(const PartialMap& pm) {
    auto it = ok_memo.find(pm);
    if (it != ok_memo.end()) return it->second;
    bool v = partial_map_local_iso(A, B, pm);
    ok_memo.emplace(pm, v);
    return v;
  }

  PartialMap pledge(const PartialMap& pm, int side, int x, int y) const {
    // x lives on Spoiler's chosen side, y on the answering side
    return side == 0 ? extended(pm, x, y) : extended(pm, y, x);
  }

  static std::vector<int> mask_to_set(unsigned mask) {
    std::vector<int> out;
    for (int i = 0; mask; ++i, mask >>= 1)
      if (mask & 1u) out.push_back(i);
    return out;
  }

  // Duplicator's round answer: a set Y opposite with |Y| = |X| such that every
  // Spoiler pick y in Y admits some x in X keeping Duplicator winning.
  bool round_answer(const PartialMap& pm, int m, int side, const std::vector<int>& X,
                    std::vector<int>* Y_out) {
    const Interpretation& O = side == 0 ? B : A;
    for (unsigned ymask = 0; ymask < (1u << O.size()); ++ymask) {
      if (std::popcount(ymask) != (int)X.size()) continue;
      std::vector<int> Y = mask_to_set(ymask);
      bool all_y = true;
      for (int y : Y) {
        bool some_x = false;
        for (int x : X)
          if (winner(pledge(pm, side, x, y), m - 1) == Winner::Duplicator) {
            some_x = true;
            break;
          }
        if (!some_x) {
          all_y = false;
          break;
        }
      }
      if (all_y) {
        if (Y_out) *Y_out = Y;
        return true;
      }
    }
    return false;
  }

  Winner winner(const PartialMap& pm0, int m) {
    PartialMap pm = normalized(pm0);
    if (!ok(pm)) return Winner::Spoiler;
    m = capped_moves(A, B, pm, m);
    if (m == 0) return Winner::Duplicator;
    auto key = std::make_pair(pm, m);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Winner w = Winner::Duplicator;
    for (int side = 0; side < 2 && w == Winner::Duplicator; ++side) {
      const Interpretation& P = side == 0 ? A : B;
      const Interpretation& O = side == 0 ? B : A;
      if (std::min(n, P.size()) > O.size()) {
        w = Winner::Spoiler;  // no equal-sized answer set exists
        break;
      }
      for (unsigned xmask = 1; xmask < (1u << P.size()) && w == Winner::Duplicator;
           ++xmask) {
        if (std::popcount(xmask) > n) continue;
        std::vector<int> X = mask_to_set(xmask);
        if (!round_answer(pm, m, side, X, nullptr)) w = Winner::Spoiler;
      }
    }
    memo.emplace(key, w);
    return w;
  }

  StrategyPtr witness(const PartialMap& pm0, int m, int depth) {
    PartialMap pm = normalized(pm0);
    auto node = std::make_shared<StrategyNode>();
    node->position = pm;
    node->winner = winner(pm, m);
    m = capped_moves(A, B, pm, m);
    node->moves_left = m;
    if (!ok(pm)) {
      node->note = "position is not a partial isomorphism";
      return node;
    }
    if (m == 0) {
      node->note = "no moves left";
      return node;
    }
    if (depth <= 0) {
      node->truncated = true;
      return node;
    }
    auto set_move = [](int side, const std::vector<int>& s) {
      GameMove mv;
      mv.kind = GameMove::Kind::PickSet;
      mv.side = side;
      mv.set = s;
      return mv;
    };
    auto from_set_move = [](int side, int e) {
      GameMove mv;
      mv.kind = GameMove::Kind::PickFromSet;
      mv.side = side;
      mv.element = e;
      return mv;
    };
    if (node->winner == Winner::Spoiler) {
      for (int side = 0; side < 2; ++side) {
        const Interpretation& P = side == 0 ? A : B;
        const Interpretation& O = side == 0 ? B : A;
        if (std::min(n, P.size()) > O.size()) {
          std::vector<int> X;
          for (int i = 0; i < O.size() + 1; ++i) X.push_back(i);
          node->note = "counting move: the opposite universe is too small";
          node->branches.push_back({{set_move(side, X)}, nullptr});
          return node;
        }
        for (unsigned xmask = 1; xmask < (1u << P.size()); ++xmask) {
          if (std::popcount(xmask) > n) continue;
          std::vector<int> X = mask_to_set(xmask);
          if (round_answer(pm, m, side, X, nullptr)) continue;
          // every Y admits a y whose every x loses for Duplicator
          for (unsigned ymask = 0; ymask < (1u << O.size()); ++ymask) {
            if (std::popcount(ymask) != (int)X.size()) continue;
            std::vector<int> Y = mask_to_set(ymask);
            int ystar = -1;
            for (int y : Y) {
              bool all_lose = true;
              for (int x : X)
                if (winner(pledge(pm, side, x, y), m - 1) == Winner::Duplicator) {
                  all_lose = false;
                  break;
                }
              if (all_lose) {
                ystar = y;
                break;
              }
            }
            if (ystar < 0) throw Error("internal: counting answer not refutable");
            for (int x : X)
              node->branches.push_back(
                  {{set_move(side, X), set_move(1 - side, Y),
                    from_set_move(1 - side, ystar), from_set_move(side, x)},
                   witness(pledge(pm, side, x, ystar), m - 1, depth - 1)});
          }
          return node;
        }
      }
      throw Error("internal: winning set not found");
    }
    for (int side = 0; side < 2; ++side) {
      const Interpretation& P = side == 0 ? A : B;
      for (unsigned xmask = 1; xmask < (1u << P.size()); ++xmask) {
        if (std::popcount(xmask) > n) continue;
        std::vector<int> X = mask_to_set(xmask);
        std::vector<int> Y;
        if (!round_answer(pm, m, side, X, &Y))
          throw Error("internal: winning answer not found");
        for (int y : Y) {
          int xstar = -1;
          for (int x : X)
            if (winner(pledge(pm, side, x, y), m - 1) == Winner::Duplicator) {
              xstar = x;
              break;
            }
          node->branches.push_back(
              {{set_move(side, X), set_move(1 - side, Y), from_set_move(1 - side, y),
                from_set_move(side, xstar)},
               witness(pledge(pm, side, xstar, y), m - 1, depth - 1)});
        }
      }
    }
    return node;
  }
};

}  // namespace

GameResult solve_ef(const Interpretation& A, const Interpretation& B, int moves,
                    const PartialMap& start, const GameOptions& opt) {
  if (moves < 0) throw Error("negative move count");
  PairGameSolver s(A, B, /*one_sided=*/false);
  GameResult r;
  r.winner = s.winner(start, moves);
  if (opt.build_witness) r.strategy = s.witness(start, moves, opt.witness_depth);
  return r;
}

GameResult solve_one_sided(const Interpretation& A, const Interpretation& B, int moves,
                           const PartialMap& start, const GameOptions& opt) {
  if (moves < 0) throw Error("negative move count");
  PairGameSolver s(A, B, /*one_sided=*/true);
  GameResult r;
  r.winner = s.winner(start, moves);
  if (opt.build_witness) r.strategy = s.witness(start, moves, opt.witness_depth);
  return r;
}

GameResult solve_bijection(const Interpretation& A, const Interpretation& B, int moves,
                           const PartialMap& start, const GameOptions& opt) {
  if (moves < 0) throw Error("negative move count");
  BijectionSolver s(A, B);
  GameResult r;
  r.winner = s.winner(start, moves);
  if (opt.build_witness) r.strategy = s.witness(start, moves, opt.witness_depth);
  return r;
}

GameResult solve_counting(const Interpretation& A, const Interpretation& B, int moves,
                          int set_size, const PartialMap& start,
                          const GameOptions& opt) {
  if (moves < 0) throw Error("negative move count");
  CountingSolver s(A, B, set_size);
  GameResult r;
  r.winner = s.winner(start, moves);
  if (opt.build_witness) r.strategy = s.witness(start, moves, opt.witness_depth);
  return r;
}

UnboundedResult solve_unbounded(const Interpretation& A, const Interpretation& B,
                                const PartialMap& start) {
  check_compatible(A, B);
  PartialMap pm = normalized(start);
  if (!partial_map_local_iso(A, B, pm)) return {Winner::Spoiler, std::nullopt};
  if (A.size() != B.size()) return {Winner::Spoiler, std::nullopt};
  std::vector<int> map(A.size(), -1);
  std::vector<bool> used(B.size(), false);
  for (auto& [a, b] : pm) {
    map[a] = b;
    used[b] = true;
  }
  std::function<bool(int)> go = [&](int a) -> bool {
    while (a < A.size() && map[a] != -1) ++a;
    if (a == A.size()) return true;
    for (int b = 0; b < B.size(); ++b) {
      if (used[b]) continue;
      map[a] = b;
      used[b] = true;
      PartialMap cur;
      for (int i = 0; i < A.size(); ++i)
        if (map[i] != -1) cur.push_back({i, map[i]});
      if (partial_map_local_iso(A, B, cur) && go(a + 1)) return true;
      map[a] = -1;
      used[b] = false;
    }
    return false;
  };
  if (go(0)) return {Winner::Duplicator, map};
  return {Winner::Spoiler, std::nullopt};
}

bool one_sided_ok(const Interpretation& A, const Interpretation& B,
                  const PartialMap& pm) {
  if (!(A.vocab() == B.vocab())) throw FamilyMismatch("vocabulary mismatch");
  std::vector<int> as, bs;
  for (auto& [a, b] : pm) {
    as.push_back(a);
    bs.push_back(b);
  }
  std::size_t k = as.size();
  if (k == 0) return true;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if ((as[i] == as[j]) != (bs[i] == bs[j])) return false;
  const SemiringPtr& S = A.semiring();
  for (std::size_t r = 0; r < A.vocab().rels.size(); ++r) {
    int ar = A.vocab().arity((int)r);
    std::vector<int> pos((std::size_t)ar, 0);
    while (true) {
      std::vector<int> ta(ar), tb(ar);
      for (int i = 0; i < ar; ++i) {
        ta[i] = as[pos[i]];
        tb[i] = bs[pos[i]];
      }
      for (int neg = 0; neg < 2; ++neg)
        if (!sr_nat_leq(S, A.literal((int)r, neg, ta), B.literal((int)r, neg, tb)))
          return false;
      int i = ar - 1;
      while (i >= 0 && pos[i] == (int)k - 1) {
        pos[i] = 0;
        --i;
      }
      if (i < 0) break;
      ++pos[i];
    }
  }
  return true;
}

HomGameResult solve_hom_game(const Interpretation& A, const Interpretation& B,
                             const std::vector<SemiringHom>& homs, int moves,
                             const GameOptions& opt) {
  check_compatible(A, B);
  static const SemiringPtr kBool = SemiringDescriptor::boolean();
  for (std::size_t i = 0; i < homs.size(); ++i) {
    if (!(*homs[i].source == *A.semiring()))
      throw FamilyMismatch("hom source does not match the interpretations");
    if (!(*homs[i].target == *kBool))
      throw FamilyMismatch("hom game: every homomorphism must target the Boolean semiring");
    Interpretation hA = compose_hom_interp(homs[i], A);
    Interpretation hB = compose_hom_interp(homs[i], B);
    for (int orient = 0; orient < 2; ++orient) {
      GameResult r = orient == 0 ? solve_one_sided(hA, hB, moves, {}, opt)
                                 : solve_one_sided(hB, hA, moves, {}, opt);
      if (r.winner == Winner::Spoiler)
        return {Winner::Spoiler, (int)i, orient, std::move(r)};
    }
  }
  return {Winner::Duplicator, -1, 0, GameResult{Winner::Duplicator, nullptr}};
}

BackAndForth build_back_and_forth(const Interpretation& A, const Interpretation& B,
                                  int m) {
  check_compatible(A, B);
  if (m < 0) throw Error("negative move count");
  std::vector<PartialMap> all;
  PartialMap cur;
  std::function<void(int, int)> gen = [&](int from, int remaining) {
    all.push_back(cur);
    if (remaining == 0) return;
    for (int a = from; a < A.size(); ++a)
      for (int b = 0; b < B.size(); ++b) {
        bool taken = false;
        for (auto& [pa, pb] : cur)
          if (pb == b) taken = true;
        if (taken) continue;
        cur.push_back({a, b});
        if (partial_map_local_iso(A, B, cur)) gen(a + 1, remaining - 1);
        cur.pop_back();
      }
  };
  gen(0, m);
  for (auto& p : all) p = normalized(std::move(p));
  std::sort(all.begin(), all.end());

  BackAndForth out;
  out.levels.resize((std::size_t)m + 1);
  out.levels[0] = all;
  for (int j = 1; j <= m; ++j) {
    std::set<PartialMap> prev(out.levels[j - 1].begin(), out.levels[j - 1].end());
    for (auto& p : out.levels[j - 1]) {
      if ((int)p.size() > m - j) continue;
      bool good = true;
      for (int a = 0; a < A.size() && good; ++a) {
        bool found = false;
        for (int b = 0; b < B.size() && !found; ++b)
          if (prev.count(extended(p, a, b))) found = true;
        good = found;
      }
      for (int b = 0; b < B.size() && good; ++b) {
        bool found = false;
        for (int a = 0; a < A.size() && !found; ++a)
          if (prev.count(extended(p, a, b))) found = true;
        good = found;
      }
      if (good) out.levels[(std::size_t)j].push_back(p);
    }
  }
  out.valid = false;
  for (auto& p : out.levels[(std::size_t)m])
    if (p.empty()) out.valid = true;
  return out;
}

}  // namespace semeq
