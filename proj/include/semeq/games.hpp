#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "semeq/hom.hpp"
#include "semeq/interp.hpp"

namespace semeq {

// Model-comparison games between two interpretations over the same vocabulary
// and semiring. All solvers are exact: positions are memoized on the pair set
// together with the remaining move count, which is sound because every winning
// condition here depends only on the set of pledged pairs and a violated
// position stays violated.

enum class Winner { Duplicator, Spoiler };
std::string winner_name(Winner w);

struct GameMove {
  enum class Kind { PickElement, PickBijection, PickSet, PickFromSet };
  Kind kind;
  int side = 0;          // 0: first structure, 1: second
  int element = -1;      // PickElement / PickFromSet
  std::vector<int> bij;  // PickBijection: bij[a] = b
  std::vector<int> set;  // PickSet
};
std::string move_to_string(const GameMove& mv, const Interpretation& A,
                           const Interpretation& B);

// A strategy for the winner: at rounds it branches over every choice the loser
// has, with the winner's own choices fixed inside the move sequence.
struct StrategyNode;
using StrategyPtr = std::shared_ptr<const StrategyNode>;
struct RoundBranch {
  std::vector<GameMove> moves;  // one full round, in play order
  StrategyPtr child;
};
struct StrategyNode {
  Winner winner;
  PartialMap position;
  int moves_left = 0;
  bool truncated = false;  // expansion stopped at the witness depth cap
  std::string note;        // set on terminal nodes (why the game ended here)
  std::vector<RoundBranch> branches;
};

struct GameOptions {
  bool build_witness = false;
  int witness_depth = 3;  // rounds expanded before truncation
};

struct GameResult {
  Winner winner;
  StrategyPtr strategy;  // only set when build_witness was requested
};

// Classic m-move game: Spoiler picks an element on either side, Duplicator
// answers opposite; Duplicator survives while the position stays a partial
// isomorphism (equal literal values both ways).
GameResult solve_ef(const Interpretation& A, const Interpretation& B, int moves,
                    const PartialMap& start = {}, const GameOptions& opt = {});

// Bijection variant: Duplicator commits to a bijection each round, Spoiler
// picks the element. Spoiler wins outright when the universes differ in size.
GameResult solve_bijection(const Interpretation& A, const Interpretation& B, int moves,
                           const PartialMap& start = {}, const GameOptions& opt = {});

// Counting variant with set size bound n: Spoiler offers a set X (|X| <= n) on
// one side, Duplicator answers an equal-sized Y opposite, Spoiler picks y in Y,
// Duplicator picks x in X. Spoiler wins outright when the opposite universe is
// too small for some |X|. With n = 1 this is exactly the classic game.
GameResult solve_counting(const Interpretation& A, const Interpretation& B, int moves,
                          int set_size, const PartialMap& start = {},
                          const GameOptions& opt = {});

// Game without a move bound: on finite structures Duplicator wins exactly when
// the start position extends to a full isomorphism, so the witness is the map.
struct UnboundedResult {
  Winner winner;
  std::optional<std::vector<int>> iso;  // element map A -> B when Duplicator wins
};
UnboundedResult solve_unbounded(const Interpretation& A, const Interpretation& B,
                                const PartialMap& start = {});

// Asymmetric winning condition for the one-sided m-move game: equalities must
// match exactly in both directions, while every relation literal value may
// only grow from A to B in the natural semiring order.
bool one_sided_ok(const Interpretation& A, const Interpretation& B,
                  const PartialMap& pm);
GameResult solve_one_sided(const Interpretation& A, const Interpretation& B, int moves,
                           const PartialMap& start = {}, const GameOptions& opt = {});

// Homomorphism-set game: Spoiler once picks h from homs and a direction, then
// the one-sided game is played on the h-images of both interpretations.
struct HomGameResult {
  Winner winner;
  int hom_index = -1;   // Spoiler's winning pick, when Spoiler wins
  int orientation = 0;  // 0: h(A) <= h(B) side lost, 1: h(B) <= h(A)
  GameResult sub;
};
HomGameResult solve_hom_game(const Interpretation& A, const Interpretation& B,
                             const std::vector<SemiringHom>& homs, int moves,
                             const GameOptions& opt = {});

// Back-and-forth systems: levels[j] holds the partial isomorphisms of size
// <= m - j that can be extended j times in both directions; the system proves
// Duplicator wins the m-move game exactly when the empty map reaches level m.
struct BackAndForth {
  std::vector<std::vector<PartialMap>> levels;
  bool valid;
};
BackAndForth build_back_and_forth(const Interpretation& A, const Interpretation& B,
                                  int m);

}  // namespace semeq
