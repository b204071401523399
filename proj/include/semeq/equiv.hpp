#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "semeq/bigint.hpp"
#include "semeq/formula.hpp"
#include "semeq/interp.hpp"

namespace semeq {

enum class EquivStatus { Equivalent, Separated, Unknown };

// Outcome of an equivalence decision or refutation attempt. Separated always
// carries a formula together with its two differing evaluations; verdicts are
// constructed through helpers that reject a non-differing witness outright.
struct EquivVerdict {
  EquivStatus status = EquivStatus::Unknown;
  int m = 0;
  std::string method;  // Equivalent: which exact procedure proved it
  Formula witness;     // Separated
  std::optional<Value> value_a, value_b;
  std::string note;    // Unknown: which budget ran out, or what is left open
};

struct SeparatorBudget {
  int max_qr = 2;
  std::uint64_t max_nodes = 9;
  double seconds = 10.0;
};

// Streams canonical formulas in deterministic order and returns the first one
// that evaluates differently at the two tuples. A semi-decision: exhausting
// the budget yields Unknown, never Equivalent.
EquivVerdict find_separator(const Interpretation& A, const std::vector<int>& as,
                            const Interpretation& B, const std::vector<int>& bs,
                            const SeparatorBudget& budget = {});

// Exact m-equivalence on finite lattice semirings: the one-sided Boolean game
// must favour Duplicator on the h_P images for every prime ideal P, in both
// orientations. A failing ideal yields the lattice characteristic formula of
// the dominating side as a witness on the original pair.
EquivVerdict decide_equiv_lattice(const Interpretation& A, const std::vector<int>& as,
                                  const Interpretation& B, const std::vector<int>& bs,
                                  int m);

// Exact m-equivalence over the naturals: the winner of the m-move bijection
// game. Refutations are witnessed by a bounded separator search first and by
// the scheduled characteristic formula second; when even that formula's
// values would be astronomically large, the verdict degrades to Unknown with
// an explanatory note rather than claiming a witness it cannot exhibit.
EquivVerdict decide_equiv_nat(const Interpretation& A, const std::vector<int>& as,
                              const Interpretation& B, const std::vector<int>& bs,
                              int m);

// Exact m-equivalence over polynomials with coefficients < c and exponents
// < e (bounds derived from the literal values when omitted): literal values
// are pushed through the digit-encoding homomorphism into the naturals, where
// the bijection game decides, exploiting injectivity on the bounded class.
EquivVerdict decide_equiv_natpoly(const Interpretation& A, const std::vector<int>& as,
                                  const Interpretation& B, const std::vector<int>& bs,
                                  int m, std::optional<BigInt> c = std::nullopt,
                                  std::optional<std::uint64_t> e = std::nullopt);

// One-sided Boolean decision: (A, as) is m-dominated by (B, bs) iff Duplicator
// wins the one-sided game. When it fails, the one-sided characteristic
// formula of the left side evaluates to 1 there and 0 on the right.
struct LeqVerdict {
  bool holds = false;
  int m = 0;
  Formula witness;  // set when holds is false
  std::optional<Value> value_a, value_b;
};
LeqVerdict decide_leq_boolean(const Interpretation& A, const std::vector<int>& as,
                              const Interpretation& B, const std::vector<int>& bs,
                              int m);

// Boolean m-equivalence as domination in both directions.
EquivVerdict decide_equiv_boolean(const Interpretation& A, const std::vector<int>& as,
                                  const Interpretation& B, const std::vector<int>& bs,
                                  int m);

// Sufficient criterion for 1-equivalence of two tropical interpretations of a
// single unary relation whose negative literals are uniformly infinite: the
// minima and the sums of the positive values must agree on both sides.
bool tropical_rank1_criterion(const Interpretation& A, const Interpretation& B);

}  // namespace semeq
