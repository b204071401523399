#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semeq/bigint.hpp"
#include "semeq/formula.hpp"
#include "semeq/homsets.hpp"
#include "semeq/interp.hpp"

namespace semeq {

// Search limits for the exhaustive power-sum exponent oracle.
struct ExponentBudget {
  BigInt max_e = 64;
  std::uint64_t max_comparisons = 10000000;
};

// An exponent e such that equal sums of e-th powers, over multisets of any
// common length < ell with entries < d, force equal multisets. "exhaustive"
// means e is minimal and was verified by enumerating all power sums;
// "dominance" means e satisfies a sufficient inequality (see below) and need
// not be minimal. For exhaustive e > 1 a collision at e-1 is attached.
struct ExponentCertificate {
  BigInt e = 1;
  std::string method;
  std::vector<BigInt> weaker_lhs, weaker_rhs;  // equal power sums at e-1
};

// Exhaustive oracle: tries e = 1, 2, ... and compares all power sums per
// multiset length; the returned exponent is re-verified by an independent
// sort-based second pass. Throws BudgetError when the enumeration would
// exceed the budget (the underlying lemma asserts existence, not magnitude).
ExponentCertificate nat_exponent(const BigInt& ell, const BigInt& d,
                                 const ExponentBudget& budget = {});

// Smallest e with (d-1)^e > (ell-1) * (d-2)^e, which implies the injectivity
// property above: were the sorted multisets' maxima different, the larger
// maximum's power alone would exceed the entire other sum; equal maxima are
// stripped and the argument recurses. When that e is too large to pin down
// with exact arithmetic, returns the exact binomial bound (d-2) * t with
// 2^t > ell - 1, which satisfies the same inequality since (1+1/n)^n >= 2.
// Throws BudgetError when even the bound cannot be represented sensibly.
BigInt dominance_exponent(const BigInt& ell, const BigInt& d);

// Exponent and value-bound chain for the characteristic formulas over the
// naturals: d[0] = c1^(k+1), d[i+1] = c2 * d[i]^e[i], every e[i] certified
// for multiset length bound ell = max(c2, 4) and entry bound d[i].
struct NatSchedule {
  BigInt c1, c2;  // strict bounds on literal values and universe sizes
  int k = 0;      // literal enumeration length the d chain must cover
  BigInt ell;
  std::vector<BigInt> e, d;              // levels 0..m
  std::vector<std::string> certificate;  // per level: exhaustive | dominance
};

// Builds levels 0..m, trying the exhaustive oracle first and falling back to
// the dominance certificate; budget exhaustion in both is reported with the
// failing level (expected for m >= 2 with nontrivial bounds).
NatSchedule nat_schedule(const BigInt& c1, const BigInt& c2, int k, int m,
                         const ExponentBudget& budget = {});

// The frozen literal enumeration L_1..L_k over variables x1..x<nvars>:
// relations in vocabulary order, positive before negative, argument tuples in
// lexicographic variable order.
std::vector<Formula> literal_enumeration(const Vocabulary& vocab, int nvars);

// Auxiliary formula over n free variables whose value equality transfers, via
// the exponent schedule, a bijection strategy between equal-cardinality
// universes: level 0 encodes literal values as digits base c1, level j binds
// a fresh variable, guards it against all previous ones, and raises to e[j-1]
// inside the quantifier so the evaluation is a power sum over the universe.
Formula nat_theta(const NatSchedule& s, const Vocabulary& vocab, int n, int m);

// Characteristic formula over n free variables: chi^0 = theta^0; for m > 0,
// the disjunction of (Ex x=x)^e[m], (Ex x=x)^e[m] and (theta^m)^e[m], whose
// value is the power sum of the triple (|A|, |A|, theta value), so equality
// forces |A| = |B| and equal theta values. Requires the schedule to cover
// level m and k >= |Lit_{n+m}|.
Formula nat_chi(const NatSchedule& s, const Vocabulary& vocab, int n, int m);

// One-sided characteristic formula of a Boolean interpretation at a tuple:
// level 0 conjoins the equality pattern of the tuple with every literal the
// interpretation values 1; level m+1 conjoins Ex-witnesses for every element
// with the Ax-disjunction over all elements. Model-defining is not required.
Formula boolean_one_sided_chi(const Interpretation& pi,
                              const std::vector<int>& abar, int m);

// Lattice variants: the same skeleton with the level-0 literal test replaced
// by v + s = v (membership in the filter of the +-indecomposable s) or by
// v not in P. They coincide with boolean_one_sided_chi of h_s o pi / h_P o pi.
Formula lattice_chi_s(const Interpretation& pi, const std::vector<int>& abar,
                      int m, const Value& s);
Formula lattice_chi_P(const Interpretation& pi, const std::vector<int>& abar,
                      int m, const PrimeIdeal& P);

}  // namespace semeq
