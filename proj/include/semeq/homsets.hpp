#pragma once

#include <vector>

#include "semeq/hom.hpp"
#include "semeq/semiring.hpp"

namespace semeq {

// The +-indecomposable elements of a finite lattice semiring, in carrier order.
struct IdcSet {
  SemiringPtr semiring;
  std::vector<Value> elements;
};

// Non-empty proper subset closed under + and under multiplication by arbitrary
// elements, whose complement is closed under multiplication.
struct PrimeIdeal {
  std::vector<Value> members;
};

// Exhaustive scan: s is kept iff s != 0 and no r != s, t != s have r + t = s.
// Requires a finite, fully idempotent, absorptive semiring.
IdcSet idc_elements(const SemiringPtr& S);

// h_s(t) = 1 iff t + s = t. Rechecks that s is +-indecomposable.
SemiringHom make_h_s(const SemiringPtr& S, const Value& s);

// All prime ideals by subset enumeration. Carriers above 16 elements are
// rejected; results are in deterministic (mask) order.
std::vector<PrimeIdeal> prime_ideals(const SemiringPtr& S);

// h_P(t) = 0 iff t in P. Revalidates the ideal conditions.
SemiringHom make_h_P(const SemiringPtr& S, const PrimeIdeal& P);

// True iff every pair of distinct carrier elements is told apart by some h.
// Separation by verified Boolean homomorphisms forces the semiring to be a
// lattice semiring; that implication is asserted as an internal guard.
bool verify_separating(const SemiringPtr& S, const std::vector<SemiringHom>& H);

}  // namespace semeq
