#include "semeq/equiv.hpp"

#include <algorithm>
#include <chrono>
#include <string>

#include "semeq/charform.hpp"
#include "semeq/enumerate.hpp"
#include "semeq/errors.hpp"
#include "semeq/eval.hpp"
#include "semeq/games.hpp"
#include "semeq/hom.hpp"
#include "semeq/homsets.hpp"

namespace semeq {

namespace {

Assignment tuple_assignment(const std::vector<int>& tup) {
  Assignment asg;
  for (std::size_t i = 0; i < tup.size(); ++i) {
    asg["x" + std::to_string(i + 1)] = tup[i];
  }
  return asg;
}

void check_pair(const Interpretation& A, const std::vector<int>& as,
                const Interpretation& B, const std::vector<int>& bs) {
  if (!(A.vocab() == B.vocab())) {
    throw FamilyMismatch("the interpretations use different vocabularies");
  }
  if (!(*A.semiring() == *B.semiring())) {
    throw FamilyMismatch("the interpretations use different semirings");
  }
  if (as.size() != bs.size()) throw Error("tuples must have equal length");
  for (int a : as) {
    if (a < 0 || a >= A.size()) throw Error("left tuple element out of range");
  }
  for (int b : bs) {
    if (b < 0 || b >= B.size()) throw Error("right tuple element out of range");
  }
}

PartialMap start_map(const std::vector<int>& as, const std::vector<int>& bs) {
  PartialMap pm;
  for (std::size_t i = 0; i < as.size(); ++i) pm.push_back({as[i], bs[i]});
  return pm;
}

// Re-evaluates the witness from scratch on both sides; a witness whose values
// coincide is a soundness bug, not a reportable verdict.
EquivVerdict make_separated(const Interpretation& A, const std::vector<int>& as,
                            const Interpretation& B, const std::vector<int>& bs,
                            const Formula& f, int m) {
  Value va = eval_formula(A, f, tuple_assignment(as));
  Value vb = eval_formula(B, f, tuple_assignment(bs));
  if (va == vb) {
    throw Error("internal: separation witness evaluates equally on both sides");
  }
  EquivVerdict v;
  v.status = EquivStatus::Separated;
  v.m = m;
  v.witness = f;
  v.value_a = va;
  v.value_b = vb;
  return v;
}

EquivVerdict make_equivalent(int m, std::string method) {
  EquivVerdict v;
  v.status = EquivStatus::Equivalent;
  v.m = m;
  v.method = std::move(method);
  return v;
}

EquivVerdict make_unknown(int m, std::string note) {
  EquivVerdict v;
  v.status = EquivStatus::Unknown;
  v.m = m;
  v.note = std::move(note);
  return v;
}

BigInt max_nat_literal(const Interpretation& I) {
  BigInt mx = 0;
  const Vocabulary& vocab = I.vocab();
  for (std::size_t rel = 0; rel < vocab.rels.size(); ++rel) {
    int ar = vocab.rels[rel].second;
    std::vector<int> tuple(ar, 0);
    while (true) {
      for (bool negated : {false, true}) {
        const BigInt& v = I.literal((int)rel, negated, tuple).as_int();
        if (v > mx) mx = v;
      }
      int pos = ar - 1;
      while (pos >= 0 && tuple[pos] == I.size() - 1) tuple[pos--] = 0;
      if (pos < 0) break;
      ++tuple[pos];
    }
  }
  return mx;
}

// Witness hunt shared by the exact refutation paths: cheap enumeration first,
// then the scheduled characteristic formula, whose evaluation is guarded by a
// digit estimate so the procedure stays honest about infeasible witnesses.
EquivVerdict nat_refutation_witness(const Interpretation& A, const std::vector<int>& as,
                                    const Interpretation& B, const std::vector<int>& bs,
                                    int m) {
  SeparatorBudget sb;
  sb.max_qr = m;
  EquivVerdict sep = find_separator(A, as, B, bs, sb);
  if (sep.status == EquivStatus::Separated) {
    sep.m = m;
    return sep;
  }
  BigInt c1 = std::max(max_nat_literal(A), max_nat_literal(B)) + 1;
  BigInt c2 = BigInt(std::max(A.size(), B.size())) + 1;
  int n = (int)as.size();
  int k = (int)literal_enumeration(A.vocab(), n + m).size();
  try {
    NatSchedule s = nat_schedule(c1, c2, k, m);
    BigInt bits = s.e[m] * (BigInt(msb(s.d[m])) + 1);
    if (bits > (BigInt(1) << 23)) {
      return make_unknown(
          m, "not m-equivalent (Spoiler wins the bijection game), but the "
             "characteristic witness would have around " +
                 BigInt(bits / 4).str() + " digits");
    }
    Formula chi = nat_chi(s, A.vocab(), n, m);
    Value va = eval_formula(A, chi, tuple_assignment(as));
    Value vb = eval_formula(B, chi, tuple_assignment(bs));
    if (va == vb) {
      throw Error("internal: the bijection game refutes equivalence but the "
                  "characteristic formula does not");
    }
    EquivVerdict v;
    v.status = EquivStatus::Separated;
    v.m = m;
    v.witness = chi;
    v.value_a = va;
    v.value_b = vb;
    return v;
  } catch (const BudgetError& b) {
    return make_unknown(m, "not m-equivalent (Spoiler wins the bijection "
                           "game), but no witness within budget: " +
                               std::string(b.what()));
  }
}

}  // namespace

EquivVerdict find_separator(const Interpretation& A, const std::vector<int>& as,
                            const Interpretation& B, const std::vector<int>& bs,
                            const SeparatorBudget& budget) {
  check_pair(A, as, B, bs);
  EnumeratorOptions opt;
  opt.max_qr = budget.max_qr;
  opt.max_nodes = budget.max_nodes;
  opt.free_vars = (int)as.size();
  FormulaEnumerator en(A.vocab(), opt);
  Evaluator evA(A), evB(B);
  Assignment asgA = tuple_assignment(as), asgB = tuple_assignment(bs);
  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(budget.seconds));
  while (Formula f = en.next()) {
    if (std::chrono::steady_clock::now() > deadline) {
      return make_unknown(budget.max_qr,
                          "time budget of " + std::to_string(budget.seconds) +
                              "s exhausted after " + std::to_string(en.emitted()) +
                              " formulas");
    }
    if (evA.eval(f, asgA) != evB.eval(f, asgB)) {
      return make_separated(A, as, B, bs, f, f->qr);
    }
  }
  return make_unknown(budget.max_qr,
                      "no separator among all " + std::to_string(en.emitted()) +
                          " formulas with qr <= " + std::to_string(budget.max_qr) +
                          " and at most " + std::to_string(budget.max_nodes) +
                          " nodes");
}

EquivVerdict decide_equiv_lattice(const Interpretation& A, const std::vector<int>& as,
                                  const Interpretation& B, const std::vector<int>& bs,
                                  int m) {
  check_pair(A, as, B, bs);
  const SemiringPtr& S = A.semiring();
  if (!carrier_elements(S) || !is_lattice_semiring(S)) {
    throw Error("decide_equiv_lattice needs a finite lattice semiring");
  }
  for (const PrimeIdeal& P : prime_ideals(S)) {
    SemiringHom h = make_h_P(S, P);
    Interpretation imA = compose_hom_interp(h, A);
    Interpretation imB = compose_hom_interp(h, B);
    if (solve_one_sided(imA, imB, m, start_map(as, bs)).winner == Winner::Spoiler) {
      return make_separated(A, as, B, bs, lattice_chi_P(A, as, m, P), m);
    }
    if (solve_one_sided(imB, imA, m, start_map(bs, as)).winner == Winner::Spoiler) {
      return make_separated(A, as, B, bs, lattice_chi_P(B, bs, m, P), m);
    }
  }
  return make_equivalent(m, "lattice-hom");
}

EquivVerdict decide_equiv_nat(const Interpretation& A, const std::vector<int>& as,
                              const Interpretation& B, const std::vector<int>& bs,
                              int m) {
  check_pair(A, as, B, bs);
  if (A.semiring()->family != Family::Nat) {
    throw FamilyMismatch("decide_equiv_nat needs interpretations over the naturals");
  }
  if (solve_bijection(A, B, m, start_map(as, bs)).winner == Winner::Duplicator) {
    return make_equivalent(m, "nat-bijection");
  }
  return nat_refutation_witness(A, as, B, bs, m);
}

EquivVerdict decide_equiv_natpoly(const Interpretation& A, const std::vector<int>& as,
                                  const Interpretation& B, const std::vector<int>& bs,
                                  int m, std::optional<BigInt> c,
                                  std::optional<std::uint64_t> e) {
  check_pair(A, as, B, bs);
  const SemiringPtr& S = A.semiring();
  if (S->family != Family::Poly || S->quot != PolyQuotient::NX) {
    throw FamilyMismatch("decide_equiv_natpoly needs N[X] interpretations");
  }
  // Derive the value class from the literals when not supplied.
  BigInt cc = c.value_or(0);
  std::uint64_t ee = e.value_or(0);
  const Vocabulary& vocab = A.vocab();
  for (const Interpretation* I : {&A, &B}) {
    for (std::size_t rel = 0; rel < vocab.rels.size(); ++rel) {
      int ar = vocab.rels[rel].second;
      std::vector<int> tuple(ar, 0);
      while (true) {
        for (bool negated : {false, true}) {
          const Polynomial& p = I->literal((int)rel, negated, tuple).as_poly();
          for (const auto& [mono, coef] : p.terms()) {
            if (!c && coef + 1 > cc) cc = coef + 1;
            for (const auto& [var, ex] : mono.exps) {
              (void)var;
              if (!e && ex.v + 1 > ee) ee = ex.v + 1;
            }
          }
          if (!in_value_class(p, c.value_or(cc > 0 ? cc : 1),
                              e.value_or(ee > 0 ? ee : 1))) {
            throw Error("literal value outside the polynomial class N[X](c, e)");
          }
        }
        int pos = ar - 1;
        while (pos >= 0 && tuple[pos] == I->size() - 1) tuple[pos--] = 0;
        if (pos < 0) break;
        ++tuple[pos];
      }
    }
  }
  if (cc < 1) cc = 1;
  if (ee < 1) ee = 1;
  SemiringHom h = hom_kronecker(S, cc, ee);
  Interpretation imA = compose_hom_interp(h, A);
  Interpretation imB = compose_hom_interp(h, B);
  if (solve_bijection(imA, imB, m, start_map(as, bs)).winner == Winner::Duplicator) {
    return make_equivalent(m, "natpoly-kronecker");
  }
  SeparatorBudget sb;
  sb.max_qr = m;
  EquivVerdict sep = find_separator(A, as, B, bs, sb);
  if (sep.status == EquivStatus::Separated) {
    sep.m = m;
    return sep;
  }
  return make_unknown(m, "not m-equivalent (Spoiler wins the bijection game "
                         "on the digit-encoded images), but no separator "
                         "within the search budget");
}

LeqVerdict decide_leq_boolean(const Interpretation& A, const std::vector<int>& as,
                              const Interpretation& B, const std::vector<int>& bs,
                              int m) {
  check_pair(A, as, B, bs);
  if (A.semiring()->family != Family::Boolean) {
    throw FamilyMismatch("decide_leq_boolean needs Boolean interpretations");
  }
  LeqVerdict v;
  v.m = m;
  if (solve_one_sided(A, B, m, start_map(as, bs)).winner == Winner::Duplicator) {
    v.holds = true;
    return v;
  }
  v.witness = boolean_one_sided_chi(A, as, m);
  v.value_a = eval_formula(A, v.witness, tuple_assignment(as));
  v.value_b = eval_formula(B, v.witness, tuple_assignment(bs));
  if (*v.value_a == *v.value_b) {
    throw Error("internal: the one-sided game refutes domination but the "
                "characteristic formula does not");
  }
  return v;
}

EquivVerdict decide_equiv_boolean(const Interpretation& A, const std::vector<int>& as,
                                  const Interpretation& B, const std::vector<int>& bs,
                                  int m) {
  LeqVerdict ab = decide_leq_boolean(A, as, B, bs, m);
  if (!ab.holds) return make_separated(A, as, B, bs, ab.witness, m);
  LeqVerdict ba = decide_leq_boolean(B, bs, A, as, m);
  if (!ba.holds) return make_separated(A, as, B, bs, ba.witness, m);
  return make_equivalent(m, "boolean-one-sided");
}

bool tropical_rank1_criterion(const Interpretation& A, const Interpretation& B) {
  check_pair(A, {}, B, {});
  const SemiringPtr& S = A.semiring();
  if (S->family != Family::Tropical) {
    throw FamilyMismatch("the criterion is stated for tropical interpretations");
  }
  if (A.vocab().rels.size() != 1 || A.vocab().rels[0].second != 1) {
    throw Error("the criterion needs a single unary relation");
  }
  Value inf = make_inf(S);
  auto fold = [&](const Interpretation& I, bool multiply) {
    Value acc = I.literal(0, false, {0});
    for (int a = 1; a < I.size(); ++a) {
      const Value& v = I.literal(0, false, {a});
      acc = multiply ? sr_mul(S, acc, v) : sr_add(S, acc, v);
    }
    return acc;
  };
  for (const Interpretation* I : {&A, &B}) {
    for (int a = 0; a < I->size(); ++a) {
      if (I->literal(0, true, {a}) != inf) return false;
    }
  }
  return fold(A, false) == fold(B, false) && fold(A, true) == fold(B, true);
}

}  // namespace semeq
