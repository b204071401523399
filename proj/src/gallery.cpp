#include "semeq/gallery.hpp"

#include <sstream>

#include "semeq/charform.hpp"
#include "semeq/equiv.hpp"
#include "semeq/eval.hpp"
#include "semeq/formula.hpp"
#include "semeq/games.hpp"
#include "semeq/homsets.hpp"
#include "semeq/polynomial.hpp"

namespace semeq {

namespace {

// Monadic interpretation from per-element rows: rows[i][r] is the positive
// value of relation r at element i, neg_rows the negated one.
Interpretation monadic(const SemiringPtr& S, const std::vector<std::string>& rels,
                       const std::vector<std::vector<Value>>& rows,
                       const std::vector<std::vector<Value>>& neg_rows) {
  Vocabulary vocab;
  for (const auto& r : rels) vocab.rels.emplace_back(r, 1);
  std::vector<std::string> universe;
  for (std::size_t i = 0; i < rows.size(); ++i) universe.push_back("e" + std::to_string(i + 1));
  Interpretation I(S, vocab, universe);
  for (int i = 0; i < (int)rows.size(); ++i)
    for (int r = 0; r < (int)rels.size(); ++r) {
      I.set_literal(r, false, {i}, rows[i][r]);
      I.set_literal(r, true, {i}, neg_rows[i][r]);
    }
  I.require_total();
  return I;
}

// Same with one shared value for every negated literal.
Interpretation monadic_fill_neg(const SemiringPtr& S, const std::vector<std::string>& rels,
                                const std::vector<std::vector<Value>>& rows, const Value& neg) {
  std::vector<std::vector<Value>> neg_rows(rows.size(),
                                           std::vector<Value>(rels.size(), neg));
  return monadic(S, rels, rows, neg_rows);
}

bool expect_value(const Interpretation& I, const Formula& f, const Value& want,
                  std::string& note) {
  Value got = eval_formula(I, f);
  if (got == want) return true;
  note = formula_to_string(f) + " evaluated to " + format_value(got) + ", expected " +
         format_value(want);
  return false;
}

bool expect_winner(Winner got, Winner want, const std::string& game, std::string& note) {
  if (got == want) return true;
  note = game + " won by " + winner_name(got) + ", expected " + winner_name(want);
  return false;
}

bool expect_status(const EquivVerdict& v, EquivStatus want, const std::string& what,
                   std::string& note) {
  if (v.status == want) return true;
  auto name = [](EquivStatus s) {
    switch (s) {
      case EquivStatus::Equivalent: return "Equivalent";
      case EquivStatus::Separated: return "Separated";
      default: return "Unknown";
    }
  };
  note = what + " returned " + name(v.status) + ", expected " + name(want);
  if (!v.note.empty()) note += " (" + v.note + ")";
  return false;
}

GalleryEntry nat_intro() {
  auto S = SemiringDescriptor::nat();
  auto v = [S](int n) { return make_int(S, n); };
  auto A = monadic_fill_neg(S, {"R"}, {{v(1)}, {v(1)}, {v(2)}}, v(0));
  auto B = monadic_fill_neg(S, {"R"}, {{v(1)}, {v(2)}, {v(2)}}, v(0));
  Formula ex = f_exists("x1", f_pos("R", {"x1"}));

  GalleryEntry e{"nat-intro", "N pair where the 1-move game hides a sum difference", A, B, {}};
  e.checks.push_back({"exists-a", "E x1. R(x1) evaluates to 4 on the left",
                      [=](std::string& note) { return expect_value(A, ex, make_int(S, 4), note); }});
  e.checks.push_back({"exists-b", "E x1. R(x1) evaluates to 5 on the right",
                      [=](std::string& note) { return expect_value(B, ex, make_int(S, 5), note); }});
  e.checks.push_back({"g1-duplicator", "Duplicator wins the 1-move game",
                      [=](std::string& note) {
                        return expect_winner(solve_ef(A, B, 1).winner, Winner::Duplicator,
                                             "1-move game", note);
                      }});
  e.checks.push_back({"bg1-spoiler", "Spoiler wins the 1-move bijection game",
                      [=](std::string& note) {
                        return expect_winner(solve_bijection(A, B, 1).winner, Winner::Spoiler,
                                             "1-move bijection game", note);
                      }});
  e.checks.push_back({"separator-qr1", "the separator search finds a rank-1 witness",
                      [=](std::string& note) {
                        auto v = find_separator(A, {}, B, {});
                        if (!expect_status(v, EquivStatus::Separated, "find_separator", note))
                          return false;
                        if (v.witness->qr != 1) {
                          note = "separator " + formula_to_string(v.witness) +
                                 " has rank " + std::to_string(v.witness->qr);
                          return false;
                        }
                        return true;
                      }});
  return e;
}

GalleryEntry minmax_intro() {
  auto S = SemiringDescriptor::min_max(4);
  auto v = [S](int n) { return make_int(S, n); };
  auto A = monadic_fill_neg(S, {"R"}, {{v(1)}, {v(2)}, {v(4)}}, v(0));
  auto B = monadic_fill_neg(S, {"R"}, {{v(1)}, {v(3)}, {v(4)}}, v(0));
  Formula ex = f_exists("x1", f_pos("R", {"x1"}));
  Formula fa = f_forall("x1", f_pos("R", {"x1"}));

  GalleryEntry e{"minmax-intro", "min-max {0..4} pair with equal rank-1 quantified values", A, B, {}};
  e.checks.push_back({"quantified-values", "both quantified values agree (4 and 1)",
                      [=](std::string& note) {
                        return expect_value(A, ex, make_int(S, 4), note) &&
                               expect_value(B, ex, make_int(S, 4), note) &&
                               expect_value(A, fa, make_int(S, 1), note) &&
                               expect_value(B, fa, make_int(S, 1), note);
                      }});
  e.checks.push_back({"g1-spoiler", "Spoiler wins the 1-move game",
                      [=](std::string& note) {
                        return expect_winner(solve_ef(A, B, 1).winner, Winner::Spoiler,
                                             "1-move game", note);
                      }});
  e.checks.push_back({"search-unknown", "no rank-1 separator within 9 nodes",
                      [=](std::string& note) {
                        SeparatorBudget budget;
                        budget.max_qr = 1;
                        return expect_status(find_separator(A, {}, B, {}, budget),
                                             EquivStatus::Unknown, "find_separator", note);
                      }});
  return e;
}

GalleryEntry wxy_rows() {
  auto S = SemiringDescriptor::poly(PolyQuotient::WX, {"x", "y"});
  Polynomial px = Polynomial::variable(PolyQuotient::WX, 2, 0);
  Polynomial py = Polynomial::variable(PolyQuotient::WX, 2, 1);
  Polynomial xy = poly_add(px, py);
  Value row = make_poly(S, xy);
  Value zero = sr_zero(S);
  auto A = monadic_fill_neg(S, {"R"}, {{row}}, zero);
  auto B = monadic_fill_neg(S, {"R"}, {{row}, {row}}, zero);
  auto C = monadic_fill_neg(S, {"R"}, {{row}, {row}, {row}}, zero);
  Formula fa = f_forall("x1", f_pos("R", {"x1"}));

  GalleryEntry e{"wxy-rows", "W[x,y] rows: multiplicity 1 vs 2 separates, 2 vs 3 does not", A, B, {}};
  e.checks.push_back({"forall-values", "A x1. R(x1) gives x+y on one row, x+xy+y on two",
                      [=](std::string& note) {
                        return expect_value(A, fa, make_poly(S, xy), note) &&
                               expect_value(B, fa, make_poly(S, poly_mul(xy, xy)), note);
                      }});
  e.checks.push_back({"cg2-1v2-spoiler", "Spoiler wins the 1-move 2-counting game on 1 vs 2 rows",
                      [=](std::string& note) {
                        return expect_winner(solve_counting(A, B, 1, 2).winner, Winner::Spoiler,
                                             "2-counting game", note);
                      }});
  e.checks.push_back({"cg2-2v3-duplicator", "Duplicator wins it on 2 vs 3 rows",
                      [=](std::string& note) {
                        return expect_winner(solve_counting(B, C, 1, 2).winner, Winner::Duplicator,
                                             "2-counting game", note);
                      }});
  e.checks.push_back({"separator-1v2", "the search separates 1 vs 2 rows at rank 1",
                      [=](std::string& note) {
                        auto v = find_separator(A, {}, B, {});
                        return expect_status(v, EquivStatus::Separated, "find_separator", note) &&
                               v.witness->qr <= 1;
                      }});
  e.checks.push_back({"search-2v3-unknown", "no rank-1 separator for 2 vs 3 rows",
                      [=](std::string& note) {
                        SeparatorBudget budget;
                        budget.max_qr = 1;
                        return expect_status(find_separator(B, {}, C, {}, budget),
                                             EquivStatus::Unknown, "find_separator", note);
                      }});
  e.checks.push_back({"two-idempotent", "W[x,y] is 2-idempotent but not 1-idempotent",
                      [=](std::string& note) {
                        if (!sr_check_n_idempotent(S, 2).holds) {
                          note = "2-idempotence check failed";
                          return false;
                        }
                        if (sr_check_n_idempotent(S, 1).holds) {
                          note = "1-idempotence unexpectedly holds, (x+y)^2 should differ";
                          return false;
                        }
                        return true;
                      }});
  return e;
}

GalleryEntry pist() {
  auto S = SemiringDescriptor::min_max(2);
  Value s = make_int(S, 1), t = make_int(S, 2), z = make_int(S, 0);
  // columns R1, R2; negated columns mirror the published table
  auto A = monadic(S, {"R1", "R2"},
                   {{z, t}, {s, z}, {t, s}, {z, z}},
                   {{s, z}, {z, t}, {z, z}, {t, s}});
  auto B = monadic(S, {"R1", "R2"},
                   {{t, z}, {z, s}, {s, t}, {z, z}},
                   {{z, s}, {t, z}, {z, z}, {s, t}});

  GalleryEntry e{"pist", "non-isomorphic fully idempotent pair, elementarily equivalent", A, B, {}};
  e.checks.push_back({"g1-spoiler", "Spoiler wins the 1-move game",
                      [=](std::string& note) {
                        return expect_winner(solve_ef(A, B, 1).winner, Winner::Spoiler,
                                             "1-move game", note);
                      }});
  e.checks.push_back({"not-isomorphic", "no isomorphism exists",
                      [=](std::string& note) {
                        if (find_isomorphism(A, B)) {
                          note = "found an isomorphism";
                          return false;
                        }
                        return true;
                      }});
  e.checks.push_back({"lattice-equivalent", "the lattice decider proves equivalence up to rank 3",
                      [=](std::string& note) {
                        for (int m = 1; m <= 3; ++m)
                          if (!expect_status(decide_equiv_lattice(A, {}, B, {}, m),
                                             EquivStatus::Equivalent,
                                             "decide_equiv_lattice m=" + std::to_string(m), note))
                            return false;
                        return true;
                      }});
  return e;
}

GalleryEntry tropical_v1() {
  auto S = SemiringDescriptor::tropical();
  Value inf = make_inf(S);
  auto A = monadic_fill_neg(S, {"R"},
                            {{make_int(S, 0)}, {make_int(S, 1)}, {make_int(S, 1)}}, inf);
  auto B = monadic_fill_neg(S, {"R"}, {{make_int(S, 0)}, {make_int(S, 2)}}, inf);

  GalleryEntry e{"tropical-v1", "tropical pair: equal min and sum defeat the 1-move game", A, B, {}};
  e.checks.push_back({"rank1-criterion", "the three-part 1-equivalence criterion holds",
                      [=](std::string& note) {
                        if (!tropical_rank1_criterion(A, B)) {
                          note = "criterion rejected the pair";
                          return false;
                        }
                        return true;
                      }});
  e.checks.push_back({"g1-spoiler", "Spoiler wins the 1-move game",
                      [=](std::string& note) {
                        return expect_winner(solve_ef(A, B, 1).winner, Winner::Spoiler,
                                             "1-move game", note);
                      }});
  e.checks.push_back({"search-unknown", "no rank-1 separator within 9 nodes",
                      [=](std::string& note) {
                        SeparatorBudget budget;
                        budget.max_qr = 1;
                        return expect_status(find_separator(A, {}, B, {}, budget),
                                             EquivStatus::Unknown, "find_separator", note);
                      }});
  return e;
}

GalleryEntry sigma4_majority() {
  auto S = SemiringDescriptor::min_max(3);
  auto v = [S](int n) { return make_int(S, n); };
  auto A = monadic_fill_neg(S, {"Q", "R"}, {{v(1), v(3)}, {v(2), v(1)}, {v(3), v(2)}}, v(0));
  auto B = monadic_fill_neg(S, {"Q", "R"}, {{v(3), v(1)}, {v(1), v(2)}, {v(2), v(3)}}, v(0));

  GalleryEntry e{"sigma4-majority", "majority property is invisible to min-max {0..3} sentences",
                 A, B, {}};
  e.checks.push_back({"g1-spoiler", "Spoiler wins the 1-move game",
                      [=](std::string& note) {
                        return expect_winner(solve_ef(A, B, 1).winner, Winner::Spoiler,
                                             "1-move game", note);
                      }});
  e.checks.push_back({"idc-elements", "the +-indecomposable elements are 1, 2, 3",
                      [=](std::string& note) {
                        auto idc = idc_elements(S);
                        std::vector<Value> want = {v(1), v(2), v(3)};
                        if (idc.elements != want) {
                          note = "got " + std::to_string(idc.elements.size()) + " elements";
                          return false;
                        }
                        return true;
                      }});
  e.checks.push_back({"prime-ideals", "the prime ideals are the three proper downsets",
                      [=](std::string& note) {
                        auto ideals = prime_ideals(S);
                        std::vector<std::vector<Value>> want = {
                            {v(0)}, {v(0), v(1)}, {v(0), v(1), v(2)}};
                        if (ideals.size() != want.size()) {
                          note = "got " + std::to_string(ideals.size()) + " ideals";
                          return false;
                        }
                        for (std::size_t i = 0; i < want.size(); ++i)
                          if (ideals[i].members != want[i]) {
                            note = "ideal " + std::to_string(i) + " differs";
                            return false;
                          }
                        return true;
                      }});
  e.checks.push_back({"separating-sets", "both induced homomorphism sets separate",
                      [=](std::string& note) {
                        std::vector<SemiringHom> hs, hp;
                        for (const auto& el : idc_elements(S).elements) hs.push_back(make_h_s(S, el));
                        for (const auto& P : prime_ideals(S)) hp.push_back(make_h_P(S, P));
                        if (!verify_separating(S, hs)) {
                          note = "idc homomorphisms do not separate";
                          return false;
                        }
                        if (!verify_separating(S, hp)) {
                          note = "prime-ideal homomorphisms do not separate";
                          return false;
                        }
                        return true;
                      }});
  e.checks.push_back({"h2-pointwise", "h_2 agrees with the ideal {0,1} hom on the carrier",
                      [=](std::string& note) {
                        auto h2 = make_h_s(S, v(2));
                        auto hp = make_h_P(S, prime_ideals(S)[1]);
                        for (int j = 0; j <= 3; ++j)
                          if (h2.apply(v(j)) != hp.apply(v(j))) {
                            note = "differ at " + std::to_string(j);
                            return false;
                          }
                        return true;
                      }});
  e.checks.push_back({"hom-game-duplicator", "Duplicator wins the 2-move homomorphism game",
                      [=](std::string& note) {
                        std::vector<SemiringHom> hp;
                        for (const auto& P : prime_ideals(S)) hp.push_back(make_h_P(S, P));
                        return expect_winner(solve_hom_game(A, B, hp, 2).winner,
                                             Winner::Duplicator, "2-move homomorphism game", note);
                      }});
  e.checks.push_back({"hom-images-isomorphic", "every prime-ideal image pair is isomorphic",
                      [=](std::string& note) {
                        for (const auto& P : prime_ideals(S)) {
                          auto h = make_h_P(S, P);
                          if (!find_isomorphism(compose_hom_interp(h, A),
                                                compose_hom_interp(h, B))) {
                            note = h.name + " images are not isomorphic";
                            return false;
                          }
                        }
                        return true;
                      }});
  e.checks.push_back({"lattice-equivalent", "the lattice decider proves equivalence up to rank 3",
                      [=](std::string& note) {
                        for (int m = 1; m <= 3; ++m)
                          if (!expect_status(decide_equiv_lattice(A, {}, B, {}, m),
                                             EquivStatus::Equivalent,
                                             "decide_equiv_lattice m=" + std::to_string(m), note))
                            return false;
                        return true;
                      }});
  return e;
}

// Truncations of the non-model-defining Boolean pair: level m keeps
// a_0..a_{2m} on the left and b_1..b_{2m} on the right. Rows alternate between
// the empty profile and R1=R2=1; a_0 alone has R1=1, R2=0; negated literals
// are 0 everywhere, so neither side is model-defining.
GalleryEntry appendix_trunc(int m) {
  auto S = SemiringDescriptor::boolean();
  Value z = make_int(S, 0), o = make_int(S, 1);
  std::vector<std::vector<Value>> rows_a = {{o, z}};
  std::vector<std::vector<Value>> rows_b;
  for (int i = 1; i <= 2 * m; ++i) {
    std::vector<Value> row = (i % 2 == 0) ? std::vector<Value>{o, o} : std::vector<Value>{z, z};
    rows_a.push_back(row);
    rows_b.push_back(row);
  }
  auto A = monadic_fill_neg(S, {"R1", "R2"}, rows_a, z);
  auto B = monadic_fill_neg(S, {"R1", "R2"}, rows_b, z);

  GalleryEntry e{"appendix-trunc-" + std::to_string(m),
                 "non-model-defining Boolean pair beating the " + std::to_string(m) +
                     "-move game",
                 A, B, {}};
  e.checks.push_back({"not-model-defining", "both sides leave literal pairs undetermined",
                      [=](std::string& note) {
                        if (A.is_model_defining() || B.is_model_defining()) {
                          note = "a side is model-defining";
                          return false;
                        }
                        return true;
                      }});
  e.checks.push_back({"gm-spoiler", "Spoiler wins the m-move game by picking the extra row",
                      [=](std::string& note) {
                        return expect_winner(solve_ef(A, B, m).winner, Winner::Spoiler,
                                             std::to_string(m) + "-move game", note);
                      }});
  e.checks.push_back({"boolean-equivalent", "the one-sided decider proves rank-m equivalence",
                      [=](std::string& note) {
                        return expect_status(decide_equiv_boolean(A, {}, B, {}, m),
                                             EquivStatus::Equivalent, "decide_equiv_boolean",
                                             note);
                      }});
  return e;
}

GalleryEntry soundidem_witness() {
  auto S = SemiringDescriptor::nat();
  Value one = make_int(S, 1), zero = make_int(S, 0);
  auto A = monadic_fill_neg(S, {"R"}, {{one}, {one}}, zero);
  auto B = monadic_fill_neg(S, {"R"}, {{one}}, zero);

  GalleryEntry e{"soundidem-witness", "duplicated row defeats 1-move soundness off idempotence",
                 A, B, {}};
  e.checks.push_back({"g1-duplicator", "Duplicator wins the 1-move game",
                      [=](std::string& note) {
                        return expect_winner(solve_ef(A, B, 1).winner, Winner::Duplicator,
                                             "1-move game", note);
                      }});
  e.checks.push_back({"separated-qr1", "E x1. R(x1) separates with values 2 and 1",
                      [=](std::string& note) {
                        auto v = find_separator(A, {}, B, {});
                        if (!expect_status(v, EquivStatus::Separated, "find_separator", note))
                          return false;
                        if (v.witness->qr != 1 || *v.value_a != make_int(S, 2) ||
                            *v.value_b != make_int(S, 1)) {
                          note = "witness " + formula_to_string(v.witness) + " gave " +
                                 format_value(*v.value_a) + " vs " + format_value(*v.value_b);
                          return false;
                        }
                        return true;
                      }});
  e.checks.push_back({"nat-decider-separates", "the bijection-game decider refutes rank-1 equivalence",
                      [=](std::string& note) {
                        return expect_status(decide_equiv_nat(A, {}, B, {}, 1),
                                             EquivStatus::Separated, "decide_equiv_nat", note);
                      }});
  return e;
}

}  // namespace

const std::vector<GalleryEntry>& gallery() {
  static const std::vector<GalleryEntry> entries = [] {
    std::vector<GalleryEntry> out;
    out.push_back(nat_intro());
    out.push_back(minmax_intro());
    out.push_back(wxy_rows());
    out.push_back(pist());
    out.push_back(tropical_v1());
    out.push_back(sigma4_majority());
    out.push_back(appendix_trunc(1));
    out.push_back(appendix_trunc(2));
    out.push_back(soundidem_witness());
    return out;
  }();
  return entries;
}

const GalleryEntry* gallery_find(const std::string& id) {
  for (const auto& e : gallery())
    if (e.id == id) return &e;
  return nullptr;
}

ReproReport run_gallery_entry(const GalleryEntry& e) {
  ReproReport rep{e.id, 0, {}};
  for (const auto& c : e.checks) {
    std::string note;
    bool ok = false;
    try {
      ok = c.run(note);
    } catch (const std::exception& ex) {
      note = std::string("threw: ") + ex.what();
    }
    if (ok)
      ++rep.passed;
    else
      rep.failures.push_back(c.name + ": " + (note.empty() ? "failed" : note));
  }
  return rep;
}

}  // namespace semeq
