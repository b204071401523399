#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "semeq/charform.hpp"
#include "semeq/equiv.hpp"
#include "semeq/errors.hpp"
#include "semeq/eval.hpp"
#include "semeq/formula.hpp"
#include "semeq/gallery.hpp"
#include "semeq/games.hpp"
#include "semeq/homsets.hpp"
#include "semeq/interp.hpp"
#include "semeq/semiring.hpp"

namespace {

using namespace semeq;

// "x1=a,x2=b" against the universe of I
Assignment parse_assignment(const Interpretation& I, const std::string& text) {
  Assignment asg;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw ParseError("assignment entries look like x1=elem: '" + item + "'");
    std::string var = item.substr(0, eq), elem = item.substr(eq + 1);
    int idx = I.element(elem);
    if (idx < 0) throw ParseError("unknown element '" + elem + "'");
    asg[var] = idx;
  }
  return asg;
}

std::vector<int> parse_tuple(const Interpretation& I, const std::string& text) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    int idx = I.element(item);
    if (idx < 0) throw ParseError("unknown element '" + item + "'");
    out.push_back(idx);
  }
  return out;
}

std::vector<SemiringHom> load_homset(const std::string& spec, const SemiringPtr& S) {
  std::vector<SemiringHom> homs;
  if (spec == "idc") {
    for (const auto& s : idc_elements(S).elements) homs.push_back(make_h_s(S, s));
    return homs;
  }
  if (spec == "prime") {
    for (const auto& P : prime_ideals(S)) homs.push_back(make_h_P(S, P));
    return homs;
  }
  std::ifstream in(spec);
  if (!in) throw ParseError("cannot open homset file '" + spec + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "idc") {
      std::string value;
      if (!(ls >> value)) throw ParseError("homset line " + std::to_string(lineno) + ": missing value");
      homs.push_back(make_h_s(S, parse_value(S, value)));
    } else if (kw == "ideal") {
      PrimeIdeal P;
      std::string value;
      while (ls >> value) P.members.push_back(parse_value(S, value));
      homs.push_back(make_h_P(S, P));
    } else {
      throw ParseError("homset line " + std::to_string(lineno) + ": lines start with idc or ideal");
    }
  }
  if (homs.empty()) throw ParseError("homset file '" + spec + "' lists no homomorphisms");
  return homs;
}

void render_strategy(std::ostream& out, const StrategyPtr& node, const Interpretation& A,
                     const Interpretation& B, int indent) {
  if (!node) return;
  std::string pad((std::size_t)indent * 2, ' ');
  if (!node->note.empty()) out << pad << "note: " << node->note << "\n";
  if (node->truncated) out << pad << "(deeper rounds omitted)\n";
  for (const auto& br : node->branches) {
    out << pad << "-";
    for (const auto& mv : br.moves) out << " " << move_to_string(mv, A, B) << ";";
    out << "\n";
    render_strategy(out, br.child, A, B, indent + 1);
  }
}

void print_verdict(const EquivVerdict& v) {
  switch (v.status) {
    case EquivStatus::Equivalent:
      std::cout << "status Equivalent\nm " << v.m << "\nmethod " << v.method << "\n";
      break;
    case EquivStatus::Separated:
      std::cout << "status Separated\nm " << v.m << "\nwitness "
                << formula_to_string(v.witness) << "\nvalue-a " << format_value(*v.value_a)
                << "\nvalue-b " << format_value(*v.value_b) << "\n";
      break;
    case EquivStatus::Unknown:
      std::cout << "status Unknown\nnote " << v.note << "\n";
      break;
  }
}

int cmd_eval(const std::string& interp_path, const std::string& formula_text,
             const std::string& at) {
  auto I = Interpretation::load(interp_path);
  Formula f = formula_from_string(formula_text);
  Assignment asg = parse_assignment(I, at);
  std::cout << format_value(eval_formula(I, f, asg)) << "\n";
  return 0;
}

int cmd_game(const std::string& kind, const std::string& a_path, const std::string& b_path,
             int moves, bool moves_given, int set_size, const std::string& homset,
             bool witness) {
  auto A = Interpretation::load(a_path);
  auto B = Interpretation::load(b_path);
  GameOptions opt;
  opt.build_witness = witness;

  auto need_moves = [&] {
    if (!moves_given) throw ParseError("game kind '" + kind + "' needs --moves");
  };
  auto reject_setsize = [&] {
    if (set_size >= 0) throw ParseError("--setsize only applies to the counting game");
  };
  auto reject_homset = [&] {
    if (!homset.empty()) throw ParseError("--homset only applies to the homomorphism game");
  };

  if (kind == "unbounded") {
    reject_setsize();
    reject_homset();
    if (moves_given) throw ParseError("the unbounded game has no --moves");
    auto r = solve_unbounded(A, B);
    std::cout << winner_name(r.winner) << "\n";
    if (r.iso) {
      std::cout << "isomorphism";
      for (int i = 0; i < (int)r.iso->size(); ++i)
        std::cout << " " << A.universe()[i] << "->" << B.universe()[(*r.iso)[i]];
      std::cout << "\n";
    }
    return 0;
  }
  if (kind == "hom") {
    reject_setsize();
    need_moves();
    if (homset.empty()) throw ParseError("the homomorphism game needs --homset idc|prime|FILE");
    auto homs = load_homset(homset, A.semiring());
    auto r = solve_hom_game(A, B, homs, moves, opt);
    std::cout << winner_name(r.winner) << "\n";
    if (r.winner == Winner::Spoiler) {
      std::cout << "hom " << homs[r.hom_index].name << "\norientation "
                << (r.orientation == 0 ? "left-le-right" : "right-le-left") << "\n";
    }
    if (witness) render_strategy(std::cout, r.sub.strategy, A, B, 0);
    return 0;
  }

  reject_homset();
  GameResult r;
  if (kind == "ef") {
    reject_setsize();
    need_moves();
    r = solve_ef(A, B, moves, {}, opt);
  } else if (kind == "bijection") {
    reject_setsize();
    need_moves();
    r = solve_bijection(A, B, moves, {}, opt);
  } else if (kind == "counting") {
    need_moves();
    if (set_size < 1) throw ParseError("the counting game needs --setsize n with n >= 1");
    r = solve_counting(A, B, moves, set_size, {}, opt);
  } else if (kind == "onesided") {
    reject_setsize();
    need_moves();
    r = solve_one_sided(A, B, moves, {}, opt);
  } else {
    throw ParseError("unknown game kind '" + kind + "'");
  }
  std::cout << winner_name(r.winner) << "\n";
  if (witness) render_strategy(std::cout, r.strategy, A, B, 0);
  return 0;
}

int cmd_equiv(const std::string& a_path, const std::string& b_path, int m,
              const std::string& method, int qr, std::uint64_t max_nodes, double seconds) {
  auto A = Interpretation::load(a_path);
  auto B = Interpretation::load(b_path);
  std::string chosen = method;
  if (chosen == "auto") {
    const auto& S = A.semiring();
    if (S->family == Family::Boolean)
      chosen = "boolean";
    else if (is_lattice_semiring(S))
      chosen = "lattice";
    else if (S->family == Family::Nat)
      chosen = "nat";
    else if (S->family == Family::Poly && S->quot == PolyQuotient::NX)
      chosen = "natpoly";
    else
      chosen = "search";
  }
  EquivVerdict v;
  if (chosen == "lattice")
    v = decide_equiv_lattice(A, {}, B, {}, m);
  else if (chosen == "nat")
    v = decide_equiv_nat(A, {}, B, {}, m);
  else if (chosen == "natpoly")
    v = decide_equiv_natpoly(A, {}, B, {}, m);
  else if (chosen == "boolean")
    v = decide_equiv_boolean(A, {}, B, {}, m);
  else if (chosen == "search") {
    SeparatorBudget budget;
    budget.max_qr = qr;
    budget.max_nodes = max_nodes;
    budget.seconds = seconds;
    v = find_separator(A, {}, B, {}, budget);
  } else {
    throw ParseError("unknown method '" + method + "'");
  }
  print_verdict(v);
  return 0;
}

int cmd_char(const std::string& interp_path, const std::string& kind, int m,
             const std::string& tuple_text, const std::string& s_text, int ideal_index,
             const BigInt& c1, const BigInt& c2) {
  auto I = Interpretation::load(interp_path);
  auto abar = parse_tuple(I, tuple_text);
  if (kind == "nat") {
    int n = (int)abar.size();
    int k = (int)literal_enumeration(I.vocab(), n + m).size();
    auto sched = nat_schedule(c1, c2, k, m);
    std::cout << "k " << k << "\ne";
    for (const auto& e : sched.e) std::cout << " " << e.str();
    std::cout << "\nd";
    for (const auto& d : sched.d) std::cout << " " << d.str();
    std::cout << "\ncertificate";
    for (const auto& c : sched.certificate) std::cout << " " << c;
    std::cout << "\nformula " << formula_to_string(nat_chi(sched, I.vocab(), n, m)) << "\n";
    return 0;
  }
  Formula f;
  if (kind == "boolean") {
    f = boolean_one_sided_chi(I, abar, m);
  } else if (kind == "lattice-s") {
    if (s_text.empty()) throw ParseError("--kind lattice-s needs --s VALUE");
    f = lattice_chi_s(I, abar, m, parse_value(I.semiring(), s_text));
  } else if (kind == "lattice-p") {
    auto ideals = prime_ideals(I.semiring());
    if (ideal_index < 0 || ideal_index >= (int)ideals.size())
      throw ParseError("--ideal must index the prime ideal list (0.." +
                       std::to_string(ideals.size() - 1) + ")");
    f = lattice_chi_P(I, abar, m, ideals[ideal_index]);
  } else {
    throw ParseError("unknown characteristic-formula kind '" + kind + "'");
  }
  std::cout << formula_to_string(f) << "\n";
  return 0;
}

int cmd_homset(const std::string& spec, const std::string& kind, bool verify,
               std::uint64_t seed) {
  auto S = SemiringDescriptor::from_spec(spec, ".");
  std::vector<SemiringHom> homs;
  if (kind == "idc") {
    for (const auto& s : idc_elements(S).elements) homs.push_back(make_h_s(S, s));
  } else if (kind == "prime") {
    for (const auto& P : prime_ideals(S)) homs.push_back(make_h_P(S, P));
  } else {
    throw ParseError("unknown homset kind '" + kind + "'");
  }
  std::cout << "semiring " << S->name() << "\nkind " << kind << "\n";
  auto carrier = carrier_elements(S);
  for (const auto& h : homs) {
    std::cout << h.name << ":";
    if (carrier)
      for (const auto& v : *carrier)
        std::cout << " " << format_value(v) << "->" << format_value(h.apply(v));
    std::cout << "\n";
  }
  if (verify) {
    std::cout << "seed 0x" << std::hex << seed << std::dec << "\n";
    for (const auto& h : homs) {
      auto res = verify_hom(h, seed);
      std::cout << "verify " << h.name << " " << (res.ok ? "ok" : ("violates " + res.law))
                << "\n";
    }
  }
  std::cout << "separating " << (verify_separating(S, homs) ? "yes" : "no") << "\n";
  return 0;
}

int cmd_validate(const std::string& table_path) {
  auto t = TableSemiring::load(table_path);
  auto violations = validate_table_semiring(t);
  if (violations.empty()) {
    std::cout << "valid\n";
    return 0;
  }
  for (const auto& v : violations)
    std::cout << "violation " << table_axiom_name(v.code) << ": " << v.detail << "\n";
  return 1;
}

int cmd_repro(const std::string& id) {
  std::vector<const GalleryEntry*> todo;
  if (id == "all") {
    for (const auto& e : gallery()) todo.push_back(&e);
  } else {
    const auto* e = gallery_find(id);
    if (!e) throw ParseError("unknown gallery id '" + id + "'");
    todo.push_back(e);
  }
  int passed = 0, failed = 0;
  for (const auto* e : todo) {
    std::cout << "entry " << e->id << "\n";
    auto rep = run_gallery_entry(*e);
    passed += rep.passed;
    failed += (int)rep.failures.size();
    for (const auto& c : e->checks) {
      bool bad = false;
      for (const auto& f : rep.failures)
        if (f.rfind(c.name + ":", 0) == 0) bad = true;
      if (!bad) std::cout << "  ok " << c.name << " (" << c.claim << ")\n";
    }
    for (const auto& f : rep.failures) std::cout << "  FAIL " << f << "\n";
  }
  std::cout << "passed " << passed << " failed " << failed << "\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semiring semantics workbench"};
  app.require_subcommand(1);

  std::string interp_path, formula_text, at_text;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a formula in an interpretation");
  eval_cmd->add_option("interp", interp_path, "interpretation file")->required();
  eval_cmd->add_option("formula", formula_text, "formula text")->required();
  eval_cmd->add_option("--at", at_text, "assignment x1=elem,x2=elem");

  std::string game_kind, game_a, game_b, homset_spec;
  int moves = 0, set_size = -1;
  bool witness = false;
  auto* game_cmd = app.add_subcommand("game", "solve a model-comparison game");
  game_cmd->add_option("kind", game_kind, "ef|bijection|counting|unbounded|onesided|hom")
      ->required();
  game_cmd->add_option("a", game_a, "left interpretation file")->required();
  game_cmd->add_option("b", game_b, "right interpretation file")->required();
  auto* moves_opt = game_cmd->add_option("--moves", moves, "number of rounds");
  game_cmd->add_option("--setsize", set_size, "counting-game set bound");
  game_cmd->add_option("--homset", homset_spec, "idc|prime|FILE for the homomorphism game");
  game_cmd->add_flag("--witness", witness, "print a strategy witness");

  std::string equiv_a, equiv_b, method = "auto";
  int equiv_m = 1, qr = 2;
  std::uint64_t max_nodes = 9;
  double seconds = 10.0;
  auto* equiv_cmd = app.add_subcommand("equiv", "decide or refute m-equivalence");
  equiv_cmd->add_option("a", equiv_a, "left interpretation file")->required();
  equiv_cmd->add_option("b", equiv_b, "right interpretation file")->required();
  equiv_cmd->add_option("--m", equiv_m, "quantifier-rank bound");
  equiv_cmd->add_option("--method", method, "auto|lattice|nat|natpoly|boolean|search");
  equiv_cmd->add_option("--qr", qr, "search: quantifier-rank budget");
  equiv_cmd->add_option("--max-nodes", max_nodes, "search: node-count budget");
  equiv_cmd->add_option("--seconds", seconds, "search: time budget");

  std::string char_interp, char_kind = "boolean", tuple_text, s_text;
  int char_m = 1, ideal_index = 0;
  std::string c1_text = "2", c2_text = "3";
  auto* char_cmd = app.add_subcommand("char", "print a characteristic formula");
  char_cmd->add_option("interp", char_interp, "interpretation file")->required();
  char_cmd->add_option("--kind", char_kind, "nat|boolean|lattice-s|lattice-p");
  char_cmd->add_option("--m", char_m, "quantifier-rank level");
  char_cmd->add_option("--tuple", tuple_text, "anchored elements e1,e2");
  char_cmd->add_option("--s", s_text, "lattice-s filter element");
  char_cmd->add_option("--ideal", ideal_index, "lattice-p prime-ideal index");
  char_cmd->add_option("--c1", c1_text, "nat: literal-value bound");
  char_cmd->add_option("--c2", c2_text, "nat: universe-size bound");

  std::string homset_semiring, homset_kind = "idc";
  bool homset_verify = false;
  std::uint64_t seed = 0xEF01;
  auto* homset_cmd = app.add_subcommand("homset", "derive Boolean homomorphism sets");
  homset_cmd->add_option("semiring", homset_semiring, "semiring spec, e.g. minmax:3")->required();
  homset_cmd->add_option("--kind", homset_kind, "idc|prime");
  homset_cmd->add_flag("--verify", homset_verify, "check the homomorphism laws");
  homset_cmd->add_option("--seed", seed, "sampling seed for verification");

  std::string table_path;
  auto* validate_cmd = app.add_subcommand("validate-semiring", "check a table semiring");
  validate_cmd->add_option("table", table_path, "table file")->required();

  std::string repro_id;
  auto* repro_cmd = app.add_subcommand("repro", "re-run gallery expectations");
  repro_cmd->add_option("id", repro_id, "gallery id or 'all'")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*eval_cmd) return cmd_eval(interp_path, formula_text, at_text);
    if (*game_cmd)
      return cmd_game(game_kind, game_a, game_b, moves, moves_opt->count() > 0, set_size,
                      homset_spec, witness);
    if (*equiv_cmd) return cmd_equiv(equiv_a, equiv_b, equiv_m, method, qr, max_nodes, seconds);
    if (*char_cmd)
      return cmd_char(char_interp, char_kind, char_m, tuple_text, s_text, ideal_index,
                      BigInt(c1_text), BigInt(c2_text));
    if (*homset_cmd) return cmd_homset(homset_semiring, homset_kind, homset_verify, seed);
    if (*validate_cmd) return cmd_validate(table_path);
    if (*repro_cmd) return cmd_repro(repro_id);
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
