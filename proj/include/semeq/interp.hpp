#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semeq/hom.hpp"
#include "semeq/semiring.hpp"

namespace semeq {

// Relational vocabulary; every relation has arity >= 1.
struct Vocabulary {
  std::vector<std::pair<std::string, int>> rels;

  int index_of(const std::string& name) const;
  int arity(int rel) const { return rels.at(rel).second; }
  const std::string& rel_name(int rel) const { return rels.at(rel).first; }
  bool operator==(const Vocabulary& o) const = default;
};

// Semiring interpretation: a total map from instantiated literals (both
// polarities) over an ordered finite universe to semiring values.
class Interpretation {
 public:
  Interpretation(SemiringPtr sr, Vocabulary vocab, std::vector<std::string> universe,
                 bool allow_empty = false);

  const SemiringPtr& semiring() const { return sr_; }
  const Vocabulary& vocab() const { return vocab_; }
  int size() const { return (int)universe_.size(); }
  const std::vector<std::string>& universe() const { return universe_; }
  int element(const std::string& name) const;  // -1 if unknown

  void set_literal(int rel, bool negated, const std::vector<int>& tuple, Value v);
  void set_literal(const std::string& rel, bool negated,
                   const std::vector<std::string>& tuple, const Value& v);
  const Value& literal(int rel, bool negated, const std::vector<int>& tuple) const;

  // names of literals still unset (totality check)
  std::vector<std::string> missing_literals() const;
  void require_total() const;

  // unlisted positive literals become 0, unlisted negations 1
  void fill_default_complement();

  // every complementary literal pair has exactly one value equal to 0
  bool is_model_defining() const;

  static Interpretation load(const std::string& path, bool allow_empty = false);
  static Interpretation parse(const std::string& text, const std::string& base_dir,
                              bool allow_empty = false);
  std::string dump() const;

 private:
  SemiringPtr sr_;
  Vocabulary vocab_;
  std::vector<std::string> universe_;
  // values_[rel][negated][flat tuple index]
  std::vector<std::array<std::vector<std::optional<Value>>, 2>> values_;

  std::size_t flat_index(int rel, const std::vector<int>& tuple) const;
};

// Partial injective map between universes, kept sorted by first component.
using PartialMap = std::vector<std::pair<int, int>>;

// Tuple map a_i -> b_i is a local isomorphism between the induced
// subinterpretations: well-defined, injective, literal-value preserving.
bool local_iso(const Interpretation& A, const std::vector<int>& as,
               const Interpretation& B, const std::vector<int>& bs);
bool partial_map_local_iso(const Interpretation& A, const Interpretation& B,
                           const PartialMap& pm);

// Full isomorphism search: backtracking over literal-profile-compatible
// candidates. Returns the element mapping A -> B, or nullopt.
std::optional<std::vector<int>> find_isomorphism(const Interpretation& A,
                                                 const Interpretation& B);

// Applies a semiring homomorphism to every literal value.
Interpretation compose_hom_interp(const SemiringHom& h, const Interpretation& I);

}  // namespace semeq
