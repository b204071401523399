#pragma once

#include <stdexcept>
#include <string>

namespace semeq {

// Base class for all workbench errors. CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed textual input (formulas, values, interpretation or table files).
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " (at offset " + std::to_string(pos) + ")"), pos(pos) {}
  explicit ParseError(const std::string& msg) : Error(msg), pos(0) {}
  std::size_t pos;
};

// Operands belong to different semirings, or a value is outside its carrier.
class FamilyMismatch : public Error {
 public:
  explicit FamilyMismatch(const std::string& msg) : Error(msg) {}
};

// One distinct code per semiring axiom a table can violate.
enum class TableAxiom {
  Shape,                 // ragged rows, unknown names, missing blocks
  ZeroEqualsOne,
  AddNotCommutative,
  AddNotAssociative,
  AddZeroNotIdentity,
  MulNotCommutative,
  MulNotAssociative,
  MulOneNotIdentity,
  ZeroNotAnnihilating,
  NotDistributive,
  OrderNotAntisymmetric, // natural preorder fails antisymmetry
};

const char* table_axiom_name(TableAxiom a);

class ValidationError : public Error {
 public:
  ValidationError(TableAxiom code, const std::string& msg)
      : Error(std::string(table_axiom_name(code)) + ": " + msg), code(code) {}
  TableAxiom code;
};

// A documented search or size budget ran out; never silently approximated.
class BudgetError : public Error {
 public:
  explicit BudgetError(const std::string& msg) : Error(msg) {}
};

// Hard resource caps (e.g. polynomial monomial count).
class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& msg) : Error(msg) {}
};

}  // namespace semeq
