#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kelley {

enum class ErrorKind {
  // input shape
  ParseError,
  SchemaError,
  GroundSetMismatch,
  EmptySequence,
  EmptyFamily,
  EmptySetInFamily,
  BadThreshold,
  BudgetTooLarge,
  NotAProbability,
  // semantic rejections
  ZeroConditioningSet,
  NotDownClosed,
  NotUnionClosed,
  NotProper,
  NotPrincipalComplete,
  ImproperIdeal,
  InvalidDecomposition,
  NormalizationImpossible,
  DegenerateFunctional,
  // lp verdicts
  Infeasible,
  Unbounded,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::GroundSetMismatch: return "GroundSetMismatch";
    case ErrorKind::EmptySequence: return "EmptySequence";
    case ErrorKind::EmptyFamily: return "EmptyFamily";
    case ErrorKind::EmptySetInFamily: return "EmptySetInFamily";
    case ErrorKind::BadThreshold: return "BadThreshold";
    case ErrorKind::BudgetTooLarge: return "BudgetTooLarge";
    case ErrorKind::NotAProbability: return "NotAProbability";
    case ErrorKind::ZeroConditioningSet: return "ZeroConditioningSet";
    case ErrorKind::NotDownClosed: return "NotDownClosed";
    case ErrorKind::NotUnionClosed: return "NotUnionClosed";
    case ErrorKind::NotProper: return "NotProper";
    case ErrorKind::NotPrincipalComplete: return "NotPrincipalComplete";
    case ErrorKind::ImproperIdeal: return "ImproperIdeal";
    case ErrorKind::InvalidDecomposition: return "InvalidDecomposition";
    case ErrorKind::NormalizationImpossible: return "NormalizationImpossible";
    case ErrorKind::DegenerateFunctional: return "DegenerateFunctional";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::Unbounded: return "Unbounded";
  }
  return "Unknown";
}

/// True for errors that reject a well-formed instance on mathematical
/// grounds (the CLI maps these to exit code 2).
inline bool is_semantic(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroConditioningSet:
    case ErrorKind::NotDownClosed:
    case ErrorKind::NotUnionClosed:
    case ErrorKind::NotProper:
    case ErrorKind::NotPrincipalComplete:
    case ErrorKind::ImproperIdeal:
    case ErrorKind::InvalidDecomposition:
    case ErrorKind::NormalizationImpossible:
    case ErrorKind::DegenerateFunctional:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  Error(ErrorKind kind, const std::string& what, std::vector<std::uint64_t> witness)
      : Error(kind, what) {
    witness_ = std::move(witness);
  }

  ErrorKind kind() const noexcept { return kind_; }
  /// Offending sets as atom bitmasks, when the failing check has them.
  const std::vector<std::uint64_t>& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::vector<std::uint64_t> witness_;
};

}  // namespace kelley
