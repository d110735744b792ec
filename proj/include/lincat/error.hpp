#ifndef LINCAT_ERROR_HPP
#define LINCAT_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lincat {

enum class ErrorKind {
  AxiomViolation,
  ShapeMismatch,
  FieldMismatch,
  UnknownName,
  BadParams,
  InvalidFamily,
  NotComposable,
  DegreeTooLarge,
  NotACocycle,
  AlgebraMismatch,
  NotIdempotent,
  MissingUnits,
  NotIdempotentModEps,
  NotAPoint,
  SearchTooLarge,
  ParseError,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::AxiomViolation: return "AxiomViolation";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::InvalidFamily: return "InvalidFamily";
    case ErrorKind::NotComposable: return "NotComposable";
    case ErrorKind::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorKind::NotACocycle: return "NotACocycle";
    case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorKind::NotIdempotent: return "NotIdempotent";
    case ErrorKind::MissingUnits: return "MissingUnits";
    case ErrorKind::NotIdempotentModEps: return "NotIdempotentModEps";
    case ErrorKind::NotAPoint: return "NotAPoint";
    case ErrorKind::SearchTooLarge: return "SearchTooLarge";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Base class of every domain error thrown by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// One failing structure equation: its family name ("Ass", "Id", "Fct", ...),
/// the index tuple it was instantiated at, and the printed nonzero residual.
struct Violation {
  std::string equation;
  std::vector<std::size_t> indices;
  std::string residual;
};

inline std::string describe(const Violation& v) {
  std::string s = v.equation + "[";
  for (std::size_t i = 0; i < v.indices.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v.indices[i]);
  }
  return s + "] = " + v.residual;
}

class AxiomViolation : public Error {
 public:
  explicit AxiomViolation(std::vector<Violation> violations)
      : Error(ErrorKind::AxiomViolation, summary(violations)), violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  static std::string summary(const std::vector<Violation>& vs) {
    if (vs.empty()) return "no violations recorded";
    std::string s = describe(vs.front());
    if (vs.size() > 1) s += " (+" + std::to_string(vs.size() - 1) + " more)";
    return s;
  }

  std::vector<Violation> violations_;
};

}  // namespace lincat

#endif  // LINCAT_ERROR_HPP
