#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qalt {

enum class ErrorKind {
  SyntaxError,
  InvalidStrandLabels,
  InvalidCrossing,
  DisconnectedDiagram,
  EmptyDiagram,
  SplitDiagram,
  SupportNotOnLattice,
  Overlap,
  ZeroPolynomial,
  LoopOrIsthmus,
  NoEmbedding,
  NotTypeI,
  SameComponent,
  NotRepresentable,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::InvalidStrandLabels: return "InvalidStrandLabels";
    case ErrorKind::InvalidCrossing: return "InvalidCrossing";
    case ErrorKind::DisconnectedDiagram: return "DisconnectedDiagram";
    case ErrorKind::EmptyDiagram: return "EmptyDiagram";
    case ErrorKind::SplitDiagram: return "SplitDiagram";
    case ErrorKind::SupportNotOnLattice: return "SupportNotOnLattice";
    case ErrorKind::Overlap: return "Overlap";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::LoopOrIsthmus: return "LoopOrIsthmus";
    case ErrorKind::NoEmbedding: return "NoEmbedding";
    case ErrorKind::NotTypeI: return "NotTypeI";
    case ErrorKind::SameComponent: return "SameComponent";
    case ErrorKind::NotRepresentable: return "NotRepresentable";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qalt
