#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace crsurg {

enum class ErrorKind {
  InvalidMeridian,
  NoJointPartner,
  DomainError,
  NotNormalized,
  MarkMismatch,
  EmptyDividingSet,
  Unsupported,
  InvalidParameter,
  GadgetSelfTestFailed,
  NotPm1Diagram,
  NotNice,
  UnknownComponent,
  NotTwoComponent,
  UnsupportedComposition,
  SyntaxError,
  PositionError,
  OpenDiagram,
  SemanticError,
  Overflow,
  InternalError,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidMeridian: return "InvalidMeridian";
    case ErrorKind::NoJointPartner: return "NoJointPartner";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::MarkMismatch: return "MarkMismatch";
    case ErrorKind::EmptyDividingSet: return "EmptyDividingSet";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::GadgetSelfTestFailed: return "GadgetSelfTestFailed";
    case ErrorKind::NotPm1Diagram: return "NotPm1Diagram";
    case ErrorKind::NotNice: return "NotNice";
    case ErrorKind::UnknownComponent: return "UnknownComponent";
    case ErrorKind::NotTwoComponent: return "NotTwoComponent";
    case ErrorKind::UnsupportedComposition: return "UnsupportedComposition";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::PositionError: return "PositionError";
    case ErrorKind::OpenDiagram: return "OpenDiagram";
    case ErrorKind::SemanticError: return "SemanticError";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::InternalError: return "InternalError";
  }
  return "Unknown";
}

/// Source location inside a diagram file or a front word (1-based; 0 = unknown).
struct SourcePos {
  int line = 0;
  int column = 0;
};

/// All library failures are reported through this exception; `kind()` is the
/// machine-readable category used by the command-line front end.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, SourcePos pos = {})
      : std::runtime_error(message), kind_(kind), pos_(pos) {}

  ErrorKind kind() const noexcept { return kind_; }
  SourcePos pos() const noexcept { return pos_; }

 private:
  ErrorKind kind_;
  SourcePos pos_;
};

}  // namespace crsurg
