#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mrmp {

enum class ErrorKind {
  InvalidWorkspace,
  PositionOutsideFreeSpace,
  ExtensionBlocked,
  InfeasibleMatching,
  NoInterruptingTarget,
  InvalidSwitch,
  NotInterrupting,
  ConstraintViolation,
  InfeasibleInstance,
  NotSimplePolygon,
  AmbiguousCell,
  SeparationViolation,
  MalformedPlan,
  GenerationFailed,
  BlockerAtEndpoint,
  MalformedInput,
};

std::string_view to_string(ErrorKind kind);

// All library failures surface as this exception; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidWorkspace: return "InvalidWorkspace";
    case ErrorKind::PositionOutsideFreeSpace: return "PositionOutsideFreeSpace";
    case ErrorKind::ExtensionBlocked: return "ExtensionBlocked";
    case ErrorKind::InfeasibleMatching: return "InfeasibleMatching";
    case ErrorKind::NoInterruptingTarget: return "NoInterruptingTarget";
    case ErrorKind::InvalidSwitch: return "InvalidSwitch";
    case ErrorKind::NotInterrupting: return "NotInterrupting";
    case ErrorKind::ConstraintViolation: return "ConstraintViolation";
    case ErrorKind::InfeasibleInstance: return "InfeasibleInstance";
    case ErrorKind::NotSimplePolygon: return "NotSimplePolygon";
    case ErrorKind::AmbiguousCell: return "AmbiguousCell";
    case ErrorKind::SeparationViolation: return "SeparationViolation";
    case ErrorKind::MalformedPlan: return "MalformedPlan";
    case ErrorKind::GenerationFailed: return "GenerationFailed";
    case ErrorKind::BlockerAtEndpoint: return "BlockerAtEndpoint";
    case ErrorKind::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

}  // namespace mrmp
