#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gerry {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  UnsupportedFormat,
  Overflow,
  // map construction
  DuplicateCell,
  OutOfBounds,
  DisconnectedMap,
  InvalidCounts,
  SelfLoop,
  DuplicateEdge,
  InvalidKappa,
  UnknownCell,
  // plans
  PartialPlan,
  EmptyDistrict,
  InvalidPlan,
  DisconnectedDistrict,
  // metrics
  PreconditionUnequalDistricts,
  ShiftInfeasible,
  InvalidShift,
  AssumptionViolated,
  PartyBEmpty,
  PlanarTopologyUnsupported,
  // search
  NoValidPlanFound,
  BudgetExceeded,
  // gadgets
  OddValue,
  AggregateMismatch,
  NotASolution,
  IllustrationMode,
  NotCubic,
  NotConnected,
  EulerBoundViolated,
  ParamSolveFailed,
  NotIndependent,
  NotMaximal,
  TilingMismatch,
  NonIntegralResult,
  DisconnectedAfterRemoval,
};

inline std::string_view to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::DuplicateCell: return "DuplicateCell";
    case ErrorCode::OutOfBounds: return "OutOfBounds";
    case ErrorCode::DisconnectedMap: return "DisconnectedMap";
    case ErrorCode::InvalidCounts: return "InvalidCounts";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::InvalidKappa: return "InvalidKappa";
    case ErrorCode::UnknownCell: return "UnknownCell";
    case ErrorCode::PartialPlan: return "PartialPlan";
    case ErrorCode::EmptyDistrict: return "EmptyDistrict";
    case ErrorCode::InvalidPlan: return "InvalidPlan";
    case ErrorCode::DisconnectedDistrict: return "DisconnectedDistrict";
    case ErrorCode::PreconditionUnequalDistricts: return "PreconditionUnequalDistricts";
    case ErrorCode::ShiftInfeasible: return "ShiftInfeasible";
    case ErrorCode::InvalidShift: return "InvalidShift";
    case ErrorCode::AssumptionViolated: return "AssumptionViolated";
    case ErrorCode::PartyBEmpty: return "PartyBEmpty";
    case ErrorCode::PlanarTopologyUnsupported: return "PlanarTopologyUnsupported";
    case ErrorCode::NoValidPlanFound: return "NoValidPlanFound";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::OddValue: return "OddValue";
    case ErrorCode::AggregateMismatch: return "AggregateMismatch";
    case ErrorCode::NotASolution: return "NotASolution";
    case ErrorCode::IllustrationMode: return "IllustrationMode";
    case ErrorCode::NotCubic: return "NotCubic";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::EulerBoundViolated: return "EulerBoundViolated";
    case ErrorCode::ParamSolveFailed: return "ParamSolveFailed";
    case ErrorCode::NotIndependent: return "NotIndependent";
    case ErrorCode::NotMaximal: return "NotMaximal";
    case ErrorCode::TilingMismatch: return "TilingMismatch";
    case ErrorCode::NonIntegralResult: return "NonIntegralResult";
    case ErrorCode::DisconnectedAfterRemoval: return "DisconnectedAfterRemoval";
  }
  return "Unknown";
}

/// Every library failure is one of these.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace gerry
