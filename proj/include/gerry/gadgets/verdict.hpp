#pragma once

#include <optional>

#include <json.hpp>

namespace gerry {

/// Outcome of a gadget verification. Optional fields stay empty when not requested.
struct GadgetVerdict {
  bool trivial_plan_valid = false;
  std::optional<bool> completeness_holds;
  std::optional<bool> soundness_holds;
  nlohmann::json details = nlohmann::json::object();

  bool all_hold() const {
    return trivial_plan_valid && completeness_holds.value_or(true) && soundness_holds.value_or(true);
  }
};

}  // namespace gerry
