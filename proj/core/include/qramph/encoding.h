#pragma once

#include <string_view>

namespace qramph {

enum class Encoding {
  SingleRail,
  HybridDualRail,
  StandardDualRailVacuum,
  StandardDualRailLogical,
};

std::string_view to_string(Encoding e);
Encoding parse_encoding(std::string_view name);

/// Physical rails per logical address/bus/control qubit.
constexpr int rails_per_qubit(Encoding e) {
  return e == Encoding::StandardDualRailVacuum || e == Encoding::StandardDualRailLogical ? 2 : 1;
}

constexpr bool is_standard_dual_rail(Encoding e) { return rails_per_qubit(e) == 2; }

}  // namespace qramph
