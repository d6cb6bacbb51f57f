#include "qramph/encoding.h"

#include <string>

#include "qramph/errors.h"

namespace qramph {

std::string_view to_string(Encoding e) {
  switch (e) {
    case Encoding::SingleRail: return "single_rail";
    case Encoding::HybridDualRail: return "hybrid";
    case Encoding::StandardDualRailVacuum: return "standard_vacuum";
    case Encoding::StandardDualRailLogical: return "standard_logical";
  }
  return "unknown";
}

Encoding parse_encoding(std::string_view name) {
  if (name == "single_rail") return Encoding::SingleRail;
  if (name == "hybrid" || name == "hybrid_dual_rail") return Encoding::HybridDualRail;
  if (name == "standard_vacuum" || name == "standard") return Encoding::StandardDualRailVacuum;
  if (name == "standard_logical") return Encoding::StandardDualRailLogical;
  throw InvalidParameter("unknown encoding '" + std::string(name) + "'");
}

}  // namespace qramph
