#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "config_reader.h"
#include "output.h"

namespace qramph::cli {

struct RouteFidelityFlags {
  std::optional<std::string> window;
  std::optional<std::string> shape;
};

void cmd_route_fidelity(RunContext& ctx, ConfigReader& cfg, const RouteFidelityFlags& flags, std::ostream& out);
void cmd_router_sim(RunContext& ctx, ConfigReader& cfg, std::ostream& out);
void cmd_query_sim(RunContext& ctx, ConfigReader& cfg, std::ostream& out);
void cmd_heralding(RunContext& ctx, ConfigReader& cfg, std::ostream& out);
void cmd_montecarlo(RunContext& ctx, ConfigReader& cfg, std::ostream& out);
void cmd_schedule(RunContext& ctx, ConfigReader& cfg, std::ostream& out);

}  // namespace qramph::cli
