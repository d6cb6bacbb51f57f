#include "cli.h"

#include <CLI11.hpp>
#include <fstream>
#include <optional>

#include "commands.h"
#include "qramph/errors.h"

namespace qramph::cli {

namespace {

nlohmann::json load_config(const std::string& path) {
  if (path.empty()) return nlohmann::json::object();
  std::ifstream is(path);
  if (!is) throw InvalidParameter("cannot open config '" + path + "'");
  try {
    return nlohmann::json::parse(is);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidParameter("config '" + path + "': " + e.what());
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bucket-brigade QRAM router, query and heralding toolkit", "qramph"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  int workers = 1;
  app.add_option("--config", config_path, "JSON parameter file");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--seed", seed, "Random seed");
  app.add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

  RouteFidelityFlags rf;
  std::string window, shape;
  auto* route = app.add_subcommand("route-fidelity", "Distortion infidelity sweeps over kappa and window");
  route->add_option("--window", window, "Single routing window, e.g. 350ns");
  route->add_option("--shape", shape, "gaussian or sech");
  auto* router = app.add_subcommand("router-sim", "Time-domain single-router simulation");
  auto* qsim = app.add_subcommand("query-sim", "Gate-level QRAM query");
  auto* herald = app.add_subcommand("heralding", "Heralding-rate and dephasing tables");
  auto* mc = app.add_subcommand("montecarlo", "Loss trajectories against the closed forms");
  auto* sched = app.add_subcommand("schedule", "Routing schedules and validation");
  for (auto* sub : {route, router, qsim, herald, mc, sched}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    RunContext ctx;
    ctx.out_dir = out_dir;
    ctx.seed = seed;
    ctx.workers = workers;
    ConfigReader cfg(load_config(config_path), "config");
    if (*route) {
      ctx.command = "route-fidelity";
      if (!window.empty()) rf.window = window;
      if (!shape.empty()) rf.shape = shape;
      cmd_route_fidelity(ctx, cfg, rf, out);
    } else if (*router) {
      ctx.command = "router-sim";
      cmd_router_sim(ctx, cfg, out);
    } else if (*qsim) {
      ctx.command = "query-sim";
      cmd_query_sim(ctx, cfg, out);
    } else if (*herald) {
      ctx.command = "heralding";
      cmd_heralding(ctx, cfg, out);
    } else if (*mc) {
      ctx.command = "montecarlo";
      cmd_montecarlo(ctx, cfg, out);
    } else if (*sched) {
      ctx.command = "schedule";
      cmd_schedule(ctx, cfg, out);
    }
  } catch (const InvalidParameter& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace qramph::cli
