#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace qramph::cli {

struct RunContext {
  std::string command;
  std::filesystem::path out_dir;
  std::uint64_t seed = 1;
  int workers = 1;
  /// Effective parameters, echoed into every artifact.
  nlohmann::json params;
};

/// "# qramph <version> <command> seed=<s> params=<json>"
std::string metadata_line(const RunContext& ctx);

using Cell = std::variant<double, long long, std::string>;

/// CSV with a metadata comment line; reals use 12 significant digits.
class CsvWriter {
 public:
  CsvWriter(const RunContext& ctx, const std::string& name, const std::vector<std::string>& header);
  void row(const std::vector<Cell>& cells);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream os_;
};

std::string format_real(double v);

void write_text(const RunContext& ctx, const std::string& name, const std::string& body);

}  // namespace qramph::cli
