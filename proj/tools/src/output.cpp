#include "output.h"

#include <cmath>
#include <cstdio>

#include "qramph/errors.h"

namespace qramph::cli {

std::string metadata_line(const RunContext& ctx) {
  return "# qramph " QRAMPH_VERSION " " + ctx.command + " seed=" + std::to_string(ctx.seed) +
         " params=" + ctx.params.dump();
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InvalidParameter("cannot write " + path.string());
  return os;
}

}  // namespace

CsvWriter::CsvWriter(const RunContext& ctx, const std::string& name, const std::vector<std::string>& header)
    : path_(ctx.out_dir / name), os_(open_output(path_)) {
  os_ << metadata_line(ctx) << '\n';
  for (std::size_t i = 0; i < header.size(); ++i) os_ << (i ? "," : "") << header[i];
  os_ << '\n';
}

void CsvWriter::row(const std::vector<Cell>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os_ << ',';
    std::visit(
        [this](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, double>) {
            os_ << format_real(v);
          } else {
            os_ << v;
          }
        },
        cells[i]);
  }
  os_ << '\n';
}

void write_text(const RunContext& ctx, const std::string& name, const std::string& body) {
  auto os = open_output(ctx.out_dir / name);
  os << body;
  if (!body.empty() && body.back() != '\n') os << '\n';
}

}  // namespace qramph::cli
