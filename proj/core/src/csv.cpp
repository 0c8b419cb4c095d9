#include "allee/csv.hpp"

#include <cmath>
#include <cstdio>

#include "allee/errors.hpp"
#include "allee/pde.hpp"

namespace allee {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header,
                     const std::string& comment)
    : path_(path), out_(path), columns_(header.size()) {
  if (!out_) fail(ErrorCode::InvalidArgument, "cannot open " + path.string() + " for writing");
  if (!comment.empty()) out_ << "# " << comment << '\n';
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

void CsvWriter::row(std::initializer_list<double> values) { row(std::vector<double>(values)); }

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_) fail(ErrorCode::InvalidArgument, "csv row width does not match header");
  for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_number(values[i]);
  out_ << '\n';
  if (!out_) fail(ErrorCode::InvalidArgument, "write failed for " + path_.string());
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) fail(ErrorCode::InvalidArgument, "csv row width does not match header");
  for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
  out_ << '\n';
  if (!out_) fail(ErrorCode::InvalidArgument, "write failed for " + path_.string());
}

void write_snapshot(const std::filesystem::path& path, const Field& f) {
  CsvWriter w(path, {"x", "u", "v"}, "t=" + format_number(f.t));
  for (int i = 0; i < f.grid.points; ++i) w.row({f.grid.x(i), f.u[i], f.v[i]});
}

}  // namespace allee
