#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

namespace allee {

// Comma-separated output with a header row; numbers use 12 significant digits.
class CsvWriter {
 public:
  // `comment`, when non-empty, is written first as a '#' line.
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header, const std::string& comment = {});
  void row(std::initializer_list<double> values);
  void row(const std::vector<double>& values);
  void row(const std::vector<std::string>& cells);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t columns_;
};

std::string format_number(double x);

struct Field;
// Snapshot format: a "# t=<time>" line, then x,u,v rows.
void write_snapshot(const std::filesystem::path& path, const Field& f);

}  // namespace allee
