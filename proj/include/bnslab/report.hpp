#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

namespace bnslab {

// Comma-separated table with a header row; values are written with 17
// significant digits so reruns compare bit-for-bit.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string> header);
  CsvWriter& cell(const std::string& s);
  CsvWriter& cell(double v);
  CsvWriter& cell(long long v);
  void end_row();

 private:
  std::ofstream out_;
  std::size_t columns_;
  std::size_t filled_ = 0;
};

std::string format_double(double v);

// One row of a NormReport: {norm_kind, a, b, s, p, q, t1, t2, value}.
struct NormRow {
  std::string kind;
  double a = 0.0, b = 0.0, s = 0.0, p = 0.0, q = 0.0, t1 = 0.0, t2 = 0.0, value = 0.0;
};

void write_norm_report(const std::filesystem::path& path, const std::vector<NormRow>& rows);

// Manifest of structured `key = value` lines, in insertion order.
class Manifest {
 public:
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void write(const std::filesystem::path& path) const;
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace bnslab
