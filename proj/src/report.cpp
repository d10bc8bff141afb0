#include "bnslab/report.hpp"

#include <cmath>
#include <sstream>

#include "bnslab/errors.hpp"

namespace bnslab {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string> header)
    : out_(path), columns_(header.size()) {
  if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
  bool first = true;
  for (const auto& h : header) {
    out_ << (first ? "" : ",") << h;
    first = false;
  }
  out_ << '\n';
}

CsvWriter& CsvWriter::cell(const std::string& s) {
  out_ << (filled_ == 0 ? "" : ",") << s;
  ++filled_;
  return *this;
}

CsvWriter& CsvWriter::cell(double v) { return cell(format_double(v)); }

CsvWriter& CsvWriter::cell(long long v) { return cell(std::to_string(v)); }

void CsvWriter::end_row() {
  if (filled_ != columns_) throw std::logic_error("CSV row width does not match the header");
  out_ << '\n';
  filled_ = 0;
}

void write_norm_report(const std::filesystem::path& path, const std::vector<NormRow>& rows) {
  CsvWriter w(path, {"norm_kind", "a", "b", "s", "p", "q", "t1", "t2", "value"});
  for (const auto& r : rows) {
    w.cell(r.kind).cell(r.a).cell(r.b).cell(r.s).cell(r.p).cell(r.q).cell(r.t1).cell(r.t2).cell(
        r.value);
    w.end_row();
  }
}

void Manifest::set(const std::string& key, const std::string& value) {
  for (auto& e : entries_)
    if (e.first == key) {
      e.second = value;
      return;
    }
  entries_.emplace_back(key, value);
}

void Manifest::set(const std::string& key, double value) { set(key, format_double(value)); }

void Manifest::write(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  for (const auto& [k, v] : entries_) out << k << " = " << v << '\n';
}

}  // namespace bnslab
