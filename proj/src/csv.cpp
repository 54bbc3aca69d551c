#include "kgb/csv.hpp"

#include <cmath>
#include <cstdio>

#include "kgb/error.hpp"

namespace kgb {

std::string format_number(double value) {
  if (std::isnan(value)) {
    return "nan";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string_view> header)
    : out_(path), path_(path) {
  if (!out_) {
    throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  }
  bool first = true;
  for (auto h : header) {
    if (!first) {
      out_ << ',';
    }
    out_ << h;
    first = false;
  }
  out_ << '\n';
}

void CsvWriter::separator() {
  if (row_started_) {
    out_ << ',';
  }
  row_started_ = true;
}

CsvWriter& CsvWriter::operator<<(double value) {
  separator();
  out_ << format_number(value);
  return *this;
}

CsvWriter& CsvWriter::operator<<(std::string_view text) {
  separator();
  out_ << text;
  return *this;
}

CsvWriter& CsvWriter::operator<<(unsigned long long value) {
  separator();
  out_ << value;
  return *this;
}

void CsvWriter::end_row() {
  out_ << '\n';
  row_started_ = false;
  if (!out_) {
    throw Error(ErrorCode::IoError, "write to " + path_.string() + " failed");
  }
}

void CsvWriter::write_row(std::span<const double> values) {
  for (double v : values) {
    *this << v;
  }
  end_row();
}

}  // namespace kgb
