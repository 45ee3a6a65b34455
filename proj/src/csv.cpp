#include "blowup/csv.hpp"

#include <cstdio>
#include <stdexcept>

#include "blowup/errors.hpp"

namespace blowup {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path,
                     std::initializer_list<const char*> header)
    : out_(path), path_(path), columns_(header.size()) {
  if (!out_) throw NumericalFailure("cannot open output file: " + path);
  bool first = true;
  for (const char* h : header) {
    if (!first) out_ << ',';
    out_ << h;
    first = false;
  }
  out_ << '\n';
}

void CsvWriter::row(std::initializer_list<double> values) {
  if (values.size() != columns_)
    throw std::logic_error("csv row width mismatch for " + path_);
  bool first = true;
  for (double v : values) {
    if (!first) out_ << ',';
    out_ << format_real(v);
    first = false;
  }
  out_ << '\n';
  if (!out_) throw NumericalFailure("write failed: " + path_);
}

void CsvWriter::row_strings(const std::vector<std::string>& values) {
  if (values.size() != columns_)
    throw std::logic_error("csv row width mismatch for " + path_);
  bool first = true;
  for (const auto& v : values) {
    if (!first) out_ << ',';
    out_ << v;
    first = false;
  }
  out_ << '\n';
  if (!out_) throw NumericalFailure("write failed: " + path_);
}

}  // namespace blowup
