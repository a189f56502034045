#include "sle/csv.hpp"

#include <cstdio>

#include "sle/errors.hpp"

namespace sle {

std::string format_sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

CsvFile::CsvFile(const std::string& path)
    : path_(path), out_(path, std::ios::binary) {
  if (!out_) fail(ErrorCode::io, "cannot open output file \"" + path + "\"");
}

CsvFile::~CsvFile() {
  if (!closed_) {
    out_.flush();
    closed_ = true;
  }
}

void CsvFile::comment(const std::string& text) {
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    std::string line = text.substr(
        start, end == std::string::npos ? std::string::npos : end - start);
    if (!(line.empty() && end == std::string::npos && start == text.size()))
      out_ << "# " << line << "\n";
    if (end == std::string::npos) break;
    start = end + 1;
  }
}

void CsvFile::header(std::span<const std::string> columns) {
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i) out_ << ",";
    out_ << columns[i];
  }
  out_ << "\n";
}

void CsvFile::row(std::span<const double> values) {
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out_ << ",";
    out_ << format_sci(values[i]);
  }
  out_ << "\n";
}

void CsvFile::close() {
  if (closed_) return;
  out_.flush();
  out_.close();
  closed_ = true;
  if (out_.fail())
    fail(ErrorCode::io, "failed writing output file \"" + path_ + "\"");
}

}  // namespace sle
