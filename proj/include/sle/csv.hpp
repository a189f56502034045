#pragma once

#include <fstream>
#include <span>
#include <string>
#include <vector>

namespace sle {

// Deterministic CSV emitter: "#"-prefixed comment block (used to embed the
// resolved run config), one header line, then rows in %.16e scientific
// notation. No timestamps or locale-dependent formatting.
class CsvFile {
 public:
  explicit CsvFile(const std::string& path);
  ~CsvFile();

  CsvFile(const CsvFile&) = delete;
  CsvFile& operator=(const CsvFile&) = delete;

  // Writes text as comment lines, splitting on newlines.
  void comment(const std::string& text);
  void header(std::span<const std::string> columns);
  void row(std::span<const double> values);
  void close();  // flushes and checks for write failures

 private:
  std::string path_;
  std::ofstream out_;
  bool closed_ = false;
};

std::string format_sci(double v);  // %.16e

}  // namespace sle
