#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace randmatch {

// Minimal RFC-4180 writer. Fields are quoted only when they contain a comma,
// quote, or newline; numbers use '.' regardless of locale (shortest
// round-trip form for doubles), booleans are "true"/"false".
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(&out) {}

  CsvWriter& field(const std::string& s);
  CsvWriter& field(const char* s) { return field(std::string(s)); }
  CsvWriter& field(double v);
  CsvWriter& field(bool v) { return field(std::string(v ? "true" : "false")); }
  CsvWriter& field(std::uint64_t v) { return field(std::to_string(v)); }
  CsvWriter& field(int v) { return field(std::to_string(v)); }

  void end_row();

 private:
  std::ostream* out_;
  bool row_started_ = false;
};

}  // namespace randmatch
