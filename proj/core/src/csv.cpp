#include "randmatch/csv.hpp"

#include "randmatch/io.hpp"

namespace randmatch {

CsvWriter& CsvWriter::field(const std::string& s) {
  if (row_started_) *out_ << ',';
  row_started_ = true;
  if (s.find_first_of(",\"\n") != std::string::npos) {
    *out_ << '"';
    for (char c : s) {
      if (c == '"') *out_ << '"';
      *out_ << c;
    }
    *out_ << '"';
  } else {
    *out_ << s;
  }
  return *this;
}

CsvWriter& CsvWriter::field(double v) { return field(format_double(v)); }

void CsvWriter::end_row() {
  *out_ << '\n';
  row_started_ = false;
}

}  // namespace randmatch
