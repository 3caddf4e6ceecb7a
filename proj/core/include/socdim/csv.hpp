#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace socdim::csv {

// RFC-4180 style reader: quoted fields may contain separators, doubled quotes
// and newlines. Lines starting with '#' outside a record are skipped.
class Reader {
 public:
  explicit Reader(std::istream& in, char sep = ',') : in_(in), sep_(sep) {}

  // Next record, or nullopt at end of input. line() is the 1-based line the
  // record started on.
  std::optional<std::vector<std::string>> next();
  std::size_t line() const { return record_line_; }

 private:
  std::istream& in_;
  char sep_;
  std::size_t current_line_ = 0;
  std::size_t record_line_ = 0;
};

std::string escape(std::string_view field, char sep = ',');

void write_row(std::ostream& out, const std::vector<std::string>& fields,
               char sep = ',');

// Shortest round-trippable decimal form.
std::string format_double(double v);

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string to_lower(std::string_view s);

}  // namespace socdim::csv
