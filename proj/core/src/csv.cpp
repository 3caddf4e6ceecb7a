#include "socdim/csv.hpp"

#include <charconv>
#include <cmath>
#include <cctype>
#include <system_error>

namespace socdim::csv {

std::optional<std::vector<std::string>> Reader::next() {
  std::string line;
  while (true) {
    if (!std::getline(in_, line)) return std::nullopt;
    ++current_line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    break;
  }
  record_line_ = current_line_;

  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  std::size_t i = 0;
  while (true) {
    if (i == line.size()) {
      if (quoted) {
        // Embedded newline inside a quoted field.
        std::string more;
        if (!std::getline(in_, more)) break;
        ++current_line_;
        if (!more.empty() && more.back() == '\r') more.pop_back();
        field.push_back('\n');
        line = std::move(more);
        i = 0;
        continue;
      }
      break;
    }
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"' && field.empty()) {
      quoted = true;
    } else if (c == sep_) {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
    ++i;
  }
  fields.push_back(std::move(field));
  return fields;
}

std::string escape(std::string_view field, char sep) {
  bool needs = field.find_first_of(std::string{sep, '"', '\n', '\r'}) !=
                   std::string_view::npos ||
               (!field.empty() && field.front() == '#');
  if (!needs) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields, char sep) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.put(sep);
    out << escape(fields[i], sep);
  }
  out.put('\n');
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      return out;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace socdim::csv
