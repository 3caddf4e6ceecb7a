#include "socdim/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "socdim/csv.hpp"
#include "socdim/error.hpp"

namespace socdim {
namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(Source s) {
  switch (s) {
    case Source::kComments: return "comments";
    case Source::kEmail: return "email";
    case Source::kDialog: return "dialog";
    case Source::kTweets: return "tweets";
  }
  return "comments";
}

std::optional<CorpusFormat> parse_corpus_format(std::string_view name) {
  if (name == "comments_jsonl") return CorpusFormat::kCommentsJsonl;
  if (name == "email_dir") return CorpusFormat::kEmailDir;
  if (name == "dialog_tsv") return CorpusFormat::kDialogTsv;
  if (name == "tweets_jsonl") return CorpusFormat::kTweetsJsonl;
  return std::nullopt;
}

std::string_view to_string(CorpusFormat f) {
  switch (f) {
    case CorpusFormat::kCommentsJsonl: return "comments_jsonl";
    case CorpusFormat::kEmailDir: return "email_dir";
    case CorpusFormat::kDialogTsv: return "dialog_tsv";
    case CorpusFormat::kTweetsJsonl: return "tweets_jsonl";
  }
  return "comments_jsonl";
}

namespace {

std::int64_t to_epoch(int y, unsigned mo, unsigned d, int h, int mi, int s) {
  using namespace std::chrono;
  sys_days days = year_month_day{year{y}, month{mo}, day{d}};
  return days.time_since_epoch().count() * 86400LL + h * 3600LL + mi * 60LL + s;
}

bool read_int(std::string_view s, std::size_t& pos, std::size_t digits, int& out) {
  if (pos + digits > s.size()) return false;
  int v = 0;
  for (std::size_t i = 0; i < digits; ++i) {
    char c = s[pos + i];
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    v = v * 10 + (c - '0');
  }
  pos += digits;
  out = v;
  return true;
}

// Parses "+hhmm", "-hh:mm", "Z", "UTC", "GMT". Returns offset in seconds.
std::optional<int> parse_zone(std::string_view z) {
  std::string t = csv::trim(z);
  if (t.empty() || t == "Z" || t == "UTC" || t == "GMT") return 0;
  if (t[0] != '+' && t[0] != '-') return std::nullopt;
  int sign = t[0] == '-' ? -1 : 1;
  std::string digits;
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(t[i]))) digits.push_back(t[i]);
    else if (t[i] != ':') break;
  }
  if (digits.size() != 4) return std::nullopt;
  int hh = std::stoi(digits.substr(0, 2));
  int mm = std::stoi(digits.substr(2, 2));
  return sign * (hh * 3600 + mm * 60);
}

std::optional<std::int64_t> parse_iso(std::string_view s) {
  std::size_t pos = 0;
  int y, mo, d, h = 0, mi = 0, sec = 0;
  if (!read_int(s, pos, 4, y) || pos >= s.size() || s[pos++] != '-') return std::nullopt;
  if (!read_int(s, pos, 2, mo) || pos >= s.size() || s[pos++] != '-') return std::nullopt;
  if (!read_int(s, pos, 2, d)) return std::nullopt;
  if (pos < s.size() && (s[pos] == 'T' || s[pos] == ' ')) {
    ++pos;
    if (!read_int(s, pos, 2, h) || pos >= s.size() || s[pos++] != ':') return std::nullopt;
    if (!read_int(s, pos, 2, mi)) return std::nullopt;
    if (pos < s.size() && s[pos] == ':') {
      ++pos;
      if (!read_int(s, pos, 2, sec)) return std::nullopt;
      while (pos < s.size() && (s[pos] == '.' || std::isdigit(static_cast<unsigned char>(s[pos])))) ++pos;
    }
  }
  auto zone = parse_zone(s.substr(pos));
  if (!zone || mo < 1 || mo > 12 || d < 1 || d > 31) return std::nullopt;
  return to_epoch(y, static_cast<unsigned>(mo), static_cast<unsigned>(d), h, mi, sec) - *zone;
}

std::optional<std::int64_t> parse_rfc822(std::string_view s) {
  static constexpr std::string_view kMonths[] = {"jan", "feb", "mar", "apr", "may", "jun",
                                                 "jul", "aug", "sep", "oct", "nov", "dec"};
  std::string text(s);
  if (auto comma = text.find(','); comma != std::string::npos) text = text.substr(comma + 1);
  if (auto paren = text.find('('); paren != std::string::npos) text = text.substr(0, paren);
  std::istringstream in(text);
  std::string day_s, mon_s, year_s, time_s, zone_s;
  if (!(in >> day_s >> mon_s >> year_s >> time_s)) return std::nullopt;
  in >> zone_s;
  std::string mon = csv::to_lower(mon_s.substr(0, 3));
  auto it = std::find(std::begin(kMonths), std::end(kMonths), mon);
  if (it == std::end(kMonths)) return std::nullopt;
  unsigned month = static_cast<unsigned>(it - std::begin(kMonths)) + 1;
  int h = 0, mi = 0, sec = 0;
  std::size_t pos = 0;
  if (!read_int(time_s, pos, 2, h) || pos >= time_s.size() || time_s[pos++] != ':') return std::nullopt;
  if (!read_int(time_s, pos, 2, mi)) return std::nullopt;
  if (pos < time_s.size() && time_s[pos] == ':') {
    ++pos;
    if (!read_int(time_s, pos, 2, sec)) return std::nullopt;
  }
  int day = 0, year = 0;
  try {
    day = std::stoi(day_s);
    year = std::stoi(year_s);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (year < 100) year += year < 50 ? 2000 : 1900;
  auto zone = parse_zone(zone_s);
  if (!zone || day < 1 || day > 31) return std::nullopt;
  return to_epoch(year, month, static_cast<unsigned>(day), h, mi, sec) - *zone;
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::optional<std::string> json_string(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number_integer()) return std::to_string(it->get<std::int64_t>());
  if (it->is_number()) return csv::format_double(it->get<double>());
  return std::nullopt;
}

std::optional<std::int64_t> json_epoch(const json& obj) {
  auto it = obj.find("created_utc");
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (it->is_number()) return static_cast<std::int64_t>(it->get<double>());
  if (it->is_string()) {
    const std::string& s = it->get_ref<const std::string&>();
    try {
      std::size_t used = 0;
      double v = std::stod(s, &used);
      if (used == s.size()) return static_cast<std::int64_t>(v);
    } catch (const std::exception&) {
    }
    return parse_timestamp(s);
  }
  return std::nullopt;
}

class Counter {
 public:
  explicit Counter(const std::function<void(Message&&)>& sink) : sink_(sink) {}

  void emit(Message&& m) {
    if (m.id.empty() || blank(m.text) || !seen_.insert(m.id).second) {
      ++report_.skipped;
      return;
    }
    ++report_.records;
    sink_(std::move(m));
  }
  void malformed() { ++report_.skipped; }
  LoadReport finish(const fs::path& path) const {
    if (report_.skipped * 2 > report_.records + report_.skipped) {
      throw FormatError(path.string() + ": " + std::to_string(report_.skipped) + " of " +
                        std::to_string(report_.records + report_.skipped) +
                        " records malformed; check the declared format");
    }
    return report_;
  }

 private:
  const std::function<void(Message&&)>& sink_;
  std::unordered_set<std::string> seen_;
  LoadReport report_;
};

std::ifstream open_or_throw(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  return in;
}

void read_jsonl(const fs::path& path, Source source, Counter& counter) {
  auto in = open_or_throw(path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    json obj = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (obj.is_discarded() || !obj.is_object()) {
      counter.malformed();
      continue;
    }
    auto text = json_string(obj, "text");
    if (!text) {
      counter.malformed();
      continue;
    }
    Message m;
    m.id = json_string(obj, "id").value_or("L" + std::to_string(line_no));
    m.author = json_string(obj, "author").value_or("");
    m.recipient = json_string(obj, "recipient");
    m.timestamp = json_epoch(obj);
    m.text = std::move(*text);
    m.group = json_string(obj, "group");
    m.source = source;
    counter.emit(std::move(m));
  }
}

std::string extract_address(std::string_view raw) {
  std::string s = csv::trim(raw);
  auto lt = s.find('<');
  auto gt = s.find('>', lt == std::string::npos ? 0 : lt);
  if (lt != std::string::npos && gt != std::string::npos) s = s.substr(lt + 1, gt - lt - 1);
  s.erase(std::remove(s.begin(), s.end(), '"'), s.end());
  return csv::to_lower(csv::trim(s));
}

// One email file: RFC-822 style headers, blank line, body.
void read_email(const fs::path& file, const std::string& fallback_id, Counter& counter) {
  auto in = open_or_throw(file);
  std::map<std::string, std::string> headers;
  std::string line, last_key;
  bool in_headers = true;
  std::string body;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (in_headers) {
      if (line.empty()) {
        in_headers = false;
        continue;
      }
      if ((line[0] == ' ' || line[0] == '\t') && !last_key.empty()) {
        headers[last_key] += " " + csv::trim(line);
        continue;
      }
      auto colon = line.find(':');
      if (colon == std::string::npos) {
        // Not a header: the file has no header block.
        in_headers = false;
        body += line + "\n";
        continue;
      }
      last_key = csv::to_lower(csv::trim(line.substr(0, colon)));
      headers[last_key] = csv::trim(line.substr(colon + 1));
    } else {
      body += line + "\n";
    }
  }
  auto from = headers.find("from");
  if (from == headers.end() || extract_address(from->second).empty()) {
    counter.malformed();
    return;
  }
  std::string id = fallback_id;
  if (auto mid = headers.find("message-id"); mid != headers.end() && !mid->second.empty()) {
    id = mid->second;
  }
  std::optional<std::int64_t> ts;
  if (auto date = headers.find("date"); date != headers.end()) ts = parse_timestamp(date->second);

  std::vector<std::string> recipients;
  if (auto to = headers.find("to"); to != headers.end()) {
    for (const auto& part : csv::split(to->second, ',')) {
      std::string addr = extract_address(part);
      if (!addr.empty()) recipients.push_back(addr);
    }
  }
  std::string text = csv::trim(body);
  auto make = [&](std::string mid, std::optional<std::string> rcpt) {
    Message m;
    m.id = std::move(mid);
    m.author = extract_address(from->second);
    m.recipient = std::move(rcpt);
    m.timestamp = ts;
    m.text = text;
    m.source = Source::kEmail;
    counter.emit(std::move(m));
  };
  if (recipients.empty()) {
    make(id, std::nullopt);
  } else if (recipients.size() == 1) {
    make(id, recipients[0]);
  } else {
    for (std::size_t i = 0; i < recipients.size(); ++i) {
      make(id + "#" + std::to_string(i + 1), recipients[i]);
    }
  }
}

void read_email_dir(const fs::path& path, Counter& counter) {
  std::error_code ec;
  if (fs::is_regular_file(path, ec)) {
    read_email(path, path.filename().string(), counter);
    return;
  }
  if (!fs::is_directory(path, ec)) throw IoError("cannot read " + path.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(path)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    read_email(f, fs::relative(f, path).generic_string(), counter);
  }
}

std::vector<std::string> split_on(const std::string& line, const std::string& sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + sep.size();
  }
}

// Layout: line id, character id(s), movie id, [character name,] text.
// "u0,u2" in the character field means speaker u0 addressing u2.
void read_dialog(const fs::path& path, const std::string& separator, Counter& counter) {
  auto in = open_or_throw(path);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank(line)) continue;
    auto fields = split_on(line, separator);
    if (fields.size() == 1 && separator != "\t") fields = split_on(line, "\t");
    if (fields.size() != 4 && fields.size() != 5) {
      counter.malformed();
      continue;
    }
    Message m;
    m.id = csv::trim(fields[0]);
    auto chars = csv::split(csv::trim(fields[1]), ',');
    m.author = csv::trim(chars[0]);
    if (chars.size() > 1 && !csv::trim(chars[1]).empty()) m.recipient = csv::trim(chars[1]);
    m.group = csv::trim(fields[2]);
    m.text = csv::trim(fields.back());
    m.source = Source::kDialog;
    counter.emit(std::move(m));
  }
}

}  // namespace

std::optional<std::int64_t> parse_timestamp(std::string_view text) {
  std::string t = csv::trim(text);
  if (t.empty()) return std::nullopt;
  if (std::isdigit(static_cast<unsigned char>(t[0])) && t.size() >= 10 && t[4] == '-') {
    return parse_iso(t);
  }
  return parse_rfc822(t);
}

LoadReport for_each_message(const fs::path& path, CorpusFormat format,
                            const std::function<void(Message&&)>& sink,
                            const LoadOptions& options) {
  Counter counter(sink);
  switch (format) {
    case CorpusFormat::kCommentsJsonl: read_jsonl(path, Source::kComments, counter); break;
    case CorpusFormat::kTweetsJsonl: read_jsonl(path, Source::kTweets, counter); break;
    case CorpusFormat::kEmailDir: read_email_dir(path, counter); break;
    case CorpusFormat::kDialogTsv: read_dialog(path, options.dialog_separator, counter); break;
  }
  return counter.finish(path);
}

LoadedCorpus load_messages(const fs::path& path, CorpusFormat format, const LoadOptions& options) {
  LoadedCorpus out;
  out.report = for_each_message(
      path, format, [&](Message&& m) { out.messages.push_back(std::move(m)); }, options);
  return out;
}

// --- annotations -------------------------------------------------------------

namespace {

bool parse_bool(const std::string& s, bool& out) {
  std::string t = csv::to_lower(csv::trim(s));
  if (t == "true" || t == "1" || t == "yes") {
    out = true;
    return true;
  }
  if (t == "false" || t == "0" || t == "no" || t.empty()) {
    out = false;
    return true;
  }
  return false;
}

// Returns an error message on failure.
std::optional<std::string> parse_labels(const std::string& field, DimensionSet& dims,
                                        bool* other) {
  for (const auto& raw : csv::split(field, ';')) {
    std::string token = csv::trim(raw);
    if (token.empty()) continue;
    if (auto d = parse_dimension(token)) {
      dims.insert(*d);
    } else if (other != nullptr && csv::to_lower(token) == "other") {
      *other = true;
    } else {
      return "unknown dimension \"" + token + "\"";
    }
  }
  return std::nullopt;
}

}  // namespace

AnnotationLoad parse_annotations(std::istream& in) {
  AnnotationLoad out;
  csv::Reader reader(in);
  auto header = reader.next();
  const std::vector<std::string> expected = {"sentence_id", "annotator_id", "labels", "is_gold",
                                             "gold_labels"};
  if (!header) return out;
  std::vector<std::string> got;
  for (const auto& h : *header) got.push_back(csv::to_lower(csv::trim(h)));
  if (got != expected) {
    throw ParseError("annotation header must be sentence_id,annotator_id,labels,is_gold,gold_labels",
                     reader.line());
  }
  while (auto row = reader.next()) {
    std::size_t line = reader.line();
    auto reject = [&](std::string msg) { out.rejected.push_back({line, std::move(msg)}); };
    if (row->size() != 5) {
      reject("expected 5 fields, got " + std::to_string(row->size()));
      continue;
    }
    AnnotationRecord rec;
    rec.sentence_id = csv::trim((*row)[0]);
    rec.annotator_id = csv::trim((*row)[1]);
    if (rec.sentence_id.empty() || rec.annotator_id.empty()) {
      reject("empty sentence_id or annotator_id");
      continue;
    }
    if (auto err = parse_labels((*row)[2], rec.labels, &rec.other_flag)) {
      reject(*err);
      continue;
    }
    if (!parse_bool((*row)[3], rec.is_gold)) {
      reject("is_gold must be true or false");
      continue;
    }
    if (auto err = parse_labels((*row)[4], rec.gold_labels, nullptr)) {
      reject(*err);
      continue;
    }
    if (rec.labels.empty() && !rec.other_flag) {
      reject("record carries neither a dimension nor \"other\"");
      continue;
    }
    if (rec.is_gold && rec.gold_labels.empty()) {
      reject("gold record without gold_labels");
      continue;
    }
    if (!rec.is_gold) rec.gold_labels = {};
    out.records.push_back(std::move(rec));
  }
  return out;
}

AnnotationLoad load_annotations(const fs::path& path) {
  auto in = open_or_throw(path);
  return parse_annotations(in);
}

// --- geo ---------------------------------------------------------------------

GeoMap georeference_users(std::span<const Message> messages,
                          const std::map<std::string, std::string>& group_to_region,
                          std::size_t min_contributions) {
  struct Tally {
    std::size_t count = 0;
    std::set<std::string> regions;
  };
  std::map<std::string, Tally> tallies;
  for (const auto& m : messages) {
    if (!m.group) continue;
    auto it = group_to_region.find(*m.group);
    if (it == group_to_region.end()) continue;
    auto& t = tallies[m.author];
    ++t.count;
    t.regions.insert(it->second);
  }
  GeoMap geo;
  for (const auto& [user, t] : tallies) {
    if (t.count >= min_contributions && t.regions.size() == 1) {
      geo.user_to_region.emplace(user, *t.regions.begin());
    }
  }
  return geo;
}

std::map<std::string, std::string> load_group_regions(const fs::path& path) {
  auto in = open_or_throw(path);
  csv::Reader reader(in);
  std::map<std::string, std::string> out;
  bool first = true;
  while (auto row = reader.next()) {
    if (row->size() < 2) throw ParseError("expected group,region", reader.line());
    std::string group = csv::trim((*row)[0]);
    std::string region = csv::trim((*row)[1]);
    if (first && csv::to_lower(group) == "group") {
      first = false;
      continue;
    }
    first = false;
    out[group] = region;
  }
  return out;
}

std::map<std::string, double> load_region_values(const fs::path& path) {
  auto in = open_or_throw(path);
  csv::Reader reader(in);
  std::map<std::string, double> out;
  bool first = true;
  while (auto row = reader.next()) {
    if (row->size() < 2) throw ParseError("expected region,value", reader.line());
    std::string region = csv::trim((*row)[0]);
    std::string value = csv::trim((*row)[1]);
    try {
      std::size_t used = 0;
      double v = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      out[region] = v;
    } catch (const std::exception&) {
      if (first) {  // header row
        first = false;
        continue;
      }
      throw ParseError("non-numeric value \"" + value + "\"", reader.line());
    }
    first = false;
  }
  return out;
}

}  // namespace socdim
