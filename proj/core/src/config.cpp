#include "socdim/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>

#include "socdim/corpus.hpp"
#include "socdim/csv.hpp"
#include "socdim/error.hpp"

namespace socdim {
namespace {

std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

std::string unquote(std::string_view v, std::size_t line) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') {
    std::string out;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
      if (v[i] == '\\' && i + 2 < v.size()) ++i;
      out += v[i];
    }
    return out;
  }
  if (!v.empty() && v.front() == '"') throw ParseError("unterminated string", line);
  return std::string(v);
}

ConfigValue parse_value(std::string_view text, std::size_t line) {
  std::string v = csv::trim(text);
  if (v.empty()) throw ParseError("missing value", line);
  if (v.front() == '[') {
    if (v.back() != ']') throw ParseError("unterminated array", line);
    std::vector<std::string> items;
    std::string inner = csv::trim(std::string_view(v).substr(1, v.size() - 2));
    if (inner.empty()) return items;
    std::string cur;
    bool quoted = false;
    for (char c : inner) {
      if (c == '"') quoted = !quoted;
      if (c == ',' && !quoted) {
        items.push_back(unquote(csv::trim(cur), line));
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!csv::trim(cur).empty()) items.push_back(unquote(csv::trim(cur), line));
    return items;
  }
  if (v.front() == '"') return unquote(v, line);
  if (v == "true") return true;
  if (v == "false") return false;
  double d = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), d);
  if (ec == std::errc() && ptr == v.data() + v.size()) return d;
  return v;  // bare word
}

}  // namespace

ConfigTable parse_config_table(std::istream& in) {
  ConfigTable table;
  std::string raw, section;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = csv::trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("malformed section header", line_no);
      section = csv::trim(std::string_view(line).substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", line_no);
    std::string key = csv::trim(std::string_view(line).substr(0, eq));
    if (key.empty()) throw ParseError("empty key", line_no);
    std::string full = section.empty() ? key : section + "." + key;
    if (table.count(full)) throw ParseError("duplicate key " + full, line_no);
    table[full] = parse_value(std::string_view(line).substr(eq + 1), line_no);
  }
  return table;
}

namespace {

class Binder {
 public:
  Binder(const ConfigTable& table, std::filesystem::path base) : table_(table), base_(std::move(base)) {}

  void string(const std::string& key, std::string& out) {
    if (auto v = take(key)) {
      if (auto s = std::get_if<std::string>(&*v)) out = *s;
      else fail(key, "expected a string");
    }
  }
  void path(const std::string& key, std::filesystem::path& out) {
    std::string s;
    bool had = table_.count(key) > 0;
    string(key, s);
    if (had && !s.empty()) out = resolve(s);
  }
  void paths(const std::string& key, std::vector<std::filesystem::path>& out) {
    std::vector<std::string> items;
    if (list(key, items)) {
      out.clear();
      for (auto& s : items) out.push_back(resolve(s));
    }
  }
  void boolean(const std::string& key, bool& out) {
    if (auto v = take(key)) {
      if (auto b = std::get_if<bool>(&*v)) out = *b;
      else fail(key, "expected true or false");
    }
  }
  void number(const std::string& key, double& out, double lo, double hi) {
    if (auto v = take(key)) {
      auto d = std::get_if<double>(&*v);
      if (!d) return fail(key, "expected a number");
      if (!(*d >= lo && *d <= hi)) return fail(key, "out of range");
      out = *d;
    }
  }
  void count(const std::string& key, std::size_t& out, std::size_t lo) {
    if (auto v = take(key)) {
      auto d = std::get_if<double>(&*v);
      if (!d || *d != std::floor(*d) || *d < static_cast<double>(lo)) {
        return fail(key, "expected an integer >= " + std::to_string(lo));
      }
      out = static_cast<std::size_t>(*d);
    }
  }
  bool list(const std::string& key, std::vector<std::string>& out) {
    if (auto v = take(key)) {
      if (auto l = std::get_if<std::vector<std::string>>(&*v)) {
        out = *l;
        return true;
      }
      fail(key, "expected an array");
    }
    return false;
  }
  void numbers(const std::string& key, std::vector<double>& out, double lo) {
    std::vector<std::string> items;
    if (!list(key, items)) return;
    std::vector<double> parsed;
    for (const auto& s : items) {
      double d = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), d);
      if (ec != std::errc() || ptr != s.data() + s.size() || d < lo) {
        return fail(key, "bad entry '" + s + "'");
      }
      parsed.push_back(d);
    }
    if (parsed.empty()) return fail(key, "must not be empty");
    out = parsed;
  }
  void counts(const std::string& key, std::vector<std::size_t>& out, std::size_t lo) {
    std::vector<double> d;
    numbers(key, d, static_cast<double>(lo));
    if (d.empty()) return;
    std::vector<std::size_t> parsed;
    for (double x : d) {
      if (x != std::floor(x)) return fail(key, "entries must be integers");
      parsed.push_back(static_cast<std::size_t>(x));
    }
    out = parsed;
  }
  void fail(const std::string& key, const std::string& message) {
    errors_ += key + ": " + message + "\n";
  }
  void finish() {
    for (const auto& [key, _] : table_) {
      if (!used_.count(key)) fail(key, "unknown key");
    }
    if (!errors_.empty()) throw InvalidArgument("invalid configuration:\n" + errors_);
  }

 private:
  std::optional<ConfigValue> take(const std::string& key) {
    auto it = table_.find(key);
    if (it == table_.end()) return std::nullopt;
    used_.insert(key);
    return it->second;
  }
  std::filesystem::path resolve(const std::string& s) const {
    std::filesystem::path p(s);
    return p.is_relative() && !base_.empty() ? base_ / p : p;
  }

  const ConfigTable& table_;
  std::filesystem::path base_;
  std::set<std::string> used_;
  std::string errors_;
};

}  // namespace

RunConfig parse_run_config(std::istream& in, const std::filesystem::path& base_dir) {
  ConfigTable table;
  try {
    table = parse_config_table(in);
  } catch (const ParseError& e) {
    throw InvalidArgument(std::string("invalid configuration: ") + e.what());
  }
  RunConfig c;
  Binder b(table, base_dir);

  double seed = static_cast<double>(c.seed);
  b.number("seed", seed, 0, 9007199254740992.0);
  if (seed != std::floor(seed)) b.fail("seed", "expected an integer");
  c.seed = static_cast<std::uint64_t>(seed);
  b.count("workers", c.workers, 0);

  b.path("paths.corpus", c.corpus);
  b.string("paths.corpus_format", c.corpus_format);
  if (!parse_corpus_format(c.corpus_format)) b.fail("paths.corpus_format", "unknown format");
  b.path("paths.sentences", c.sentences);
  b.path("paths.annotations", c.annotations);
  b.path("paths.data_dir", c.data_dir);
  b.path("paths.embeddings", c.embeddings);
  b.count("paths.embedding_dim", c.embedding_dim, 1);
  b.path("paths.models_dir", c.models_dir);
  b.path("paths.group_regions", c.group_regions);
  b.path("paths.densities", c.densities);
  b.paths("paths.census", c.census);
  b.path("paths.output_dir", c.output_dir);

  b.boolean("features.style", c.features.style);
  b.boolean("features.readability", c.features.readability);
  b.boolean("features.lexicons", c.features.lexicons);
  b.boolean("features.sentiment", c.features.sentiment);
  b.boolean("features.ngrams", c.features.ngrams);
  b.count("features.ngram_k", c.features.ngram_k, 1);
  b.count("features.min_count", c.ngrams.min_count, 1);
  b.number("features.alpha", c.ngrams.alpha, 0.0, 1e6);
  c.ngrams.k = c.features.ngram_k;

  b.count("annotations.quorum", c.quorum, 1);
  b.number("annotations.fail_threshold", c.fail_threshold, 0.0, 1.0);
  b.boolean("annotations.single_vote_negative", c.single_vote_negative);

  std::vector<std::string> models;
  if (b.list("learn.models", models)) {
    c.models.clear();
    for (const auto& m : models) {
      if (auto k = parse_model_kind(m)) c.models.push_back(*k);
      else b.fail("learn.models", "unknown model kind '" + m + "'");
    }
  }
  b.count("learn.folds", c.folds, 3);
  b.numbers("learn.logreg_learning_rate", c.grids.logreg.learning_rate, 0.0);
  b.numbers("learn.logreg_l2", c.grids.logreg.l2, 0.0);
  b.counts("learn.logreg_epochs", c.grids.logreg.epochs, 1);
  b.numbers("learn.gbdt_learning_rate", c.grids.gbdt.learning_rate, 0.0);
  b.counts("learn.gbdt_max_depth", c.grids.gbdt.max_depth, 1);
  b.counts("learn.gbdt_rounds", c.grids.gbdt.rounds, 1);
  b.numbers("learn.gbdt_min_leaf", c.grids.gbdt.min_leaf, 0.0);

  b.count("text.min_sentence_tokens", c.min_sentence_tokens, 1);
  b.count("text.max_sentence_tokens", c.max_sentence_tokens, 1);
  if (c.max_sentence_tokens < c.min_sentence_tokens) {
    b.fail("text.max_sentence_tokens", "smaller than text.min_sentence_tokens");
  }

  b.number("analytics.threshold", c.threshold, 0.0, 1.0);
  b.count("analytics.min_messages", c.min_messages, 1);
  b.count("analytics.min_contributions", c.min_contributions, 1);
  std::vector<std::string> dims;
  if (b.list("analytics.dimensions", dims)) {
    c.dimensions.clear();
    for (const auto& d : dims) {
      if (auto dim = parse_dimension(d)) c.dimensions.push_back(*dim);
      else b.fail("analytics.dimensions", "unknown dimension '" + d + "'");
    }
  }
  b.boolean("analytics.standardize", c.standardize);
  b.boolean("analytics.sentiment_baseline", c.sentiment_baseline);

  b.finish();
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  return parse_run_config(in, path.parent_path());
}

}  // namespace socdim
