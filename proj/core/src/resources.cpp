#include "socdim/resources.hpp"

#include <cstdlib>
#include <fstream>

#include "socdim/csv.hpp"
#include "socdim/error.hpp"

namespace socdim {
namespace fs = std::filesystem;

namespace {

std::ifstream open(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  return in;
}

// Yields (line number, trimmed line) for non-comment, non-blank lines.
template <typename Fn>
void for_each_line(const fs::path& path, Fn&& fn) {
  auto in = open(path);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string t = csv::trim(line);
    if (t.empty() || t[0] == '#') continue;
    fn(n, line);
  }
}

std::set<std::string, std::less<>> load_word_set(const fs::path& path) {
  std::set<std::string, std::less<>> out;
  for_each_line(path, [&](std::size_t, const std::string& line) {
    out.insert(csv::to_lower(csv::trim(line)));
  });
  return out;
}

std::unordered_map<std::string, double> load_word_values(const fs::path& path) {
  std::unordered_map<std::string, double> out;
  for_each_line(path, [&](std::size_t n, const std::string& line) {
    auto fields = csv::split(line, '\t');
    if (fields.size() < 2) throw ParseError(path.string() + ": expected word<TAB>value", n);
    try {
      out.emplace(csv::to_lower(csv::trim(fields[0])), std::stod(csv::trim(fields[1])));
    } catch (const std::invalid_argument&) {
      throw ParseError(path.string() + ": bad number", n);
    }
  });
  return out;
}

}  // namespace

std::size_t PhraseList::count_in(const std::vector<Token>& tokens) const {
  std::vector<const std::string*> words;
  for (const auto& t : tokens) {
    if (is_wordlike(t)) words.push_back(&t.surface);
  }
  std::size_t count = 0;
  std::size_t i = 0;
  while (i < words.size()) {
    std::size_t best = 0;
    for (const auto& phrase : phrases) {
      if (phrase.size() <= best || i + phrase.size() > words.size()) continue;
      bool match = true;
      for (std::size_t j = 0; j < phrase.size() && match; ++j) match = *words[i + j] == phrase[j];
      if (match) best = phrase.size();
    }
    if (best > 0) {
      ++count;
      i += best;
    } else {
      ++i;
    }
  }
  return count;
}

PhraseList load_phrase_list(const fs::path& path, std::string name) {
  PhraseList list{std::move(name), {}};
  for_each_line(path, [&](std::size_t, const std::string& line) {
    std::vector<std::string> words;
    for (const auto& t : tokenize(line)) {
      if (is_wordlike(t)) words.push_back(t.surface);
    }
    if (!words.empty()) list.phrases.push_back(std::move(words));
  });
  return list;
}

ResourceBundle load_resources(const fs::path& dir) {
  ResourceBundle bundle;
  bundle.root = dir;
  bundle.text_rules = TextRules::builtin();
  for_each_line(dir / "manifest.tsv", [&](std::size_t n, const std::string& line) {
    auto f = csv::split(line, '\t');
    if (f.size() < 3) throw ParseError("manifest.tsv: expected kind<TAB>name<TAB>path", n);
    bundle.manifest.push_back({csv::trim(f[0]), csv::trim(f[1]), csv::trim(f[2]),
                               f.size() > 3 ? csv::trim(f[3]) : std::string()});
  });

  for (const auto& e : bundle.manifest) {
    fs::path p = dir / e.path;
    if (e.kind == "abbreviations") {
      bundle.text_rules.abbreviations = load_word_set(p);
    } else if (e.kind == "pronouns") {
      bundle.text_rules.pronouns = load_word_set(p);
    } else if (e.kind == "anchors") {
      for_each_line(p, [&](std::size_t n, const std::string& line) {
        auto f = csv::split(line, '\t');
        auto d = f.size() == 2 ? parse_dimension(csv::trim(f[0])) : std::nullopt;
        if (!d) throw ParseError(p.string() + ": expected dimension<TAB>keyword", n);
        bundle.anchors[*d].push_back(csv::to_lower(csv::trim(f[1])));
      });
    } else if (e.kind == "lexicon") {
      std::ifstream in = open(p);
      bundle.lexicons.push_back(parse_lexicon(in, e.name));
    } else if (e.kind == "style") {
      bundle.style_lists.push_back(load_phrase_list(p, e.name));
    } else if (e.kind == "valence") {
      bundle.sentiment.valence = load_word_values(p);
    } else if (e.kind == "boosters") {
      bundle.sentiment.boosters = load_word_values(p);
    } else if (e.kind == "negations") {
      bundle.sentiment.negations = load_word_set(p);
    } else if (e.kind == "offensive") {
      bundle.sentiment.offensive = load_word_set(p);
    } else if (e.kind == "hate") {
      bundle.sentiment.hate = load_word_set(p);
    } else if (e.kind == "easy_words") {
      bundle.easy_words = load_word_set(p);
    } else {
      throw ParseError("manifest.tsv: unknown resource kind \"" + e.kind + "\"", 0);
    }
  }
  return bundle;
}

fs::path default_data_dir() {
  if (const char* env = std::getenv("SOCDIM_DATA_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  std::error_code ec;
  fs::path build_dir = SOCDIM_BUILD_DATA_DIR;
  if (fs::exists(build_dir / "manifest.tsv", ec)) return build_dir;
  return SOCDIM_INSTALL_DATA_DIR;
}

}  // namespace socdim
