#include "socdim/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "socdim/csv.hpp"
#include "socdim/error.hpp"

namespace socdim {

CategoryLexicon::CategoryLexicon(std::string name, std::vector<LexiconEntry> entries)
    : name_(std::move(name)), entries_(std::move(entries)) {
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& e : entries_) {
    auto [it, inserted] = index.emplace(e.category, categories_.size());
    if (inserted) categories_.push_back(e.category);
    std::size_t cat = it->second;
    if (!e.pattern.empty() && e.pattern.back() == '*') {
      std::string prefix = e.pattern.substr(0, e.pattern.size() - 1);
      longest_prefix_ = std::max(longest_prefix_, prefix.size());
      prefix_[prefix].push_back(cat);
    } else {
      exact_[e.pattern].push_back(cat);
    }
  }
}

std::vector<std::size_t> CategoryLexicon::lookup(std::string_view word) const {
  std::vector<std::size_t> cats;
  if (auto it = exact_.find(std::string(word)); it != exact_.end()) {
    cats.insert(cats.end(), it->second.begin(), it->second.end());
  }
  std::size_t max_len = std::min(longest_prefix_, word.size());
  for (std::size_t len = 0; len <= max_len; ++len) {
    if (auto it = prefix_.find(std::string(word.substr(0, len))); it != prefix_.end()) {
      cats.insert(cats.end(), it->second.begin(), it->second.end());
    }
  }
  std::sort(cats.begin(), cats.end());
  cats.erase(std::unique(cats.begin(), cats.end()), cats.end());
  return cats;
}

std::vector<std::size_t> CategoryLexicon::reporting_categories(std::string_view word) const {
  if (auto it = exact_.find(std::string(word)); it != exact_.end()) {
    std::vector<std::size_t> cats = it->second;
    std::sort(cats.begin(), cats.end());
    cats.erase(std::unique(cats.begin(), cats.end()), cats.end());
    return cats;
  }
  return lookup(word);
}

CategoryLexicon parse_lexicon(std::istream& in, std::string name) {
  std::vector<LexiconEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string trimmed = csv::trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError("expected pattern<TAB>category", line_no);
    std::string pattern = csv::to_lower(csv::trim(line.substr(0, tab)));
    std::string category = csv::trim(line.substr(tab + 1));
    if (pattern.empty() || category.empty()) {
      throw ParseError("empty pattern or category", line_no);
    }
    auto star = pattern.find('*');
    if (star != std::string::npos && star != pattern.size() - 1) {
      throw ParseError("wildcard allowed only in final position: " + pattern, line_no);
    }
    entries.push_back({std::move(pattern), std::move(category)});
  }
  return CategoryLexicon(std::move(name), std::move(entries));
}

CategoryLexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  return parse_lexicon(in, path.stem().string());
}

std::vector<double> category_ratios(const std::vector<Token>& tokens,
                                    const CategoryLexicon& lexicon) {
  std::vector<double> counts(lexicon.categories().size(), 0.0);
  std::size_t words = 0;
  for (const auto& t : tokens) {
    if (!is_wordlike(t)) continue;
    ++words;
    for (std::size_t c : lexicon.lookup(t.surface)) counts[c] += 1.0;
  }
  if (words == 0) return std::vector<double>(counts.size(), 0.0);
  for (double& c : counts) c /= static_cast<double>(words);
  return counts;
}

std::map<std::string, double> match_categories(const std::vector<Token>& tokens,
                                               const CategoryLexicon& lexicon) {
  auto ratios = category_ratios(tokens, lexicon);
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < ratios.size(); ++i) out[lexicon.categories()[i]] = ratios[i];
  return out;
}

int count_syllables(std::string_view word) {
  auto vowel = [](char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
  };
  std::string w;
  for (char c : word) {
    if (std::isalpha(static_cast<unsigned char>(c))) {
      w.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  int count = 0;
  bool prev_vowel = false;
  for (char c : w) {
    bool v = vowel(c);
    if (v && !prev_vowel) ++count;
    prev_vowel = v;
  }
  if (w.size() >= 2 && w.back() == 'e') {
    char before = w[w.size() - 2];
    if (!vowel(before) && before != 'l') --count;
  }
  return std::max(count, 1);
}

}  // namespace socdim
