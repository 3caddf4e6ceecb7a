#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "socdim/text.hpp"

namespace socdim {

struct LexiconEntry {
  std::string pattern;  // lowercase; may end in '*'
  std::string category;
};

// LIWC/Empath-style word -> category lexicon. Categories keep their
// first-appearance order.
class CategoryLexicon {
 public:
  CategoryLexicon() = default;
  CategoryLexicon(std::string name, std::vector<LexiconEntry> entries);

  const std::string& name() const { return name_; }
  const std::vector<LexiconEntry>& entries() const { return entries_; }
  const std::vector<std::string>& categories() const { return categories_; }

  // Indices of every category the word belongs to, sorted, without repeats.
  // Exact and wildcard matches both contribute.
  std::vector<std::size_t> lookup(std::string_view word) const;

  // Category index of the exact entry for `word`, if any; wildcard entries
  // are only consulted when no exact entry exists.
  std::vector<std::size_t> reporting_categories(std::string_view word) const;

 private:
  std::string name_;
  std::vector<LexiconEntry> entries_;
  std::vector<std::string> categories_;
  std::unordered_map<std::string, std::vector<std::size_t>> exact_;
  std::unordered_map<std::string, std::vector<std::size_t>> prefix_;
  std::size_t longest_prefix_ = 0;
};

// TSV `pattern<TAB>category`; '#' comments and blank lines ignored. A
// wildcard anywhere but the last character is a ParseError.
CategoryLexicon parse_lexicon(std::istream& in, std::string name);
CategoryLexicon load_lexicon(const std::filesystem::path& path);

// Fraction of word tokens that match each category, aligned with
// lexicon.categories(). All zero when there are no word tokens.
std::vector<double> category_ratios(const std::vector<Token>& tokens,
                                    const CategoryLexicon& lexicon);

std::map<std::string, double> match_categories(const std::vector<Token>& tokens,
                                               const CategoryLexicon& lexicon);

// Vowel-group heuristic: runs of aeiouy, minus a silent final 'e' that
// follows a consonant other than 'l'; never below 1.
int count_syllables(std::string_view word);

}  // namespace socdim
