#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "socdim/dimension.hpp"
#include "socdim/lexicon.hpp"
#include "socdim/text.hpp"

namespace socdim {

// A word list whose entries may span several tokens ("thank you").
struct PhraseList {
  std::string name;
  std::vector<std::vector<std::string>> phrases;  // lowercase word surfaces

  // Non-overlapping occurrences, longest match first.
  std::size_t count_in(const std::vector<Token>& tokens) const;
};

struct SentimentLexicon {
  std::unordered_map<std::string, double> valence;
  std::unordered_map<std::string, double> boosters;  // +1 intensifier, -1 dampener
  std::set<std::string, std::less<>> negations;
  std::set<std::string, std::less<>> offensive;
  std::set<std::string, std::less<>> hate;
};

struct ManifestEntry {
  std::string kind;
  std::string name;
  std::string path;
  std::string description;
};

// Everything the feature extractor and text rules read from the data
// directory.
struct ResourceBundle {
  std::filesystem::path root;
  std::vector<ManifestEntry> manifest;
  TextRules text_rules;
  std::vector<CategoryLexicon> lexicons;
  std::vector<PhraseList> style_lists;
  SentimentLexicon sentiment;
  std::set<std::string, std::less<>> easy_words;
  std::map<Dimension, std::vector<std::string>> anchors;
};

// Reads <dir>/manifest.tsv and every file it names.
ResourceBundle load_resources(const std::filesystem::path& dir);

// $SOCDIM_DATA_DIR if set, else the source-tree data directory when it
// exists, else the installed share directory.
std::filesystem::path default_data_dir();

PhraseList load_phrase_list(const std::filesystem::path& path, std::string name);

}  // namespace socdim
