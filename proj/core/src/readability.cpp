#include <array>
#include <cmath>
#include <unordered_map>

#include "socdim/features.hpp"

namespace socdim {
namespace {

constexpr std::array<std::string_view, 12> kNames = {
    "n_words",      "avg_word_length",     "avg_syllables_per_word", "word_entropy",
    "kincaid",      "ari",                 "coleman_liau",           "flesch_reading_ease",
    "gunning_fog",  "smog",                "dale_chall",             "polysyllable_ratio",
};

// Code points that are letters or digits (UTF-8 lead bytes count once).
std::size_t count_chars(std::string_view s) {
  std::size_t n = 0;
  for (char c : s) {
    unsigned char u = static_cast<unsigned char>(c);
    if (std::isalnum(u) || (u >= 0xC0)) ++n;
  }
  return n;
}

}  // namespace

std::span<const std::string_view> readability_feature_names() { return kNames; }

double word_entropy(const std::vector<Token>& tokens) {
  std::unordered_map<std::string_view, std::size_t> freq;
  std::size_t total = 0;
  for (const auto& t : tokens) {
    if (!is_wordlike(t)) continue;
    ++freq[t.surface];
    ++total;
  }
  if (total == 0) return 0.0;
  double h = 0.0;
  for (const auto& [w, c] : freq) {
    double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

FeatureBlock readability_features(const Sentence& sentence, const ResourceBundle& resources) {
  namespace r = readability;
  FeatureBlock block{kNames, std::vector<double>(kNames.size(), 0.0)};
  std::size_t words = 0, chars = 0, syllables = 0, poly = 0, difficult = 0;
  for (const auto& t : sentence.tokens) {
    if (!is_wordlike(t)) continue;
    ++words;
    chars += count_chars(t.surface);
    int syl = t.kind == TokenKind::kWord ? count_syllables(t.surface) : 1;
    syllables += static_cast<std::size_t>(syl);
    if (syl >= 3) ++poly;
    if (t.kind == TokenKind::kWord && t.surface.front() != '<' &&
        resources.easy_words.count(t.surface) == 0) {
      ++difficult;
    }
  }
  if (words == 0) return block;

  const double w = static_cast<double>(words);
  const double sentences = 1.0;
  const double wps = w / sentences;
  const double spw = static_cast<double>(syllables) / w;
  const double cpw = static_cast<double>(chars) / w;
  const double poly_d = static_cast<double>(poly);
  const double pct_difficult = 100.0 * static_cast<double>(difficult) / w;

  auto& v = block.values;
  v[0] = w;
  v[1] = cpw;
  v[2] = spw;
  v[3] = word_entropy(sentence.tokens);
  v[4] = r::kKincaidWordsPerSentence * wps + r::kKincaidSyllablesPerWord * spw - r::kKincaidOffset;
  v[5] = r::kAriCharsPerWord * cpw + r::kAriWordsPerSentence * wps - r::kAriOffset;
  v[6] = r::kColemanLetters * (cpw * 100.0) - r::kColemanSentences * (sentences / w * 100.0) -
         r::kColemanOffset;
  v[7] = r::kFleschBase - r::kFleschWordsPerSentence * wps - r::kFleschSyllablesPerWord * spw;
  v[8] = r::kFogScale * (wps + 100.0 * poly_d / w);
  v[9] = r::kSmogScale * std::sqrt(poly_d * 30.0 / sentences) + r::kSmogOffset;
  v[10] = r::kDaleChallDifficult * pct_difficult + r::kDaleChallWordsPerSentence * wps;
  if (pct_difficult > r::kDaleChallAdjustThreshold) v[10] += r::kDaleChallAdjustment;
  v[11] = poly_d / w;
  return block;
}

}  // namespace socdim
