#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "socdim/dimension.hpp"
#include "socdim/resources.hpp"
#include "socdim/text.hpp"

namespace socdim {

// Values of one feature family, aligned with a fixed list of names.
struct FeatureBlock {
  std::span<const std::string_view> names;
  std::vector<double> values;

  // Value by name; throws InvalidArgument for unknown names.
  double operator[](std::string_view name) const;
};

// --- style ----------------------------------------------------------------

std::span<const std::string_view> style_feature_names();

// Counts of elongated words, all-caps words, '?', '!', ellipses, emoticons,
// then the ratio of words matching each style list in the bundle (hedge,
// politeness, morality, empathy, integration).
FeatureBlock style_features(const Sentence& sentence, const ResourceBundle& resources);

// --- readability ----------------------------------------------------------

// Formula constants (sentence-local statistics, one sentence).
namespace readability {
inline constexpr double kFleschBase = 206.835;
inline constexpr double kFleschWordsPerSentence = 1.015;
inline constexpr double kFleschSyllablesPerWord = 84.6;
inline constexpr double kKincaidWordsPerSentence = 0.39;
inline constexpr double kKincaidSyllablesPerWord = 11.8;
inline constexpr double kKincaidOffset = 15.59;
inline constexpr double kAriCharsPerWord = 4.71;
inline constexpr double kAriWordsPerSentence = 0.5;
inline constexpr double kAriOffset = 21.43;
inline constexpr double kColemanLetters = 0.0588;
inline constexpr double kColemanSentences = 0.296;
inline constexpr double kColemanOffset = 15.8;
inline constexpr double kFogScale = 0.4;
inline constexpr double kSmogScale = 1.0430;
inline constexpr double kSmogOffset = 3.1291;
inline constexpr double kDaleChallDifficult = 0.1579;
inline constexpr double kDaleChallWordsPerSentence = 0.0496;
inline constexpr double kDaleChallAdjustment = 3.6365;
inline constexpr double kDaleChallAdjustThreshold = 5.0;  // percent difficult words
}  // namespace readability

std::span<const std::string_view> readability_feature_names();

FeatureBlock readability_features(const Sentence& sentence, const ResourceBundle& resources);

// Shannon entropy (bits) of the word-token frequency distribution.
double word_entropy(const std::vector<Token>& tokens);

// --- sentiment ------------------------------------------------------------

namespace sentiment {
inline constexpr double kNegationScale = -0.74;
inline constexpr double kBoosterStep = 0.293;
inline constexpr double kCapsEmphasis = 1.5;
inline constexpr double kExclamationStep = 0.292;
inline constexpr int kMaxExclamations = 3;
inline constexpr double kNormalizationAlpha = 15.0;
inline constexpr std::size_t kWindow = 3;
}  // namespace sentiment

std::span<const std::string_view> sentiment_feature_names();

// vader_pos, vader_neu, vader_neg, vader_compound, offensive, hate.
FeatureBlock sentiment_scores(const Sentence& sentence, const SentimentLexicon& lexicon);

// --- n-grams --------------------------------------------------------------

struct NgramEntry {
  std::string ngram;  // tokens joined by a single space
  double xi = 0.0;

  friend bool operator==(const NgramEntry&, const NgramEntry&) = default;
};

class NgramVocabulary {
 public:
  NgramVocabulary() = default;
  NgramVocabulary(Dimension dimension, std::vector<NgramEntry> entries, std::size_t min_count,
                  std::size_t k, double alpha);

  Dimension dimension() const { return dimension_; }
  const std::vector<NgramEntry>& entries() const { return entries_; }
  std::size_t min_count() const { return min_count_; }
  std::size_t k() const { return k_; }
  double alpha() const { return alpha_; }

  std::optional<std::size_t> slot(std::string_view ngram) const;

 private:
  Dimension dimension_ = Dimension::kKnowledge;
  std::vector<NgramEntry> entries_;
  std::size_t min_count_ = 10;
  std::size_t k_ = 100;
  double alpha_ = 0.01;
  std::unordered_map<std::string, std::size_t> slots_;
};

struct NgramOptions {
  std::size_t min_count = 10;
  std::size_t k = 100;
  double alpha = 0.01;
};

// Unigrams and bigrams of adjacent word/number tokens.
std::vector<std::string> extract_ngrams(const std::vector<Token>& tokens);

using TokenRefs = std::vector<const std::vector<Token>*>;

// Ranks n-grams with corpus count >= min_count by
//   xi = log p(w | P) - log p(w),
// both probabilities additively smoothed with alpha over the corpus n-gram
// vocabulary. Ties break lexicographically. Throws on empty positives.
NgramVocabulary select_ngrams(const TokenRefs& positives, const TokenRefs& corpus,
                              Dimension dimension, const NgramOptions& options = {});
NgramVocabulary select_ngrams(std::span<const Sentence> positives,
                              std::span<const Sentence> corpus, Dimension dimension,
                              const NgramOptions& options = {});

// --- schema and assembly --------------------------------------------------

enum class FeatureFamily { kStyle, kReadability, kLexicon, kSentiment, kNgram };
std::string_view to_string(FeatureFamily f);

struct FeatureConfig {
  bool style = true;
  bool readability = true;
  bool lexicons = true;
  bool sentiment = true;
  bool ngrams = true;
  std::size_t ngram_k = 100;
};

struct FeatureSpec {
  FeatureFamily family;
  std::string name;
};

struct FeatureSchema {
  std::vector<FeatureSpec> features;
  std::string id;  // hex FNV-1a over the ordered names
  std::size_t ngram_offset = 0;
  std::size_t ngram_width = 0;

  std::size_t size() const { return features.size(); }
  std::vector<std::string> names() const;
};

struct FeatureVector {
  std::string schema_id;
  std::vector<double> values;
};

class FeatureExtractor {
 public:
  FeatureExtractor(std::shared_ptr<const ResourceBundle> resources, FeatureConfig config);

  const FeatureSchema& schema() const { return schema_; }
  const FeatureConfig& config() const { return config_; }
  const ResourceBundle& resources() const { return *resources_; }

  // Full vector in family order style, readability, lexicons, sentiment,
  // n-grams. A null vocab leaves the n-gram block at zero.
  FeatureVector extract(const Sentence& sentence, const NgramVocabulary* vocab = nullptr) const;

  // Everything before the n-gram block.
  std::vector<double> base_features(const Sentence& sentence) const;
  // Occurrence counts of each vocabulary n-gram (width = config.ngram_k).
  std::vector<double> ngram_features(const Sentence& sentence,
                                     const NgramVocabulary* vocab) const;

  void check_vocab(const NgramVocabulary& vocab) const;

 private:
  std::shared_ptr<const ResourceBundle> resources_;
  FeatureConfig config_;
  FeatureSchema schema_;
};

std::string fnv1a_hex(std::string_view data);

}  // namespace socdim
