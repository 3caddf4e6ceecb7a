#include "socdim/features.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>

#include "socdim/error.hpp"

namespace socdim {

double FeatureBlock::operator[](std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return values[i];
  }
  throw InvalidArgument("unknown feature \"" + std::string(name) + "\"");
}

namespace {

constexpr std::array<std::string_view, 11> kStyleNames = {
    "n_elongated",      "n_caps_words",     "n_question_marks", "n_exclamation_marks",
    "n_ellipses",       "n_emoticons",      "hedge_ratio",      "politeness_ratio",
    "morality_ratio",   "empathy_ratio",    "integration_ratio",
};

constexpr std::array<std::string_view, 5> kStyleLists = {
    "hedge", "politeness", "morality", "empathy", "integration",
};

bool is_all_caps(std::string_view word) {
  std::size_t letters = 0;
  for (char c : word) {
    unsigned char u = static_cast<unsigned char>(c);
    if (std::islower(u)) return false;
    if (std::isupper(u)) ++letters;
  }
  return letters >= 2;
}

bool is_elongated(std::string_view word) {
  std::size_t run = 1;
  for (std::size_t i = 1; i < word.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(word[i]);
    if (std::isalpha(c) && std::tolower(c) == std::tolower(static_cast<unsigned char>(word[i - 1]))) {
      if (++run >= 3) return true;
    } else {
      run = 1;
    }
  }
  return false;
}

std::size_t count_ellipses(std::string_view text) {
  std::size_t count = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '.') {
      std::size_t j = i;
      while (j < text.size() && text[j] == '.') ++j;
      if (j - i >= 3) ++count;
      i = j;
    } else if (text.compare(i, 3, "\xE2\x80\xA6") == 0) {
      ++count;
      i += 3;
    } else {
      ++i;
    }
  }
  return count;
}

}  // namespace

std::span<const std::string_view> style_feature_names() { return kStyleNames; }

FeatureBlock style_features(const Sentence& sentence, const ResourceBundle& resources) {
  FeatureBlock block{kStyleNames, std::vector<double>(kStyleNames.size(), 0.0)};
  auto& v = block.values;
  std::size_t words = 0;
  for (const auto& t : sentence.tokens) {
    if (t.kind == TokenKind::kEmoticon) v[5] += 1;
    if (t.kind != TokenKind::kWord) {
      if (t.kind == TokenKind::kNumber) ++words;
      continue;
    }
    ++words;
    std::string_view original = std::string_view(sentence.text).substr(t.offset, t.length);
    if (is_elongated(original)) v[0] += 1;
    if (is_all_caps(original)) v[1] += 1;
  }
  v[2] = static_cast<double>(std::count(sentence.text.begin(), sentence.text.end(), '?'));
  v[3] = static_cast<double>(std::count(sentence.text.begin(), sentence.text.end(), '!'));
  v[4] = static_cast<double>(count_ellipses(sentence.text));
  if (words > 0) {
    for (std::size_t i = 0; i < kStyleLists.size(); ++i) {
      for (const auto& list : resources.style_lists) {
        if (list.name != kStyleLists[i]) continue;
        double ratio = static_cast<double>(list.count_in(sentence.tokens)) / static_cast<double>(words);
        v[6 + i] = std::min(ratio, 1.0);
      }
    }
  }
  return block;
}

std::string_view to_string(FeatureFamily f) {
  switch (f) {
    case FeatureFamily::kStyle: return "style";
    case FeatureFamily::kReadability: return "readability";
    case FeatureFamily::kLexicon: return "lexicon";
    case FeatureFamily::kSentiment: return "sentiment";
    case FeatureFamily::kNgram: return "ngram";
  }
  return "style";
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : data) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::string> FeatureSchema::names() const {
  std::vector<std::string> out;
  out.reserve(features.size());
  for (const auto& f : features) out.push_back(f.name);
  return out;
}

FeatureExtractor::FeatureExtractor(std::shared_ptr<const ResourceBundle> resources,
                                   FeatureConfig config)
    : resources_(std::move(resources)), config_(config) {
  if (!resources_) throw InvalidArgument("FeatureExtractor needs resources");
  auto add = [&](FeatureFamily fam, std::string name) {
    schema_.features.push_back({fam, std::move(name)});
  };
  if (config_.style) {
    for (auto n : style_feature_names()) add(FeatureFamily::kStyle, std::string(n));
  }
  if (config_.readability) {
    for (auto n : readability_feature_names()) add(FeatureFamily::kReadability, std::string(n));
  }
  if (config_.lexicons) {
    for (const auto& lex : resources_->lexicons) {
      for (const auto& cat : lex.categories()) add(FeatureFamily::kLexicon, lex.name() + ":" + cat);
    }
  }
  if (config_.sentiment) {
    for (auto n : sentiment_feature_names()) add(FeatureFamily::kSentiment, std::string(n));
  }
  schema_.ngram_offset = schema_.features.size();
  if (config_.ngrams) {
    schema_.ngram_width = config_.ngram_k;
    for (std::size_t i = 0; i < config_.ngram_k; ++i) {
      add(FeatureFamily::kNgram, "ngram_" + std::to_string(i + 1));
    }
  }
  std::string joined;
  for (const auto& f : schema_.features) {
    joined.append(to_string(f.family));
    joined.push_back(':');
    joined.append(f.name);
    joined.push_back('\n');
  }
  schema_.id = fnv1a_hex(joined);
}

void FeatureExtractor::check_vocab(const NgramVocabulary& vocab) const {
  if (!config_.ngrams) throw SchemaMismatch("n-gram vocabulary given but the n-gram family is disabled");
  if (vocab.k() != config_.ngram_k || vocab.entries().size() > config_.ngram_k) {
    throw SchemaMismatch("n-gram vocabulary has k=" + std::to_string(vocab.k()) +
                         " but the feature configuration expects " +
                         std::to_string(config_.ngram_k));
  }
}

std::vector<double> FeatureExtractor::base_features(const Sentence& sentence) const {
  std::vector<double> out;
  out.reserve(schema_.ngram_offset);
  auto append = [&](const std::vector<double>& v) { out.insert(out.end(), v.begin(), v.end()); };
  if (config_.style) append(style_features(sentence, *resources_).values);
  if (config_.readability) append(readability_features(sentence, *resources_).values);
  if (config_.lexicons) {
    for (const auto& lex : resources_->lexicons) append(category_ratios(sentence.tokens, lex));
  }
  if (config_.sentiment) append(sentiment_scores(sentence, resources_->sentiment).values);
  return out;
}

std::vector<double> FeatureExtractor::ngram_features(const Sentence& sentence,
                                                     const NgramVocabulary* vocab) const {
  std::vector<double> out(config_.ngrams ? config_.ngram_k : 0, 0.0);
  if (vocab == nullptr) return out;
  check_vocab(*vocab);
  for (const auto& g : extract_ngrams(sentence.tokens)) {
    if (auto slot = vocab->slot(g)) out[*slot] += 1.0;
  }
  return out;
}

FeatureVector FeatureExtractor::extract(const Sentence& sentence,
                                        const NgramVocabulary* vocab) const {
  FeatureVector fv;
  fv.schema_id = schema_.id;
  fv.values = base_features(sentence);
  auto ngrams = ngram_features(sentence, vocab);
  fv.values.insert(fv.values.end(), ngrams.begin(), ngrams.end());
  return fv;
}

}  // namespace socdim
