#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>

#include "socdim/features.hpp"

namespace socdim {
namespace {

constexpr std::array<std::string_view, 6> kNames = {
    "vader_pos", "vader_neu", "vader_neg", "vader_compound", "offensive", "hate",
};

bool all_caps_word(std::string_view w) {
  std::size_t upper = 0;
  for (char c : w) {
    unsigned char u = static_cast<unsigned char>(c);
    if (std::islower(u)) return false;
    if (std::isupper(u)) ++upper;
  }
  return upper >= 2;
}

bool has_lowercase(std::string_view w) {
  return std::any_of(w.begin(), w.end(),
                     [](char c) { return std::islower(static_cast<unsigned char>(c)) != 0; });
}

bool ends_with_nt(std::string_view w) {
  return w.size() > 3 && w.substr(w.size() - 3) == "n't";
}

}  // namespace

std::span<const std::string_view> sentiment_feature_names() { return kNames; }

FeatureBlock sentiment_scores(const Sentence& sentence, const SentimentLexicon& lexicon) {
  namespace s = sentiment;
  FeatureBlock block{kNames, std::vector<double>(kNames.size(), 0.0)};

  std::vector<const Token*> items;
  std::size_t words = 0, offensive = 0, hate = 0;
  bool mixed_case = false;
  for (const auto& t : sentence.tokens) {
    if (t.kind == TokenKind::kPunctuation) continue;
    items.push_back(&t);
    if (!is_wordlike(t)) continue;
    ++words;
    if (lexicon.offensive.count(t.surface)) ++offensive;
    if (lexicon.hate.count(t.surface)) ++hate;
    if (has_lowercase(std::string_view(sentence.text).substr(t.offset, t.length))) {
      mixed_case = true;
    }
  }
  if (items.empty()) return block;

  std::vector<double> valences;
  valences.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    const Token& t = *items[i];
    double v = 0.0;
    if (!lexicon.boosters.count(t.surface)) {
      if (auto it = lexicon.valence.find(t.surface); it != lexicon.valence.end()) v = it->second;
    }
    if (v != 0.0) {
      std::string_view original = std::string_view(sentence.text).substr(t.offset, t.length);
      if (mixed_case && all_caps_word(original)) v *= s::kCapsEmphasis;
      double sign = v > 0 ? 1.0 : -1.0;
      bool negated = false;
      for (std::size_t back = 1; back <= s::kWindow && back <= i; ++back) {
        const std::string& prev = items[i - back]->surface;
        if (auto b = lexicon.boosters.find(prev); b != lexicon.boosters.end()) {
          v += sign * b->second * s::kBoosterStep;
        }
        if (lexicon.negations.count(prev) || ends_with_nt(prev)) negated = true;
      }
      if (negated) v *= s::kNegationScale;
    }
    valences.push_back(v);
  }

  double sum = 0.0;
  for (double v : valences) sum += v;
  auto bangs = std::count(sentence.text.begin(), sentence.text.end(), '!');
  double emphasis = static_cast<double>(std::min<long>(bangs, s::kMaxExclamations)) * s::kExclamationStep;
  if (sum > 0) sum += emphasis;
  else if (sum < 0) sum -= emphasis;
  double compound = sum / std::sqrt(sum * sum + s::kNormalizationAlpha);
  compound = std::clamp(compound, -1.0, 1.0);

  double pos = 0.0, neg = 0.0, neu = 0.0;
  for (double v : valences) {
    if (v > 0) pos += v + 1.0;
    else if (v < 0) neg += v - 1.0;
    else neu += 1.0;
  }
  if (pos > std::fabs(neg)) pos += emphasis;
  else if (pos < std::fabs(neg)) neg -= emphasis;
  double total = pos + std::fabs(neg) + neu;

  auto& out = block.values;
  out[0] = pos / total;
  out[1] = neu / total;
  out[2] = std::fabs(neg) / total;
  out[3] = compound;
  if (words > 0) {
    out[4] = static_cast<double>(offensive) / static_cast<double>(words);
    out[5] = static_cast<double>(hate) / static_cast<double>(words);
  }
  return block;
}

}  // namespace socdim
