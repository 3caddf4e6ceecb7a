#include "socdim/dimension.hpp"

#include <algorithm>
#include <cctype>

namespace socdim {
namespace {

constexpr std::array<std::string_view, kDimensionCount> kNames = {
    "knowledge", "power",      "status",   "trust", "support",
    "romance",   "similarity", "identity", "fun",   "conflict",
};

constexpr std::string_view kKnowledgeWords[] = {
    "teaching", "intelligence", "competent", "expertise", "know-how", "insight"};
constexpr std::string_view kPowerWords[] = {
    "command", "control", "dominance", "authority", "pretentious", "decisions"};
constexpr std::string_view kStatusWords[] = {
    "admiration", "appreciation", "praise", "thankful", "respect", "honor"};
constexpr std::string_view kTrustWords[] = {
    "trustworthy", "honest", "reliable", "dependability", "loyalty", "faith"};
constexpr std::string_view kSupportWords[] = {
    "friendly", "caring", "cordial", "sympathy", "companionship", "encouragement"};
constexpr std::string_view kRomanceWords[] = {
    "love", "sexual", "intimacy", "partnership", "affection", "emotional", "couple"};
constexpr std::string_view kSimilarityWords[] = {
    "alike", "compatible", "equal", "congenial", "affinity", "agreement"};
constexpr std::string_view kIdentityWords[] = {
    "community", "united", "identity", "cohesive", "integrated"};
constexpr std::string_view kFunWords[] = {
    "funny", "humor", "playful", "comedy", "cheer", "enjoy", "entertaining"};
constexpr std::string_view kConflictWords[] = {
    "hatred", "mistrust", "tense", "disappointing", "betrayal", "hostile"};

}  // namespace

std::string_view to_string(Dimension d) { return kNames[index_of(d)]; }

std::optional<Dimension> parse_dimension(std::string_view name) {
  std::string lowered(name);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == lowered) return static_cast<Dimension>(i);
  }
  return std::nullopt;
}

std::span<const std::string_view> dimension_keywords(Dimension d) {
  switch (d) {
    case Dimension::kKnowledge: return kKnowledgeWords;
    case Dimension::kPower: return kPowerWords;
    case Dimension::kStatus: return kStatusWords;
    case Dimension::kTrust: return kTrustWords;
    case Dimension::kSupport: return kSupportWords;
    case Dimension::kRomance: return kRomanceWords;
    case Dimension::kSimilarity: return kSimilarityWords;
    case Dimension::kIdentity: return kIdentityWords;
    case Dimension::kFun: return kFunWords;
    case Dimension::kConflict: return kConflictWords;
  }
  return {};
}

std::vector<Dimension> DimensionSet::to_vector() const {
  std::vector<Dimension> out;
  for (Dimension d : kAllDimensions) {
    if (contains(d)) out.push_back(d);
  }
  return out;
}

std::string DimensionSet::join(char sep) const {
  std::string out;
  for (Dimension d : to_vector()) {
    if (!out.empty()) out.push_back(sep);
    out.append(to_string(d));
  }
  return out;
}

}  // namespace socdim
