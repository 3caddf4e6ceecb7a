#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "socdim/error.hpp"
#include "socdim/features.hpp"

namespace socdim {

NgramVocabulary::NgramVocabulary(Dimension dimension, std::vector<NgramEntry> entries,
                                 std::size_t min_count, std::size_t k, double alpha)
    : dimension_(dimension),
      entries_(std::move(entries)),
      min_count_(min_count),
      k_(k),
      alpha_(alpha) {
  if (entries_.size() > k_) throw InvalidArgument("vocabulary larger than k");
  for (std::size_t i = 0; i < entries_.size(); ++i) slots_.emplace(entries_[i].ngram, i);
}

std::optional<std::size_t> NgramVocabulary::slot(std::string_view ngram) const {
  auto it = slots_.find(std::string(ngram));
  if (it == slots_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> extract_ngrams(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!is_wordlike(tokens[i])) continue;
    out.push_back(tokens[i].surface);
    if (i + 1 < tokens.size() && is_wordlike(tokens[i + 1])) {
      out.push_back(tokens[i].surface + " " + tokens[i + 1].surface);
    }
  }
  return out;
}

namespace {

std::size_t count_into(const TokenRefs& docs, std::unordered_map<std::string, std::size_t>& counts) {
  std::size_t total = 0;
  for (const auto* tokens : docs) {
    for (auto& g : extract_ngrams(*tokens)) {
      ++counts[std::move(g)];
      ++total;
    }
  }
  return total;
}

}  // namespace

NgramVocabulary select_ngrams(const TokenRefs& positives, const TokenRefs& corpus,
                              Dimension dimension, const NgramOptions& options) {
  if (positives.empty()) {
    throw InvalidArgument("select_ngrams: no positive sentences for " +
                          std::string(to_string(dimension)));
  }
  if (corpus.empty()) throw InvalidArgument("select_ngrams: empty corpus");

  std::unordered_map<std::string, std::size_t> corpus_counts, positive_counts;
  const double n_corpus = static_cast<double>(count_into(corpus, corpus_counts));
  const double n_positive = static_cast<double>(count_into(positives, positive_counts));
  const double vocab = static_cast<double>(corpus_counts.size());
  const double a = options.alpha;

  std::vector<NgramEntry> ranked;
  for (const auto& [gram, count] : corpus_counts) {
    if (count < options.min_count) continue;
    auto pit = positive_counts.find(gram);
    double cp = pit == positive_counts.end() ? 0.0 : static_cast<double>(pit->second);
    double log_p_pos = std::log((cp + a) / (n_positive + a * vocab));
    double log_p = std::log((static_cast<double>(count) + a) / (n_corpus + a * vocab));
    ranked.push_back({gram, log_p_pos - log_p});
  }
  std::sort(ranked.begin(), ranked.end(), [](const NgramEntry& x, const NgramEntry& y) {
    if (x.xi != y.xi) return x.xi > y.xi;
    return x.ngram < y.ngram;
  });
  if (ranked.size() > options.k) ranked.resize(options.k);
  return NgramVocabulary(dimension, std::move(ranked), options.min_count, options.k, options.alpha);
}

NgramVocabulary select_ngrams(std::span<const Sentence> positives,
                              std::span<const Sentence> corpus, Dimension dimension,
                              const NgramOptions& options) {
  TokenRefs p, c;
  for (const auto& s : positives) p.push_back(&s.tokens);
  for (const auto& s : corpus) c.push_back(&s.tokens);
  return select_ngrams(p, c, dimension, options);
}

}  // namespace socdim
