#include "socdim/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>

#include "socdim/error.hpp"
#include "socdim/metrics.hpp"

namespace socdim {

DimensionScorer make_scorer(const Model& model, const FeatureExtractor* extractor,
                            const EmbeddingStore* store) {
  if (model.kind != ModelKind::kEmbeddingDistance) {
    if (!extractor) throw InvalidArgument("feature model needs a feature extractor");
    if (extractor->schema().id != model.schema_id) {
      throw SchemaMismatch("model for " + std::string(to_string(model.dimension)) +
                           " was trained with feature schema " + model.schema_id +
                           ", extractor has " + extractor->schema().id);
    }
  } else if (!store) {
    throw InvalidArgument("embedding-distance model needs an embedding store");
  }
  return {model.dimension, [&model, extractor, store](const Sentence& s) {
            return predict(model, s, extractor, store);
          }};
}

TextLabeling label_text(const Message& message, std::span<const DimensionScorer> scorers,
                        double threshold, const TextRules& rules) {
  TextLabeling out;
  out.message_id = message.id;
  for (const auto& sentence : split_sentences(message.text, rules)) {
    if (sentence.tokens.empty()) continue;
    out.scoreable = true;
    for (const auto& scorer : scorers) {
      double s = scorer.score(sentence);
      auto& best = out.max_score[index_of(scorer.dimension)];
      if (!best || s > *best) best = s;
    }
  }
  for (Dimension d : kAllDimensions) {
    const auto& best = out.max_score[index_of(d)];
    if (best && *best > threshold) out.labeled.insert(d);
  }
  return out;
}

std::int64_t week_start(std::int64_t timestamp) {
  constexpr std::int64_t kDay = 86400;
  std::int64_t days = timestamp / kDay - (timestamp % kDay < 0 ? 1 : 0);
  // 1970-01-01 was a Thursday, three days after a Monday.
  std::int64_t since_monday = ((days + 3) % 7 + 7) % 7;
  return (days - since_monday) * kDay;
}

bool zscores(std::span<const double> f, std::vector<double>& z) {
  z.assign(f.size(), 0.0);
  // Equal values can leave a rounding-level SD behind; that is still zero.
  if (f.empty() || std::adjacent_find(f.begin(), f.end(), std::not_equal_to<>()) == f.end()) {
    return false;
  }
  double sd = population_sd(f);
  double m = mean(f);
  if (!(sd > 1e-12 * std::max(1.0, std::fabs(m)))) return false;
  for (std::size_t i = 0; i < f.size(); ++i) z[i] = (f[i] - m) / sd;
  return true;
}

TimelineSeries weekly_series(std::span<const std::optional<std::int64_t>> timestamps,
                             std::span<const bool> flagged) {
  if (timestamps.size() != flagged.size()) throw InvalidArgument("timeline: input lengths differ");
  std::map<std::int64_t, std::pair<std::size_t, std::size_t>> weeks;
  TimelineSeries series;
  for (std::size_t i = 0; i < timestamps.size(); ++i) {
    if (!timestamps[i]) {
      ++series.skipped;
      continue;
    }
    auto& w = weeks[week_start(*timestamps[i])];
    ++w.first;
    if (flagged[i]) ++w.second;
  }
  std::vector<double> f;
  for (const auto& [start, counts] : weeks) {
    TimelineBucket b;
    b.week_start = start;
    b.messages = counts.first;
    b.labeled = counts.second;
    b.f = static_cast<double>(b.labeled) / static_cast<double>(b.messages);
    f.push_back(b.f);
    series.buckets.push_back(b);
  }
  std::vector<double> z;
  series.degenerate = !zscores(f, z);
  for (std::size_t i = 0; i < z.size(); ++i) series.buckets[i].zscore = z[i];
  return series;
}

TimelineSeries timeline(std::span<const Message> messages, std::span<const TextLabeling> labelings,
                        Dimension dimension) {
  if (messages.size() != labelings.size()) throw InvalidArgument("timeline: input lengths differ");
  std::vector<std::optional<std::int64_t>> ts;
  std::unique_ptr<bool[]> flags(new bool[messages.size()]);
  for (std::size_t i = 0; i < messages.size(); ++i) {
    ts.push_back(messages[i].timestamp);
    flags[i] = labelings[i].labeled.contains(dimension);
  }
  auto series = weekly_series(ts, std::span<const bool>(flags.get(), messages.size()));
  series.dimension = dimension;
  return series;
}

RelationshipLabel relationship_label(std::span<const TextLabeling> labelings,
                                     std::size_t min_messages) {
  RelationshipLabel out;
  out.messages = labelings.size();
  if (labelings.size() < min_messages) {
    out.reason = "fewer than " + std::to_string(min_messages) + " messages";
    return out;
  }
  std::array<double, kDimensionCount> score_sum{};
  std::array<std::size_t, kDimensionCount> scored{};
  for (const auto& l : labelings) {
    for (Dimension d : kAllDimensions) {
      auto i = index_of(d);
      if (l.labeled.contains(d)) ++out.counts[i];
      if (l.max_score[i]) {
        score_sum[i] += *l.max_score[i];
        ++scored[i];
      }
    }
  }
  auto mean_score = [&](std::size_t i) {
    return scored[i] ? score_sum[i] / static_cast<double>(scored[i]) : 0.0;
  };
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < kDimensionCount; ++i) {
    if (out.counts[i] == 0) continue;
    if (!best || out.counts[i] > out.counts[*best] ||
        (out.counts[i] == out.counts[*best] && mean_score(i) > mean_score(*best))) {
      best = i;
    }
  }
  if (!best) {
    out.reason = "no message received a label";
    return out;
  }
  out.dimension = kAllDimensions[*best];
  return out;
}

std::map<UserPair, std::vector<std::size_t>> group_by_pair(std::span<const Message> messages) {
  std::map<UserPair, std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < messages.size(); ++i) {
    const auto& m = messages[i];
    if (!m.recipient || *m.recipient == m.author) continue;
    UserPair key = std::minmax(m.author, *m.recipient);
    out[key].push_back(i);
  }
  return out;
}

std::map<std::string, double> state_prevalence(std::span<const Message> messages,
                                               std::span<const TextLabeling> labelings,
                                               const GeoMap& geo, Dimension dimension) {
  if (messages.size() != labelings.size()) {
    throw InvalidArgument("state_prevalence: input lengths differ");
  }
  std::map<std::string, std::pair<std::size_t, std::size_t>> counts;
  for (std::size_t i = 0; i < messages.size(); ++i) {
    auto it = geo.user_to_region.find(messages[i].author);
    if (it == geo.user_to_region.end()) continue;
    auto& c = counts[it->second];
    ++c.first;
    if (labelings[i].labeled.contains(dimension)) ++c.second;
  }
  std::map<std::string, double> out;
  for (const auto& [region, c] : counts) {
    out[region] = static_cast<double>(c.second) / static_cast<double>(c.first);
  }
  return out;
}

}  // namespace socdim
