#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>

#include "artifacts.hpp"
#include "socdim/analytics.hpp"
#include "socdim/annotations.hpp"
#include "socdim/corpus.hpp"
#include "socdim/csv.hpp"
#include "socdim/embeddings.hpp"
#include "socdim/error.hpp"
#include "socdim/evaluate.hpp"
#include "socdim/features.hpp"
#include "socdim/model.hpp"
#include "socdim/parallel.hpp"
#include "socdim/resources.hpp"

namespace socdim::tools {
namespace {

namespace fs = std::filesystem;

using csv::format_double;

std::size_t worker_count(const RunConfig& c) { return c.workers ? c.workers : default_workers(); }

void require(const fs::path& p, const char* key, std::string_view command) {
  if (p.empty()) {
    throw InvalidArgument(std::string(key) + " is required by '" + std::string(command) + "'");
  }
}

std::shared_ptr<const ResourceBundle> resources(const RunConfig& c) {
  return std::make_shared<const ResourceBundle>(
      load_resources(c.data_dir.empty() ? default_data_dir() : c.data_dir));
}

CorpusFormat corpus_format(const RunConfig& c) {
  auto f = parse_corpus_format(c.corpus_format);
  if (!f) throw InvalidArgument("unknown corpus format '" + c.corpus_format + "'");
  return *f;
}

std::vector<Message> load_corpus(const RunConfig& c) {
  auto loaded = load_messages(c.corpus, corpus_format(c));
  if (loaded.report.skipped) {
    std::cerr << "warning: skipped " << loaded.report.skipped << " malformed records\n";
  }
  return std::move(loaded.messages);
}

std::string model_file(Dimension d, ModelKind k) {
  return std::string(to_string(d)) + "." + std::string(to_string(k)) + ".json";
}

std::string hyper_string(const Hyper& h) {
  std::string out;
  for (const auto& [k, v] : h) out += (out.empty() ? "" : ";") + k + "=" + format_double(v);
  return out;
}

// --- labeled sentences ---------------------------------------------------------

struct LabeledCorpus {
  std::vector<Sentence> sentences;
  std::map<std::string, std::size_t> index;
  std::vector<ConsensusLabel> consensus;
  TrainingSets sets;

  std::vector<std::size_t> indices(const std::vector<std::string>& ids) const {
    std::vector<std::size_t> out;
    for (const auto& id : ids) {
      if (auto it = index.find(id); it != index.end()) out.push_back(it->second);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

AnnotationLoad load_annotation_file(const RunConfig& c) {
  auto load = load_annotations(c.annotations);
  if (!load.rejected.empty()) {
    std::cerr << "warning: rejected " << load.rejected.size() << " annotation rows (first at line "
              << load.rejected.front().line << ": " << load.rejected.front().message << ")\n";
  }
  return load;
}

LabeledCorpus load_labeled(const RunConfig& c, std::string_view command) {
  require(c.sentences, "paths.sentences", command);
  require(c.annotations, "paths.annotations", command);
  LabeledCorpus out;
  for (auto& m : load_messages(c.sentences, CorpusFormat::kCommentsJsonl).messages) {
    out.index[m.id] = out.sentences.size();
    out.sentences.push_back(make_sentence(std::move(m.text), out.sentences.size()));
  }
  auto gated = apply_gold_gate(load_annotation_file(c).records, c.fail_threshold);
  out.consensus = consensus_labels(gated.kept, c.quorum);
  out.sets = build_training_sets(out.consensus, c.single_vote_negative);
  return out;
}

LabeledData labeled_data(const LabeledCorpus& lc, const FeatureTable* table, Dimension d) {
  const auto& set = lc.sets[index_of(d)];
  return {&lc.sentences, table, lc.indices(set.positives), lc.indices(set.negatives)};
}

bool needs_features(const RunConfig& c) {
  return std::any_of(c.models.begin(), c.models.end(),
                     [](ModelKind k) { return k != ModelKind::kEmbeddingDistance; });
}

bool needs_store(const RunConfig& c) {
  return std::find(c.models.begin(), c.models.end(), ModelKind::kEmbeddingDistance) != c.models.end();
}

std::unique_ptr<EmbeddingStore> load_store(const RunConfig& c, std::string_view command) {
  require(c.embeddings, "paths.embeddings", command);
  EmbeddingLoadReport report;
  auto store = std::make_unique<EmbeddingStore>(load_embeddings(c.embeddings, c.embedding_dim, &report));
  if (report.skipped) std::cerr << "warning: skipped " << report.skipped << " embedding lines\n";
  return store;
}

// Shared by train and evaluate.
struct LearningSetup {
  LabeledCorpus labeled;
  std::shared_ptr<const ResourceBundle> bundle;
  std::unique_ptr<FeatureExtractor> extractor;
  FeatureTable table;
  std::unique_ptr<EmbeddingStore> store;
  EvaluateOptions options;

  void set_anchor(Dimension d) {
    auto it = bundle->anchors.find(d);
    options.anchor_keywords = it == bundle->anchors.end() ? nullptr : &it->second;
  }
};

std::unique_ptr<LearningSetup> learning_setup(const RunConfig& c, std::string_view command) {
  auto s = std::make_unique<LearningSetup>();
  s->labeled = load_labeled(c, command);
  s->bundle = resources(c);
  if (needs_features(c)) {
    s->extractor = std::make_unique<FeatureExtractor>(s->bundle, c.features);
    s->table = build_feature_table(*s->extractor, s->labeled.sentences, worker_count(c));
  }
  if (needs_store(c)) s->store = load_store(c, command);
  s->options.k = c.folds;
  s->options.seed = c.seed;
  s->options.grids = c.grids;
  s->options.ngrams = c.ngrams;
  s->options.workers = worker_count(c);
  s->options.store = s->store.get();
  return s;
}

// --- ingest ----------------------------------------------------------------------

void cmd_ingest(const RunConfig& c) {
  require(c.corpus, "paths.corpus", "ingest");
  ArtifactSet out(c.output_dir, "ingest", c.seed);
  auto& passages = out.csv("passages.csv", {"message_id", "source", "author", "recipient", "timestamp",
                                            "sentence_index", "before", "target", "after"});
  auto bundle = resources(c);
  std::vector<Message> geo_messages;
  std::size_t passage_count = 0;
  auto report = for_each_message(c.corpus, corpus_format(c), [&](Message&& m) {
    for (const auto& p : build_passages(m.text, c.min_sentence_tokens, c.max_sentence_tokens,
                                        bundle->text_rules)) {
      csv::write_row(passages, {m.id, std::string(to_string(m.source)), m.author,
                                m.recipient.value_or(""),
                                m.timestamp ? std::to_string(*m.timestamp) : "",
                                std::to_string(p.target.index_in_text),
                                p.before ? p.before->text : "", p.target.text,
                                p.after ? p.after->text : ""});
      ++passage_count;
    }
    if (!c.group_regions.empty() && m.group) {
      m.text.clear();
      geo_messages.push_back(std::move(m));
    }
  });

  std::size_t geo_users = 0;
  if (!c.group_regions.empty()) {
    auto geo = georeference_users(geo_messages, load_group_regions(c.group_regions), c.min_contributions);
    auto& users = out.csv("user_regions.csv", {"user", "region"});
    for (const auto& [user, region] : geo.user_to_region) csv::write_row(users, {user, region});
    geo_users = geo.user_to_region.size();
  }
  auto& summary = out.csv("ingest_summary.csv", {"key", "value"});
  csv::write_row(summary, {"records", std::to_string(report.records)});
  csv::write_row(summary, {"skipped", std::to_string(report.skipped)});
  csv::write_row(summary, {"passages", std::to_string(passage_count)});
  if (!c.group_regions.empty()) csv::write_row(summary, {"georeferenced_users", std::to_string(geo_users)});
  out.commit();
  std::cout << report.records << " messages, " << report.skipped << " skipped, " << passage_count
            << " passages\n";
}

// --- annotate-stats ----------------------------------------------------------------

void cmd_annotate_stats(const RunConfig& c) {
  require(c.annotations, "paths.annotations", "annotate-stats");
  auto load = load_annotation_file(c);
  auto gated = apply_gold_gate(load.records, c.fail_threshold);
  auto consensus = consensus_labels(gated.kept, c.quorum);
  auto agreement = agreement_stats(gated.kept);

  std::map<std::string, std::string> source_of;
  if (!c.sentences.empty()) {
    for (const auto& m : load_messages(c.sentences, CorpusFormat::kCommentsJsonl).messages) {
      source_of[m.id] = m.group.value_or(std::string(to_string(m.source)));
    }
  }
  auto distribution = label_distribution(consensus, source_of);

  ArtifactSet out(c.output_dir, "annotate-stats", c.seed);
  auto& cons = out.csv("consensus.csv", {"sentence_id", "positive_dims", "annotator_count"});
  for (const auto& l : consensus) {
    csv::write_row(cons, {l.sentence_id, l.positive_dims.join(), std::to_string(l.annotator_count)});
  }
  auto& agr = out.csv("agreement.csv", {"dimension", "kappa", "pairs", "excluded"});
  for (Dimension d : kAllDimensions) {
    const auto& a = agreement.per_dimension[index_of(d)];
    csv::write_row(agr, {std::string(to_string(d)), a.kappa ? format_double(*a.kappa) : "",
                         std::to_string(a.pairs), std::to_string(a.excluded)});
  }
  csv::write_row(agr, {"macro", agreement.macro_kappa ? format_double(*agreement.macro_kappa) : "", "", ""});
  auto& dist = out.csv("label_distribution.csv", {"source", "zero", "one", "two", "three_plus"});
  for (const auto& [source, h] : distribution) {
    csv::write_row(dist, {source, format_double(h[0]), format_double(h[1]), format_double(h[2]),
                          format_double(h[3])});
  }
  auto& banned = out.csv("banned_annotators.csv", {"annotator_id"});
  for (const auto& a : gated.banned) csv::write_row(banned, {a});
  auto& rejected = out.csv("rejected_rows.csv", {"line", "message"});
  for (const auto& r : load.rejected) csv::write_row(rejected, {std::to_string(r.line), r.message});
  out.commit();

  const auto& all = distribution.at("all");
  std::printf("%zu sentences with consensus, %zu annotators banned\n", consensus.size(), gated.banned.size());
  std::printf("dimensions per sentence: 0: %.0f%%  1: %.0f%%  2: %.0f%%  3+: %.0f%%\n", all[0] * 100,
              all[1] * 100, all[2] * 100, all[3] * 100);
  if (agreement.macro_kappa) std::printf("macro kappa: %.3f\n", *agreement.macro_kappa);
}

// --- select-ngrams ------------------------------------------------------------------

void cmd_select_ngrams(const RunConfig& c) {
  auto labeled = load_labeled(c, "select-ngrams");
  auto bundle = resources(c);
  FeatureExtractor extractor(bundle, c.features);
  ArtifactSet out(c.output_dir, "select-ngrams", c.seed);
  auto& schema = out.csv("feature_schema.csv", {"index", "family", "name"});
  const auto& features = extractor.schema().features;
  for (std::size_t i = 0; i < features.size(); ++i) {
    csv::write_row(schema, {std::to_string(i), std::string(to_string(features[i].family)), features[i].name});
  }
  for (Dimension d : c.dimensions) {
    const auto& set = labeled.sets[index_of(d)];
    if (!set.trainable()) {
      std::cerr << "warning: no positive sentences for " << to_string(d) << "\n";
      continue;
    }
    std::vector<Sentence> positives, corpus;
    for (auto i : labeled.indices(set.positives)) positives.push_back(labeled.sentences[i]);
    for (auto i : labeled.indices(set.negatives)) corpus.push_back(labeled.sentences[i]);
    corpus.insert(corpus.end(), positives.begin(), positives.end());
    auto vocab = select_ngrams(positives, corpus, d, c.ngrams);
    auto& v = out.csv("ngrams_" + std::string(to_string(d)) + ".csv", {"rank", "ngram", "xi"});
    for (std::size_t r = 0; r < vocab.entries().size(); ++r) {
      csv::write_row(v, {std::to_string(r + 1), vocab.entries()[r].ngram, format_double(vocab.entries()[r].xi)});
    }
  }
  out.commit();
}

// --- train / evaluate ----------------------------------------------------------------

void cmd_train(const RunConfig& c) {
  auto setup = learning_setup(c, "train");
  ArtifactSet out(c.models_dir, "train", c.seed);
  auto& index = out.csv("models.csv", {"dimension", "model", "file", "hyper"});
  for (Dimension d : c.dimensions) {
    if (!setup->labeled.sets[index_of(d)].trainable()) {
      std::cerr << "warning: no positive sentences for " << to_string(d) << "; skipped\n";
      continue;
    }
    setup->set_anchor(d);
    auto data = labeled_data(setup->labeled, &setup->table, d);
    for (ModelKind k : c.models) {
      auto model = train_model(d, k, data, setup->extractor.get(), setup->options);
      out.raw(model_file(d, k)) << model_to_json(model) << "\n";
      csv::write_row(index, {std::string(to_string(d)), std::string(to_string(k)), model_file(d, k),
                             hyper_string(model.meta.hyper)});
      std::cout << "trained " << to_string(d) << " " << to_string(k) << "\n";
    }
  }
  out.commit();
}

struct SummaryRow {
  std::string dimension;
  std::string model;
  double mean = 0;
  double sd = 0;
};

void write_report(ArtifactSet& out, const std::vector<SummaryRow>& rows) {
  std::vector<std::string> dims, kinds;
  std::map<std::pair<std::string, std::string>, const SummaryRow*> cell;
  for (const auto& r : rows) {
    if (std::find(dims.begin(), dims.end(), r.dimension) == dims.end()) dims.push_back(r.dimension);
    if (std::find(kinds.begin(), kinds.end(), r.model) == kinds.end()) kinds.push_back(r.model);
    cell[{r.dimension, r.model}] = &r;
  }
  std::vector<std::string> columns{"dimension"};
  for (const auto& k : kinds) {
    columns.push_back(k + "_mean_auc");
    columns.push_back(k + "_sd_auc");
  }
  auto& report = out.csv("report.csv", columns);
  std::printf("%-12s", "dimension");
  for (const auto& k : kinds) std::printf(" %20s", k.c_str());
  std::printf("\n");
  for (const auto& d : dims) {
    std::vector<std::string> row{d};
    std::printf("%-12s", d.c_str());
    for (const auto& k : kinds) {
      auto it = cell.find({d, k});
      if (it == cell.end()) {
        row.insert(row.end(), {"", ""});
        std::printf(" %20s", "-");
      } else {
        row.push_back(format_double(it->second->mean));
        row.push_back(format_double(it->second->sd));
        std::printf(" %13.3f ±%5.3f", it->second->mean, it->second->sd);
      }
    }
    std::printf("\n");
    csv::write_row(report, row);
  }
}

void cmd_evaluate(const RunConfig& c) {
  auto setup = learning_setup(c, "evaluate");
  ArtifactSet out(c.output_dir, "evaluate", c.seed);
  auto& folds = out.csv("evaluation.csv", {"dimension", "model", "fold", "auc", "hyper"});
  std::vector<SummaryRow> summary;
  for (Dimension d : c.dimensions) {
    if (!setup->labeled.sets[index_of(d)].trainable()) {
      std::cerr << "warning: no positive sentences for " << to_string(d) << "; skipped\n";
      continue;
    }
    setup->set_anchor(d);
    auto data = labeled_data(setup->labeled, &setup->table, d);
    for (ModelKind k : c.models) {
      auto r = evaluate(d, k, data, setup->extractor.get(), setup->options);
      std::string dim(to_string(d)), kind(to_string(k));
      for (std::size_t f = 0; f < r.fold_auc.size(); ++f) {
        csv::write_row(folds, {dim, kind, std::to_string(f), format_double(r.fold_auc[f]),
                               hyper_string(r.fold_hyper[f])});
      }
      csv::write_row(folds, {dim, kind, "mean", format_double(r.mean_auc), ""});
      csv::write_row(folds, {dim, kind, "sd", format_double(r.sd_auc), ""});
      summary.push_back({dim, kind, r.mean_auc, r.sd_auc});
    }
  }
  write_report(out, summary);
  out.commit();
}

void cmd_report(const RunConfig& c) {
  auto path = c.output_dir / "evaluation.csv";
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string() + " (run 'evaluate' first)");
  csv::Reader reader(in);
  auto header = reader.next();
  if (!header || header->size() < 4 || (*header)[0] != "dimension") {
    throw FormatError(path.string() + ": not an evaluation file");
  }
  std::vector<SummaryRow> rows;
  std::map<std::pair<std::string, std::string>, std::size_t> at;
  while (auto row = reader.next()) {
    if (row->size() < 4) throw FormatError(path.string() + ": short row at line " + std::to_string(reader.line()));
    const auto& fold = (*row)[2];
    if (fold != "mean" && fold != "sd") continue;
    auto key = std::make_pair((*row)[0], (*row)[1]);
    auto [it, fresh] = at.emplace(key, rows.size());
    if (fresh) rows.push_back({key.first, key.second, 0, 0});
    double v = std::stod((*row)[3]);
    (fold == "mean" ? rows[it->second].mean : rows[it->second].sd) = v;
  }
  ArtifactSet out(c.output_dir, "report", c.seed);
  write_report(out, rows);
  out.commit();
}

// --- score -------------------------------------------------------------------------

struct LoadedModel {
  Model model;
  const FeatureExtractor* extractor = nullptr;
};

void cmd_score(const RunConfig& c) {
  require(c.corpus, "paths.corpus", "score");
  auto bundle = resources(c);
  std::vector<std::unique_ptr<LoadedModel>> models;
  std::map<std::string, std::unique_ptr<FeatureExtractor>> extractors;
  std::unique_ptr<EmbeddingStore> store;
  for (Dimension d : c.dimensions) {
    for (ModelKind k : c.models) {
      auto path = c.models_dir / model_file(d, k);
      if (!fs::exists(path)) continue;
      auto lm = std::make_unique<LoadedModel>();
      lm->model = load_model(path);
      if (k == ModelKind::kEmbeddingDistance) {
        if (!store) store = load_store(c, "score");
      } else {
        auto& ex = extractors[lm->model.schema_id];
        if (!ex) ex = std::make_unique<FeatureExtractor>(bundle, lm->model.feature_config);
        lm->extractor = ex.get();
      }
      models.push_back(std::move(lm));
      break;  // first available kind wins for each dimension
    }
  }
  if (models.empty()) throw InvalidArgument("no trained models found in " + c.models_dir.string());
  std::vector<DimensionScorer> scorers;
  for (const auto& m : models) scorers.push_back(make_scorer(m->model, m->extractor, store.get()));

  auto messages = load_corpus(c);
  std::vector<TextLabeling> labelings(messages.size());
  parallel_for(messages.size(), worker_count(c), [&](std::size_t i) {
    labelings[i] = label_text(messages[i], scorers, c.threshold, bundle->text_rules);
  });

  ArtifactSet out(c.output_dir, "score", c.seed);
  auto& file = out.csv("labelings.csv", {"message_id", "dimension", "max_score", "labeled"});
  std::size_t labeled = 0;
  for (const auto& l : labelings) {
    for (const auto& s : scorers) {
      const auto& score = l.max_score[index_of(s.dimension)];
      bool on = l.labeled.contains(s.dimension);
      labeled += on;
      csv::write_row(file, {l.message_id, std::string(to_string(s.dimension)),
                            score ? format_double(*score) : "", on ? "1" : "0"});
    }
  }
  out.commit();
  std::cout << messages.size() << " messages scored, " << labeled << " labels above " << c.threshold << "\n";
}

// --- analytics over labelings ---------------------------------------------------------

std::vector<TextLabeling> read_labelings(const RunConfig& c, const std::vector<Message>& messages) {
  auto path = c.output_dir / "labelings.csv";
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string() + " (run 'score' first)");
  csv::Reader reader(in);
  auto header = reader.next();
  if (!header || *header != std::vector<std::string>{"message_id", "dimension", "max_score", "labeled"}) {
    throw FormatError(path.string() + ": unexpected header");
  }
  std::map<std::string, TextLabeling> by_id;
  while (auto row = reader.next()) {
    if (row->size() != 4) throw FormatError(path.string() + ": bad row at line " + std::to_string(reader.line()));
    auto d = parse_dimension((*row)[1]);
    if (!d) throw FormatError(path.string() + ": unknown dimension at line " + std::to_string(reader.line()));
    auto& l = by_id[(*row)[0]];
    l.message_id = (*row)[0];
    if (!(*row)[2].empty()) {
      l.max_score[index_of(*d)] = std::stod((*row)[2]);
      l.scoreable = true;
    }
    if ((*row)[3] == "1") l.labeled.insert(*d);
  }
  std::vector<TextLabeling> out;
  std::size_t missing = 0;
  for (const auto& m : messages) {
    auto it = by_id.find(m.id);
    if (it == by_id.end()) {
      ++missing;
      out.push_back(TextLabeling{m.id, {}, {}, false});
    } else {
      out.push_back(it->second);
    }
  }
  if (missing) std::cerr << "warning: " << missing << " messages have no labeling\n";
  return out;
}

std::string iso_date(std::int64_t t) {
  std::time_t tt = static_cast<std::time_t>(t);
  std::tm utc{};
  gmtime_r(&tt, &utc);
  char buf[16];
  std::strftime(buf, sizeof buf, "%Y-%m-%d", &utc);
  return buf;
}

void write_series(std::ofstream& out, const TimelineSeries& s, const std::string& name) {
  for (const auto& b : s.buckets) {
    csv::write_row(out, {iso_date(b.week_start), name, format_double(b.f), format_double(b.zscore)});
  }
  if (s.degenerate) std::cerr << "note: " << name << " has a constant weekly fraction; z-scores are 0\n";
}

void cmd_timeline(const RunConfig& c) {
  require(c.corpus, "paths.corpus", "timeline");
  auto messages = load_corpus(c);
  auto labelings = read_labelings(c, messages);
  ArtifactSet out(c.output_dir, "timeline", c.seed);
  auto& file = out.csv("timeline.csv", {"week_start", "dimension", "f", "zscore"});
  std::size_t skipped = 0;
  for (Dimension d : c.dimensions) {
    auto s = timeline(messages, labelings, d);
    skipped = s.skipped;
    write_series(file, s, std::string(to_string(d)));
  }
  if (c.sentiment_baseline) {
    // Weekly share of messages whose mean sentence compound is positive.
    auto bundle = resources(c);
    std::unique_ptr<bool[]> positive(new bool[messages.size()]);
    std::vector<std::optional<std::int64_t>> ts;
    for (std::size_t i = 0; i < messages.size(); ++i) {
      double sum = 0;
      std::size_t n = 0;
      for (const auto& s : split_sentences(messages[i].text, bundle->text_rules)) {
        if (s.tokens.empty()) continue;
        sum += sentiment_scores(s, bundle->sentiment)["vader_compound"];
        ++n;
      }
      positive[i] = n > 0 && sum / static_cast<double>(n) >= 0.05;
      ts.push_back(messages[i].timestamp);
    }
    write_series(file, weekly_series(ts, std::span<const bool>(positive.get(), messages.size())),
                 "sentiment");
  }
  out.commit();
  if (skipped) std::cerr << "warning: " << skipped << " messages without a timestamp\n";
}

void cmd_relationships(const RunConfig& c) {
  require(c.corpus, "paths.corpus", "relationships");
  auto messages = load_corpus(c);
  auto labelings = read_labelings(c, messages);
  ArtifactSet out(c.output_dir, "relationships", c.seed);
  std::vector<std::string> columns{"user_a", "user_b", "messages", "dimension", "reason"};
  for (Dimension d : kAllDimensions) columns.push_back(std::string(to_string(d)));
  auto& file = out.csv("relationships.csv", columns);
  std::size_t labeled = 0, pairs = 0;
  for (const auto& [pair, ids] : group_by_pair(messages)) {
    std::vector<TextLabeling> ls;
    for (auto i : ids) ls.push_back(labelings[i]);
    auto r = relationship_label(ls, c.min_messages);
    std::vector<std::string> row{pair.first, pair.second, std::to_string(r.messages),
                                 r.dimension ? std::string(to_string(*r.dimension)) : "", r.reason};
    for (auto n : r.counts) row.push_back(std::to_string(n));
    csv::write_row(file, row);
    labeled += r.dimension.has_value();
    ++pairs;
  }
  out.commit();
  std::cout << pairs << " pairs, " << labeled << " labeled\n";
}

void cmd_geo_regress(const RunConfig& c) {
  require(c.corpus, "paths.corpus", "geo-regress");
  require(c.group_regions, "paths.group_regions", "geo-regress");
  if (c.census.empty()) throw InvalidArgument("paths.census is required by 'geo-regress'");
  auto messages = load_corpus(c);
  auto labelings = read_labelings(c, messages);
  auto geo = georeference_users(messages, load_group_regions(c.group_regions), c.min_contributions);

  ArtifactSet out(c.output_dir, "geo-regress", c.seed);
  auto& prev = out.csv("prevalence.csv", {"region", "dimension", "fraction"});
  std::vector<Predictor> predictors;
  for (Dimension d : c.dimensions) {
    Predictor p{std::string(to_string(d)), state_prevalence(messages, labelings, geo, d)};
    for (const auto& [region, f] : p.values) csv::write_row(prev, {region, p.name, format_double(f)});
    predictors.push_back(std::move(p));
  }
  if (!c.densities.empty()) predictors.push_back({"population_density", load_region_values(c.densities)});

  auto& reg = out.csv("regression.csv", {"outcome", "term", "beta", "se", "t", "p", "stars"});
  auto coef_row = [&](const std::string& outcome, const Coefficient& k) {
    csv::write_row(reg, {outcome, k.name, format_double(k.beta), format_double(k.se), format_double(k.t),
                         format_double(k.p), k.stars});
  };
  for (const auto& census : c.census) {
    std::string outcome = census.stem().string();
    auto fit = ols_regress(outcome, load_region_values(census), predictors, c.standardize);
    coef_row(outcome, fit.intercept);
    for (const auto& k : fit.predictors) coef_row(outcome, k);
    csv::write_row(reg, {outcome, "r2", format_double(fit.r2), "", "", "", ""});
    csv::write_row(reg, {outcome, "adj_r2", format_double(fit.adj_r2), "", "", "", ""});
    csv::write_row(reg, {outcome, "durbin_watson",
                         fit.durbin_watson ? format_double(*fit.durbin_watson) : "", "", "", "", ""});
    csv::write_row(reg, {outcome, "n", std::to_string(fit.n), "", "", "", ""});
    std::printf("%s: n=%zu adj R2=%.3f\n", outcome.c_str(), fit.n, fit.adj_r2);
  }
  out.commit();
}

}  // namespace

const std::vector<CommandInfo>& commands() {
  static const std::vector<CommandInfo> list = {
      {"ingest", "Load a corpus and write annotation passages"},
      {"annotate-stats", "Gold gate, consensus labels, agreement and label distribution"},
      {"select-ngrams", "Rank discriminative n-grams per dimension and export the feature schema"},
      {"train", "Train one model per dimension and model kind"},
      {"evaluate", "Cross-validated AUC per dimension and model kind"},
      {"score", "Label every message of a corpus with the trained models"},
      {"timeline", "Weekly z-scored prevalence per dimension"},
      {"relationships", "Dominant dimension per user pair"},
      {"geo-regress", "Regress regional outcomes on dimension prevalence"},
      {"report", "Summarize evaluation.csv as a dimension-by-model table"},
  };
  return list;
}

void run_command(std::string_view name, const RunConfig& config) {
  static const std::map<std::string_view, void (*)(const RunConfig&)> table = {
      {"ingest", cmd_ingest},
      {"annotate-stats", cmd_annotate_stats},
      {"select-ngrams", cmd_select_ngrams},
      {"train", cmd_train},
      {"evaluate", cmd_evaluate},
      {"score", cmd_score},
      {"timeline", cmd_timeline},
      {"relationships", cmd_relationships},
      {"geo-regress", cmd_geo_regress},
      {"report", cmd_report},
  };
  auto it = table.find(name);
  if (it == table.end()) throw InvalidArgument("unknown command '" + std::string(name) + "'");
  it->second(config);
}

}  // namespace socdim::tools
