#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "socdim/dimension.hpp"
#include "socdim/evaluate.hpp"
#include "socdim/features.hpp"
#include "socdim/model.hpp"

namespace socdim {

// TOML subset: `[section]` headers, `key = value` with quoted strings,
// numbers, true/false and single-line `[a, b]` arrays; `#` comments.
using ConfigValue = std::variant<std::string, double, bool, std::vector<std::string>>;
using ConfigTable = std::map<std::string, ConfigValue>;  // "section.key"

ConfigTable parse_config_table(std::istream& in);

struct RunConfig {
  std::uint64_t seed = 42;
  std::size_t workers = 0;  // 0: available parallelism

  // [paths]
  std::filesystem::path corpus;
  std::string corpus_format = "comments_jsonl";
  std::filesystem::path sentences;  // annotated sentences, comments_jsonl
  std::filesystem::path annotations;
  std::filesystem::path data_dir;  // resources; empty means the default
  std::filesystem::path embeddings;
  std::size_t embedding_dim = 300;
  std::filesystem::path models_dir = "models";
  std::filesystem::path group_regions;
  std::filesystem::path densities;
  std::vector<std::filesystem::path> census;  // one `region,value` file per outcome
  std::filesystem::path output_dir = "out";

  FeatureConfig features;
  NgramOptions ngrams;

  // [annotations]
  std::size_t quorum = 2;
  double fail_threshold = 0.4;
  bool single_vote_negative = false;

  // [learn]
  std::vector<ModelKind> models{ModelKind::kLogreg, ModelKind::kGbdt};
  std::size_t folds = 10;
  GridConfig grids;

  // [text]
  std::size_t min_sentence_tokens = 6;
  std::size_t max_sentence_tokens = 20;

  // [analytics]
  double threshold = 0.95;
  std::size_t min_messages = 20;
  std::size_t min_contributions = 5;
  std::vector<Dimension> dimensions{kAllDimensions.begin(), kAllDimensions.end()};
  bool standardize = true;
  bool sentiment_baseline = false;
};

// Every field is optional and defaults as above. Unknown keys and bad values
// are reported together in one InvalidArgument, one field per line.
RunConfig parse_run_config(std::istream& in, const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace socdim
