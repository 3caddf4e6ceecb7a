#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "socdim/dimension.hpp"

namespace socdim {

enum class Source { kComments, kEmail, kDialog, kTweets };

std::string_view to_string(Source s);

enum class CorpusFormat { kCommentsJsonl, kEmailDir, kDialogTsv, kTweetsJsonl };

std::optional<CorpusFormat> parse_corpus_format(std::string_view name);
std::string_view to_string(CorpusFormat f);

// One unit of communication. Timestamps are UTC epoch seconds.
struct Message {
  std::string id;
  std::string author;
  std::optional<std::string> recipient;
  std::optional<std::int64_t> timestamp;
  std::string text;
  std::optional<std::string> group;
  Source source = Source::kComments;

  friend bool operator==(const Message&, const Message&) = default;
};

struct LoadOptions {
  // Field separator for dialog files; the movie-dialog corpus uses " +++$+++ ".
  std::string dialog_separator = " +++$+++ ";
};

struct LoadReport {
  std::size_t records = 0;  // messages emitted
  std::size_t skipped = 0;  // malformed records
};

// Streams messages in file order to `sink`. Throws IoError when the path is
// unreadable and FormatError when more than half the records are malformed
// (checked once the input is exhausted).
LoadReport for_each_message(const std::filesystem::path& path, CorpusFormat format,
                            const std::function<void(Message&&)>& sink,
                            const LoadOptions& options = {});

struct LoadedCorpus {
  std::vector<Message> messages;
  LoadReport report;
};

LoadedCorpus load_messages(const std::filesystem::path& path, CorpusFormat format,
                           const LoadOptions& options = {});

// Parses "YYYY-MM-DD[ T]HH:MM[:SS][Z|+hh:mm]" and RFC-822 style
// "Mon, 14 May 2001 16:39:00 -0700 (PDT)". Missing zone means UTC.
std::optional<std::int64_t> parse_timestamp(std::string_view text);

// --- annotation exports ------------------------------------------------------

struct AnnotationRecord {
  std::string sentence_id;
  std::string annotator_id;
  DimensionSet labels;
  bool other_flag = false;
  bool is_gold = false;
  DimensionSet gold_labels;
};

struct RowError {
  std::size_t line = 0;
  std::string message;
};

struct AnnotationLoad {
  std::vector<AnnotationRecord> records;
  std::vector<RowError> rejected;
};

// Header: sentence_id,annotator_id,labels,is_gold,gold_labels
AnnotationLoad load_annotations(const std::filesystem::path& path);
AnnotationLoad parse_annotations(std::istream& in);

// --- geo-referencing ---------------------------------------------------------

struct GeoMap {
  std::map<std::string, std::string> user_to_region;
  std::map<std::string, double> region_population_density;
};

// A user is kept iff they wrote at least `min_contributions` messages in
// region-mapped groups and all those groups map to one region.
GeoMap georeference_users(std::span<const Message> messages,
                          const std::map<std::string, std::string>& group_to_region,
                          std::size_t min_contributions = 5);

// CSV `group,region` (header optional).
std::map<std::string, std::string> load_group_regions(const std::filesystem::path& path);

// CSV `<region>,<value>` with a header row; used for densities and census
// indicators alike.
std::map<std::string, double> load_region_values(const std::filesystem::path& path);

}  // namespace socdim
