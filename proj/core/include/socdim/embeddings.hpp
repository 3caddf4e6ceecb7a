#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "socdim/dimension.hpp"
#include "socdim/text.hpp"

namespace socdim {

// Immutable word -> vector table. Vectors are stored contiguously.
class EmbeddingStore {
 public:
  EmbeddingStore() = default;
  explicit EmbeddingStore(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return index_.size(); }
  bool contains(std::string_view word) const;

  // Returns false (and keeps the existing vector) when the word is present.
  bool add(std::string word, std::span<const float> vector);

  // Pointer to `dim()` floats, or nullptr for OOV words.
  const float* find(std::string_view word) const;

 private:
  std::size_t dim_ = 0;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<float> data_;
};

struct EmbeddingLoadReport {
  std::size_t lines = 0;
  std::size_t skipped = 0;
  std::size_t duplicates = 0;
};

// Text format `word v1 ... vd`, one word per line. A leading `<count> <dim>`
// header is skipped. Lines of the wrong width are skipped; more than 1%
// skipped, or an empty result, is a FormatError.
EmbeddingStore load_embeddings(const std::filesystem::path& path, std::size_t expected_dim,
                               EmbeddingLoadReport* report = nullptr);
EmbeddingStore parse_embeddings(std::istream& in, std::size_t expected_dim,
                                EmbeddingLoadReport* report = nullptr);

// Mean vector of the in-vocabulary word and number tokens. Throws
// NoVectorError when none is in the store.
std::vector<double> sentence_vector(const std::vector<Token>& tokens, const EmbeddingStore& store);

struct DimensionAnchor {
  Dimension dimension = Dimension::kKnowledge;
  std::vector<std::string> keywords;  // the in-vocabulary ones
  std::vector<double> vector;
};

// Mean of the in-vocabulary keyword vectors. Throws NoVectorError naming the
// dimension when every keyword is OOV.
DimensionAnchor anchor_vector(Dimension dimension, const std::vector<std::string>& keywords,
                              const EmbeddingStore& store);
DimensionAnchor anchor_vector(Dimension dimension, const EmbeddingStore& store);

double euclidean(std::span<const double> a, std::span<const double> b);
double cosine_similarity(std::span<const double> a, std::span<const double> b);

double distance_score(const Sentence& sentence, const DimensionAnchor& anchor,
                      const EmbeddingStore& store);

// 1 / (1 + distance).
inline double pseudo_confidence(double distance) { return 1.0 / (1.0 + distance); }

}  // namespace socdim
