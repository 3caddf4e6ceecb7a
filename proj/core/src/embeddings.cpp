#include "socdim/embeddings.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "socdim/error.hpp"

namespace socdim {

bool EmbeddingStore::contains(std::string_view word) const {
  return index_.find(std::string(word)) != index_.end();
}

bool EmbeddingStore::add(std::string word, std::span<const float> vector) {
  if (vector.size() != dim_) throw InvalidArgument("embedding width mismatch for " + word);
  auto [it, inserted] = index_.emplace(std::move(word), index_.size());
  if (!inserted) return false;
  data_.insert(data_.end(), vector.begin(), vector.end());
  return true;
}

const float* EmbeddingStore::find(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return nullptr;
  return data_.data() + it->second * dim_;
}

namespace {

std::vector<std::string_view> fields_of(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

bool parse_float(std::string_view s, float& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

bool is_header(const std::vector<std::string_view>& f) {
  if (f.size() != 2) return false;
  for (auto part : f) {
    for (char c : part) {
      if (c < '0' || c > '9') return false;
    }
  }
  return true;
}

}  // namespace

EmbeddingStore parse_embeddings(std::istream& in, std::size_t expected_dim,
                                EmbeddingLoadReport* report) {
  if (expected_dim == 0) throw InvalidArgument("embedding dimension must be positive");
  EmbeddingStore store(expected_dim);
  EmbeddingLoadReport r;
  std::vector<float> values(expected_dim);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    auto f = fields_of(line);
    if (f.empty()) continue;
    if (first && is_header(f)) {
      first = false;
      continue;
    }
    first = false;
    ++r.lines;
    bool ok = f.size() == expected_dim + 1;
    for (std::size_t i = 0; ok && i < expected_dim; ++i) ok = parse_float(f[i + 1], values[i]);
    if (!ok) {
      ++r.skipped;
      continue;
    }
    if (!store.add(std::string(f[0]), values)) ++r.duplicates;
  }
  if (report) *report = r;
  if (store.size() == 0) throw FormatError("embedding file holds no usable vectors");
  if (static_cast<double>(r.skipped) > 0.01 * static_cast<double>(r.lines)) {
    throw FormatError("embedding file: " + std::to_string(r.skipped) + " of " +
                      std::to_string(r.lines) + " lines do not have " +
                      std::to_string(expected_dim) + " values");
  }
  return store;
}

EmbeddingStore load_embeddings(const std::filesystem::path& path, std::size_t expected_dim,
                               EmbeddingLoadReport* report) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  return parse_embeddings(in, expected_dim, report);
}

std::vector<double> sentence_vector(const std::vector<Token>& tokens, const EmbeddingStore& store) {
  std::vector<double> sum(store.dim(), 0.0);
  std::size_t n = 0;
  for (const auto& t : tokens) {
    if (!is_wordlike(t)) continue;
    const float* v = store.find(t.surface);
    if (!v) continue;
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += v[i];
    ++n;
  }
  if (n == 0) throw NoVectorError("no token of the sentence has an embedding");
  for (double& x : sum) x /= static_cast<double>(n);
  return sum;
}

DimensionAnchor anchor_vector(Dimension dimension, const std::vector<std::string>& keywords,
                              const EmbeddingStore& store) {
  DimensionAnchor anchor;
  anchor.dimension = dimension;
  anchor.vector.assign(store.dim(), 0.0);
  for (const auto& k : keywords) {
    const float* v = store.find(k);
    if (!v) continue;
    anchor.keywords.push_back(k);
    for (std::size_t i = 0; i < anchor.vector.size(); ++i) anchor.vector[i] += v[i];
  }
  if (anchor.keywords.empty()) {
    throw NoVectorError("no keyword of dimension " + std::string(to_string(dimension)) +
                        " has an embedding");
  }
  for (double& x : anchor.vector) x /= static_cast<double>(anchor.keywords.size());
  return anchor;
}

DimensionAnchor anchor_vector(Dimension dimension, const EmbeddingStore& store) {
  std::vector<std::string> words;
  for (auto k : dimension_keywords(dimension)) words.emplace_back(k);
  return anchor_vector(dimension, words, store);
}

double euclidean(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("vector sizes differ");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("vector sizes differ");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / std::sqrt(na * nb);
}

double distance_score(const Sentence& sentence, const DimensionAnchor& anchor,
                      const EmbeddingStore& store) {
  return euclidean(sentence_vector(sentence.tokens, store), anchor.vector);
}

}  // namespace socdim
