#pragma once

#include <array>
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace socdim {

// The ten social dimensions, in canonical order. The order is used for
// tie-breaking and for every tabular output.
enum class Dimension : std::uint8_t {
  kKnowledge = 0,
  kPower,
  kStatus,
  kTrust,
  kSupport,
  kRomance,
  kSimilarity,
  kIdentity,
  kFun,
  kConflict,
};

inline constexpr std::size_t kDimensionCount = 10;

inline constexpr std::array<Dimension, kDimensionCount> kAllDimensions = {
    Dimension::kKnowledge, Dimension::kPower,      Dimension::kStatus,
    Dimension::kTrust,     Dimension::kSupport,    Dimension::kRomance,
    Dimension::kSimilarity, Dimension::kIdentity,  Dimension::kFun,
    Dimension::kConflict,
};

constexpr std::size_t index_of(Dimension d) { return static_cast<std::size_t>(d); }

std::string_view to_string(Dimension d);

// Case-insensitive lookup against the ten canonical names. "other" is not a
// dimension and yields nullopt.
std::optional<Dimension> parse_dimension(std::string_view name);

// Descriptive keywords people use for each dimension; these seed the
// embedding anchors and the planted-signal fixtures.
std::span<const std::string_view> dimension_keywords(Dimension d);

// Small value set over the ten dimensions.
class DimensionSet {
 public:
  DimensionSet() = default;
  DimensionSet(std::initializer_list<Dimension> dims) {
    for (Dimension d : dims) insert(d);
  }

  void insert(Dimension d) { bits_.set(index_of(d)); }
  void erase(Dimension d) { bits_.reset(index_of(d)); }
  bool contains(Dimension d) const { return bits_.test(index_of(d)); }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }

  std::vector<Dimension> to_vector() const;

  // ";"-joined canonical names, canonical order.
  std::string join(char sep = ';') const;

  friend bool operator==(const DimensionSet&, const DimensionSet&) = default;

 private:
  std::bitset<kDimensionCount> bits_;
};

}  // namespace socdim
