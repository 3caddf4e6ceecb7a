#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "socdim/error.hpp"
#include "socdim/model.hpp"

namespace socdim {
namespace {

// Training rows re-expressed as per-feature indices into the sorted distinct
// values. Entries equal to a feature's most common bin are left out of the
// sparse row lists; their histogram mass is recovered from node totals.
struct BinnedData {
  std::size_t rows = 0, cols = 0;
  std::vector<std::vector<double>> values;  // per feature, ascending
  std::vector<std::size_t> offset;          // first histogram slot per feature
  std::vector<std::uint32_t> common;        // most frequent bin per feature
  std::vector<std::uint32_t> bins;          // column-major
  std::vector<std::size_t> row_start;       // CSR over uncommon entries
  std::vector<std::uint32_t> entry_slot;    // offset[f] + bin
  std::size_t total_bins = 0;

  std::uint32_t bin(std::size_t row, std::size_t f) const { return bins[f * rows + row]; }
};

BinnedData bin_data(const Dataset& data) {
  BinnedData b;
  b.rows = data.rows();
  b.cols = data.cols;
  b.values.resize(b.cols);
  b.bins.resize(b.rows * b.cols);
  b.common.resize(b.cols);
  std::vector<double> column(b.rows);
  for (std::size_t f = 0; f < b.cols; ++f) {
    for (std::size_t i = 0; i < b.rows; ++i) column[i] = data.x[i * b.cols + f];
    auto& vals = b.values[f];
    vals = column;
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    std::vector<std::size_t> counts(vals.size(), 0);
    for (std::size_t i = 0; i < b.rows; ++i) {
      auto bin = static_cast<std::uint32_t>(
          std::lower_bound(vals.begin(), vals.end(), column[i]) - vals.begin());
      b.bins[f * b.rows + i] = bin;
      ++counts[bin];
    }
    b.common[f] = static_cast<std::uint32_t>(
        std::max_element(counts.begin(), counts.end()) - counts.begin());
    b.offset.push_back(b.total_bins);
    b.total_bins += vals.size();
  }
  b.row_start.push_back(0);
  for (std::size_t i = 0; i < b.rows; ++i) {
    for (std::size_t f = 0; f < b.cols; ++f) {
      auto bin = b.bin(i, f);
      if (bin != b.common[f]) b.entry_slot.push_back(static_cast<std::uint32_t>(b.offset[f] + bin));
    }
    b.row_start.push_back(b.entry_slot.size());
  }
  return b;
}

struct Stats {
  double g = 0, h = 0, w = 0;
  void add(double g2, double h2, double w2) {
    g += g2;
    h += h2;
    w += w2;
  }
};

double score(const Stats& s) { return s.g * s.g / (s.h + kGbdtLambda); }

class TreeBuilder {
 public:
  TreeBuilder(const BinnedData& data, const GbdtHyper& hyper, const std::vector<double>& grad,
              const std::vector<double>& hess, const std::vector<double>& weight)
      : data_(data), hyper_(hyper), grad_(grad), hess_(hess), weight_(weight),
        hist_(data.total_bins) {}

  Tree build(std::vector<std::size_t> rows) {
    tree_.clear();
    grow(rows, 0);
    return std::move(tree_);
  }

 private:
  struct Split {
    bool found = false;
    std::size_t feature = 0;
    std::uint32_t left_last = 0;  // last bin routed left
    double threshold = 0.0;
    double gain = -std::numeric_limits<double>::infinity();
  };

  int grow(std::vector<std::size_t>& rows, std::size_t depth) {
    Stats total;
    for (auto r : rows) total.add(grad_[r], hess_[r], weight_[r]);
    int id = static_cast<int>(tree_.size());
    tree_.push_back({});

    Split split;
    if (depth < hyper_.max_depth && rows.size() >= 2) split = best_split(rows, total);
    if (!split.found) {
      tree_[id].value = -hyper_.learning_rate * total.g / (total.h + kGbdtLambda);
      return id;
    }

    std::vector<std::size_t> left, right;
    for (auto r : rows) {
      (data_.bin(r, split.feature) <= split.left_last ? left : right).push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();
    int l = grow(left, depth + 1);
    int r = grow(right, depth + 1);
    tree_[id].feature = static_cast<int>(split.feature);
    tree_[id].threshold = split.threshold;
    tree_[id].left = l;
    tree_[id].right = r;
    return id;
  }

  Split best_split(const std::vector<std::size_t>& rows, const Stats& total) {
    std::fill(hist_.begin(), hist_.end(), Stats{});
    for (auto r : rows) {
      for (std::size_t e = data_.row_start[r]; e < data_.row_start[r + 1]; ++e) {
        hist_[data_.entry_slot[e]].add(grad_[r], hess_[r], weight_[r]);
      }
    }
    const double parent = score(total);
    // Every split of a convex objective has gain >= 0 in exact arithmetic;
    // the tolerance admits zero-gain splits lost to rounding.
    const double floor = -1e-12 * (1.0 + std::fabs(parent));
    Split best;
    for (std::size_t f = 0; f < data_.cols; ++f) {
      const std::size_t n = data_.values[f].size();
      if (n < 2) continue;
      Stats* h = hist_.data() + data_.offset[f];
      Stats rest = total;
      for (std::size_t b = 0; b < n; ++b) {
        if (b != data_.common[f]) {
          rest.g -= h[b].g;
          rest.h -= h[b].h;
          rest.w -= h[b].w;
        }
      }
      h[data_.common[f]] = rest;

      Stats left;
      std::size_t prev = n;
      for (std::size_t b = 0; b < n; ++b) {
        if (h[b].w <= 0) continue;
        if (prev != n) {
          Stats right{total.g - left.g, total.h - left.h, total.w - left.w};
          if (left.w >= hyper_.min_leaf && right.w >= hyper_.min_leaf) {
            double gain = score(left) + score(right) - parent;
            if (gain >= floor && gain > best.gain) {
              best.found = true;
              best.gain = gain;
              best.feature = f;
              best.left_last = static_cast<std::uint32_t>(prev);
              best.threshold = 0.5 * (data_.values[f][prev] + data_.values[f][b]);
            }
          }
        }
        left.add(h[b].g, h[b].h, h[b].w);
        prev = b;
      }
    }
    return best;
  }

  const BinnedData& data_;
  const GbdtHyper& hyper_;
  const std::vector<double>& grad_;
  const std::vector<double>& hess_;
  const std::vector<double>& weight_;
  std::vector<Stats> hist_;
  Tree tree_;
};

double tree_value(const Tree& tree, std::span<const double> x) {
  int node = 0;
  while (tree[node].feature >= 0) {
    const auto& n = tree[node];
    node = x[n.feature] < n.threshold ? n.left : n.right;
  }
  return tree[node].value;
}

}  // namespace

GbdtParams train_gbdt(const Dataset& data, const GbdtHyper& hyper) {
  if (hyper.max_depth < 1) throw InvalidArgument("gbdt: max_depth must be at least 1");
  if (hyper.rounds < 1) throw InvalidArgument("gbdt: rounds must be at least 1");
  if (!(hyper.learning_rate > 0)) throw InvalidArgument("gbdt: learning rate must be positive");

  double pos = 0, neg = 0;
  std::set<std::vector<double>> distinct;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    if (data.w[i] <= 0) continue;
    (data.y[i] ? pos : neg) += data.w[i];
    if (distinct.size() < 2) {
      auto r = data.row(i);
      distinct.emplace(r.begin(), r.end());
    }
  }
  if (pos == 0 || neg == 0) throw InvalidArgument("gbdt: training data must contain both classes");
  if (distinct.size() < 2) throw InvalidArgument("gbdt: need at least two distinct feature rows");

  GbdtParams params;
  params.learning_rate = hyper.learning_rate;
  params.base_score = std::log(pos / neg);

  BinnedData binned = bin_data(data);
  const std::size_t n = data.rows();
  std::vector<double> margin(n, params.base_score), grad(n), hess(n);
  std::vector<std::size_t> all;
  for (std::size_t i = 0; i < n; ++i) {
    if (data.w[i] > 0) all.push_back(i);
  }
  TreeBuilder builder(binned, hyper, grad, hess, data.w);
  for (std::size_t round = 0; round < hyper.rounds; ++round) {
    for (std::size_t i = 0; i < n; ++i) {
      double p = sigmoid(margin[i]);
      grad[i] = data.w[i] * (p - data.y[i]);
      hess[i] = data.w[i] * p * (1 - p);
    }
    Tree tree = builder.build(all);
    for (std::size_t i = 0; i < n; ++i) margin[i] += tree_value(tree, data.row(i));
    params.trees.push_back(std::move(tree));
  }
  return params;
}

double gbdt_margin(const GbdtParams& p, std::span<const double> x,
                   std::optional<std::size_t> rounds) {
  std::size_t use = std::min(rounds.value_or(p.trees.size()), p.trees.size());
  double z = p.base_score;
  for (std::size_t t = 0; t < use; ++t) z += tree_value(p.trees[t], x);
  return z;
}

}  // namespace socdim
