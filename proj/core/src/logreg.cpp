#include <algorithm>
#include <cmath>

#include "socdim/error.hpp"
#include "socdim/model.hpp"

namespace socdim {

void Dataset::add(std::span<const double> features, int label, double weight) {
  if (features.size() != cols) throw InvalidArgument("dataset row has the wrong width");
  x.insert(x.end(), features.begin(), features.end());
  y.push_back(label ? 1 : 0);
  w.push_back(weight);
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

namespace {

// log(1 + exp(z)) without overflow.
double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double dot(std::span<const double> a, const double* b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void check_labels(const Dataset& data) {
  bool pos = false, neg = false;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    if (data.w[i] <= 0) continue;
    (data.y[i] ? pos : neg) = true;
  }
  if (!pos || !neg) throw InvalidArgument("training data must contain both classes");
}

}  // namespace

LogisticObjective::LogisticObjective(const Dataset& data, double l2) : data_(data), l2_(l2) {
  for (double w : data.w) total_weight_ += w;
  if (total_weight_ <= 0) throw InvalidArgument("training data has no weight");
}

double LogisticObjective::loss(std::span<const double> params) const {
  std::vector<double> grad;
  return evaluate(params, grad);
}

std::vector<double> LogisticObjective::gradient(std::span<const double> params) const {
  std::vector<double> grad;
  evaluate(params, grad);
  return grad;
}

double LogisticObjective::evaluate(std::span<const double> params,
                                   std::vector<double>& grad) const {
  const std::size_t d = data_.cols;
  if (params.size() != d + 1) throw InvalidArgument("parameter vector has the wrong width");
  std::span<const double> w = params.first(d);
  const double b = params[d];
  grad.assign(d + 1, 0.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < data_.rows(); ++i) {
    const double* row = data_.x.data() + i * d;
    double z = dot(w, row) + b;
    // -log p(y | z) = softplus(z) - y z
    sum += data_.w[i] * (softplus(z) - data_.y[i] * z);
    double r = data_.w[i] * (sigmoid(z) - data_.y[i]);
    for (std::size_t j = 0; j < d; ++j) grad[j] += r * row[j];
    grad[d] += r;
  }
  double penalty = 0.0;
  for (std::size_t j = 0; j <= d; ++j) grad[j] /= total_weight_;
  for (std::size_t j = 0; j < d; ++j) {
    grad[j] += l2_ * w[j];
    penalty += w[j] * w[j];
  }
  return sum / total_weight_ + 0.5 * l2_ * penalty;
}

void standardization(const Dataset& data, std::vector<double>& mean, std::vector<double>& scale) {
  const std::size_t d = data.cols;
  mean.assign(d, 0.0);
  scale.assign(d, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    auto row = data.row(i);
    for (std::size_t j = 0; j < d; ++j) mean[j] += data.w[i] * row[j];
    total += data.w[i];
  }
  if (total <= 0) throw InvalidArgument("standardization over zero weight");
  for (double& m : mean) m /= total;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    auto row = data.row(i);
    for (std::size_t j = 0; j < d; ++j) scale[j] += data.w[i] * (row[j] - mean[j]) * (row[j] - mean[j]);
  }
  for (double& s : scale) {
    s = std::sqrt(s / total);
    if (!(s > 1e-12)) s = 1.0;
  }
}

Dataset standardize(const Dataset& data, std::span<const double> mean,
                    std::span<const double> scale) {
  Dataset out = data;
  for (std::size_t i = 0; i < out.rows(); ++i) {
    double* row = out.x.data() + i * out.cols;
    for (std::size_t j = 0; j < out.cols; ++j) row[j] = (row[j] - mean[j]) / scale[j];
  }
  return out;
}

std::vector<LogregParams> train_logreg_path(const Dataset& data, double l2, double learning_rate,
                                            std::span<const std::size_t> epochs) {
  if (epochs.empty()) throw InvalidArgument("no epoch count requested");
  if (!std::is_sorted(epochs.begin(), epochs.end())) {
    throw InvalidArgument("epoch counts must be ascending");
  }
  if (!(learning_rate > 0)) throw InvalidArgument("learning rate must be positive");
  if (l2 < 0) throw InvalidArgument("l2 must be non-negative");
  check_labels(data);

  LogregParams base;
  standardization(data, base.mean, base.scale);
  Dataset z = standardize(data, base.mean, base.scale);
  LogisticObjective objective(z, l2);

  std::vector<double> params(objective.dim(), 0.0), grad;
  std::vector<LogregParams> out;
  auto snapshot = [&] {
    LogregParams p = base;
    p.weights.assign(params.begin(), params.end() - 1);
    p.bias = params.back();
    out.push_back(std::move(p));
  };

  std::size_t next = 0;
  for (std::size_t epoch = 0;; ++epoch) {
    while (next < epochs.size() && epochs[next] == epoch) {
      snapshot();
      ++next;
    }
    if (next == epochs.size()) break;
    double loss = objective.evaluate(params, grad);
    if (!std::isfinite(loss)) {
      throw TrainingError("logistic loss became non-finite at epoch " + std::to_string(epoch) +
                          "; features may be unscaled or the learning rate too high");
    }
    for (std::size_t j = 0; j < params.size(); ++j) params[j] -= learning_rate * grad[j];
  }
  return out;
}

LogregParams train_logreg(const Dataset& data, const LogregHyper& hyper) {
  std::size_t e = hyper.epochs;
  return train_logreg_path(data, hyper.l2, hyper.learning_rate, std::span(&e, 1)).front();
}

double logreg_margin(const LogregParams& p, std::span<const double> x) {
  if (x.size() != p.weights.size()) throw SchemaMismatch("feature vector width differs from model");
  double z = p.bias;
  for (std::size_t j = 0; j < x.size(); ++j) z += p.weights[j] * (x[j] - p.mean[j]) / p.scale[j];
  return z;
}

}  // namespace socdim
