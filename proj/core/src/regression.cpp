#include <Eigen/Dense>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>

#include "socdim/analytics.hpp"
#include "socdim/error.hpp"
#include "socdim/metrics.hpp"

namespace socdim {

std::string significance_stars(double p) {
  if (p < 0.01) return "***";
  if (p < 0.05) return "**";
  if (p < 0.1) return "*";
  return "";
}

std::optional<double> durbin_watson(std::span<const double> residuals) {
  double den = 0.0, num = 0.0;
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    den += residuals[i] * residuals[i];
    if (i > 0) num += (residuals[i] - residuals[i - 1]) * (residuals[i] - residuals[i - 1]);
  }
  if (den == 0.0) return std::nullopt;
  return num / den;
}

namespace {

void zscore_in_place(std::vector<double>& v, const std::string& name) {
  double m = mean(v), sd = sample_sd(v);
  if (!(sd > 0.0)) throw CollinearityError("variable " + name + " is constant");
  for (double& x : v) x = (x - m) / sd;
}

}  // namespace

RegressionResult ols_regress(const std::string& outcome_name,
                             const std::map<std::string, double>& outcome,
                             const std::vector<Predictor>& predictors, bool standardize) {
  RegressionResult r;
  r.outcome = outcome_name;
  r.standardized = standardize;
  for (const auto& [region, _] : outcome) {
    bool complete = true;
    for (const auto& p : predictors) complete = complete && p.values.count(region);
    if (complete) r.regions.push_back(region);
  }
  const std::size_t n = r.regions.size(), p = predictors.size();
  if (n < p + 2) {
    throw InvalidArgument("regression needs at least " + std::to_string(p + 2) +
                          " complete regions, have " + std::to_string(n));
  }
  r.n = n;

  std::vector<double> y;
  std::vector<std::vector<double>> cols(p);
  for (const auto& region : r.regions) {
    y.push_back(outcome.at(region));
    for (std::size_t j = 0; j < p; ++j) cols[j].push_back(predictors[j].values.at(region));
  }
  if (standardize) {
    if (!(sample_sd(y) > 0.0)) throw InvalidArgument("outcome " + outcome_name + " is constant");
    zscore_in_place(y, outcome_name);
    for (std::size_t j = 0; j < p; ++j) zscore_in_place(cols[j], predictors[j].name);
  }

  Eigen::MatrixXd X(n, p + 1);
  Eigen::VectorXd Y(n);
  for (std::size_t i = 0; i < n; ++i) {
    X(i, 0) = 1.0;
    for (std::size_t j = 0; j < p; ++j) X(i, j + 1) = cols[j][i];
    Y(i) = y[i];
  }
  Eigen::MatrixXd xtx = X.transpose() * X;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(xtx);
  if (lu.rank() < static_cast<Eigen::Index>(p + 1)) {
    Eigen::MatrixXd kernel = lu.kernel();
    std::string suspects;
    for (std::size_t j = 0; j <= p; ++j) {
      if (kernel.row(static_cast<Eigen::Index>(j)).cwiseAbs().maxCoeff() > 1e-9) {
        if (!suspects.empty()) suspects += ", ";
        suspects += j == 0 ? std::string("(intercept)") : predictors[j - 1].name;
      }
    }
    throw CollinearityError("predictors are collinear: " + suspects);
  }
  Eigen::MatrixXd inv = lu.inverse();
  Eigen::VectorXd beta = inv * (X.transpose() * Y);
  Eigen::VectorXd e = Y - X * beta;

  double rss = e.squaredNorm();
  double ybar = Y.mean();
  double tss = (Y.array() - ybar).square().sum();
  const double df = static_cast<double>(n - p - 1);
  double sigma2 = rss / df;
  r.r2 = tss > 0 ? 1.0 - rss / tss : 0.0;
  r.adj_r2 = 1.0 - (1.0 - r.r2) * static_cast<double>(n - 1) / df;

  boost::math::students_t dist(df);
  auto coefficient = [&](std::size_t j, std::string name) {
    Coefficient c;
    c.name = std::move(name);
    c.beta = beta(static_cast<Eigen::Index>(j));
    c.se = std::sqrt(std::max(0.0, sigma2 * inv(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j))));
    if (c.se > 0) {
      c.t = c.beta / c.se;
      c.p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(c.t)));
    } else {
      c.t = c.beta == 0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), c.beta);
      c.p = c.beta == 0 ? 1.0 : 0.0;
    }
    c.stars = significance_stars(c.p);
    return c;
  };
  r.intercept = coefficient(0, "(intercept)");
  for (std::size_t j = 0; j < p; ++j) r.predictors.push_back(coefficient(j + 1, predictors[j].name));
  r.residuals.assign(e.data(), e.data() + e.size());
  r.durbin_watson = durbin_watson(r.residuals);
  return r;
}

}  // namespace socdim
