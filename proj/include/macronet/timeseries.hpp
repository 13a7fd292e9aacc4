#pragma once

#include <Eigen/Core>
#include <string>
#include <utility>
#include <vector>

namespace macronet {

/// Aligned panel of strictly positive price levels, one row per entity,
/// one column per period.  Period labels are opaque sortable strings.
struct PricePanel {
  std::vector<std::string> entities;
  std::vector<std::string> periods;
  Eigen::MatrixXd prices;  // N x T

  /// Validates positivity, strictly increasing periods, unique entities.
  PricePanel(std::vector<std::string> entities_, std::vector<std::string> periods_,
             Eigen::MatrixXd prices_);

  Eigen::Index n_entities() const { return prices.rows(); }
  Eigen::Index n_periods() const { return prices.cols(); }
};

/// N x (T-1) matrix of log returns; column t is labeled by the later period
/// of the pair it was computed from.
struct ReturnPanel {
  std::vector<std::string> entities;
  std::vector<std::string> periods;  // length T-1
  Eigen::MatrixXd returns;           // N x (T-1)

  ReturnPanel(std::vector<std::string> entities_, std::vector<std::string> periods_,
              Eigen::MatrixXd returns_);

  Eigen::Index n_entities() const { return returns.rows(); }
  Eigen::Index n_observations() const { return returns.cols(); }
};

/// Symmetric Pearson correlation matrix with exact unit diagonal and
/// entries clamped into [-1, 1].
struct CorrelationMatrix {
  std::vector<std::string> entities;
  Eigen::MatrixXd rho;  // N x N

  CorrelationMatrix(std::vector<std::string> entities_, Eigen::MatrixXd rho_);
};

/// One entity's raw observations before alignment.
struct RawSeries {
  std::string entity;
  std::vector<std::pair<std::string, double>> observations;  // (period, price)
};

/// Restrict all series to the periods present in every one of them
/// (listwise alignment), sorted by period label.
PricePanel align_panel(const std::vector<RawSeries>& raw);

/// r[i][t] = ln(P[i][t+1] / P[i][t]).
ReturnPanel log_returns(const PricePanel& panel);

/// Standardize to mean 0, sample (n-1) standard deviation 1.
std::vector<double> zscore(const std::vector<double>& values);

/// Sample Pearson correlation of the return rows.  Requires at least three
/// observations and positive variance in every row.
CorrelationMatrix pearson_correlation(const ReturnPanel& returns);

}  // namespace macronet
