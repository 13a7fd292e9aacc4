#include "macronet/gravity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "macronet/errors.hpp"

namespace macronet {

namespace {

constexpr double kMinDistance = 0.05;

void validate(const GravityParams& p) {
  if (p.n_countries < 4) raise(errc::invalid_params, "n_countries must be >= 4");
  if (!(p.noise_scale > 0.0)) raise(errc::invalid_params, "noise_scale must be > 0");
  if (!(p.size_tail_exponent > 1.0)) raise(errc::invalid_params, "size_tail_exponent must be > 1");
  if (p.coupling < 0.0) raise(errc::invalid_params, "coupling must be >= 0");
}

std::vector<double> ranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> rank(n, 0.0);
  std::size_t k = 0;
  while (k < n) {
    std::size_t j = k;
    while (j + 1 < n && values[order[j + 1]] == values[order[k]]) ++j;
    double mean_rank = 0.5 * static_cast<double>(k + j) + 1.0;  // average rank of the tie block
    for (std::size_t m = k; m <= j; ++m) rank[order[m]] = mean_rank;
    k = j + 1;
  }
  return rank;
}

}  // namespace

Eigen::MatrixXd pairwise_distances(const std::vector<std::pair<double, double>>& positions) {
  const Eigen::Index n = static_cast<Eigen::Index>(positions.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      double dx = positions[i].first - positions[j].first;
      double dy = positions[i].second - positions[j].second;
      double dist = std::max(std::sqrt(dx * dx + dy * dy), kMinDistance);
      d(i, j) = dist;
      d(j, i) = dist;
    }
  }
  return d;
}

Eigen::MatrixXd trade_from_gravity(const std::vector<double>& sizes,
                                   const Eigen::MatrixXd& distances, double noise_scale,
                                   Rng& rng) {
  const Eigen::Index n = static_cast<Eigen::Index>(sizes.size());
  if (distances.rows() != n || distances.cols() != n) {
    raise(errc::invalid_params, "distance matrix does not match size vector");
  }
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      t(i, j) = sizes[i] * sizes[j] / distances(i, j) * std::exp(noise_scale * rng.normal());
    }
  }
  return 0.5 * (t + t.transpose()).eval();
}

std::vector<std::string> synthetic_entities(int n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (int i = 1; i <= n; ++i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "C%02d", i % 100);
    out.emplace_back(buf);
  }
  return out;
}

SyntheticEconomy generate(const GravityParams& params, int t_periods) {
  validate(params);
  if (t_periods < 30) raise(errc::invalid_params, "t_periods must be >= 30");

  const int n = params.n_countries;
  Rng rng(params.seed);

  // Draw order is part of the fixture contract: sizes, positions, trade
  // noise, FDI noise, common factor, idiosyncratic returns.
  std::vector<double> sizes(n);
  for (int i = 0; i < n; ++i) {
    sizes[i] = std::pow(rng.uniform(), -1.0 / params.size_tail_exponent);
  }
  std::vector<std::pair<double, double>> positions(n);
  for (int i = 0; i < n; ++i) {
    double x = rng.uniform();
    double y = rng.uniform();
    positions[i] = {x, y};
  }
  Eigen::MatrixXd distances = pairwise_distances(positions);
  Eigen::MatrixXd trade_w = trade_from_gravity(sizes, distances, params.noise_scale, rng);

  Eigen::MatrixXd fdi_w = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      fdi_w(i, j) = std::pow(trade_w(i, j), params.fdi_trade_elasticity) *
                    std::exp(params.noise_scale * rng.normal());
    }
  }
  fdi_w = 0.5 * (fdi_w + fdi_w.transpose()).eval();

  // One-factor returns: loadings scale with normalized trade intensity, so
  // `coupling` controls how strongly trade-central countries co-move.
  Eigen::VectorXd strength = trade_w.rowwise().sum();
  double peak = strength.maxCoeff();
  std::vector<double> loadings(n, 0.0);
  for (int i = 0; i < n; ++i) {
    loadings[i] = params.coupling * (peak > 0.0 ? strength(i) / peak : 0.0);
  }

  std::vector<double> factor(t_periods - 1);
  for (double& f : factor) f = rng.normal();
  Eigen::MatrixXd returns(n, t_periods - 1);
  for (int i = 0; i < n; ++i) {
    for (int t = 0; t < t_periods - 1; ++t) {
      returns(i, t) = loadings[i] * factor[t] + rng.normal();
    }
  }

  Eigen::MatrixXd prices(n, t_periods);
  prices.col(0).setConstant(100.0);
  for (int t = 1; t < t_periods; ++t) {
    prices.col(t) = prices.col(t - 1).array() * returns.col(t - 1).array().exp();
  }

  std::vector<std::string> entities = synthetic_entities(n);
  std::vector<std::string> periods(t_periods);
  for (int t = 0; t < t_periods; ++t) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "P%04d", t + 1);
    periods[t] = buf;
  }

  SyntheticEconomy economy{
      entities,
      std::move(sizes),
      std::move(positions),
      LayerMatrix(entities, LayerKind::Trade, std::move(trade_w)),
      LayerMatrix(entities, LayerKind::Fdi, std::move(fdi_w)),
      PricePanel(entities, std::move(periods), std::move(prices)),
      GeneratorTruth{params, t_periods, Rng::kAlgorithm, std::move(loadings),
                     std::move(returns)},
  };
  return economy;
}

std::pair<double, double> size_centrality_check(const SyntheticEconomy& economy) {
  CentralityVector evc = eigenvector_centrality(economy.trade, Normalization::UnitL2);
  std::vector<double> values(evc.values.data(), evc.values.data() + evc.values.size());
  return {pearson(economy.sizes, values), spearman(economy.sizes, values)};
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) raise(errc::invalid_params, "pearson needs equal-length vectors");
  const double n = static_cast<double>(x.size());
  double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) raise(errc::degenerate_variance, "constant vector");
  return sxy / std::sqrt(sxx * syy);
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  return pearson(ranks(x), ranks(y));
}

}  // namespace macronet
