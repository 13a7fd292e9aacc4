#include "macronet/timeseries.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "macronet/errors.hpp"

namespace macronet {

namespace {

void check_unique_entities(const std::vector<std::string>& entities) {
  std::set<std::string> seen;
  for (const auto& e : entities) {
    if (!seen.insert(e).second) raise(errc::invalid_params, "duplicate entity '" + e + "'");
  }
}

void check_sorted_periods(const std::vector<std::string>& periods) {
  for (std::size_t t = 1; t < periods.size(); ++t) {
    if (!(periods[t - 1] < periods[t])) {
      raise(errc::invalid_params,
            "periods not strictly increasing at '" + periods[t] + "'");
    }
  }
}

}  // namespace

PricePanel::PricePanel(std::vector<std::string> entities_, std::vector<std::string> periods_,
                       Eigen::MatrixXd prices_)
    : entities(std::move(entities_)), periods(std::move(periods_)), prices(std::move(prices_)) {
  if (static_cast<Eigen::Index>(entities.size()) != prices.rows() ||
      static_cast<Eigen::Index>(periods.size()) != prices.cols()) {
    raise(errc::invalid_params, "price panel shape does not match labels");
  }
  check_unique_entities(entities);
  check_sorted_periods(periods);
  for (Eigen::Index i = 0; i < prices.rows(); ++i) {
    for (Eigen::Index t = 0; t < prices.cols(); ++t) {
      if (!(prices(i, t) > 0.0)) {
        raise(errc::non_positive_price,
              "entity " + entities[i] + " period " + periods[t]);
      }
    }
  }
}

ReturnPanel::ReturnPanel(std::vector<std::string> entities_, std::vector<std::string> periods_,
                         Eigen::MatrixXd returns_)
    : entities(std::move(entities_)), periods(std::move(periods_)), returns(std::move(returns_)) {
  if (static_cast<Eigen::Index>(entities.size()) != returns.rows() ||
      static_cast<Eigen::Index>(periods.size()) != returns.cols()) {
    raise(errc::invalid_params, "return panel shape does not match labels");
  }
  if (!returns.allFinite()) raise(errc::invalid_params, "non-finite return");
}

CorrelationMatrix::CorrelationMatrix(std::vector<std::string> entities_, Eigen::MatrixXd rho_)
    : entities(std::move(entities_)), rho(std::move(rho_)) {
  const Eigen::Index n = rho.rows();
  if (rho.cols() != n || static_cast<Eigen::Index>(entities.size()) != n) {
    raise(errc::invalid_params, "correlation matrix shape does not match entities");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (rho(i, i) != 1.0) raise(errc::internal_error, "correlation diagonal not unit");
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::fabs(rho(i, j) - rho(j, i)) > 1e-12) {
        raise(errc::internal_error, "correlation matrix not symmetric");
      }
      if (rho(i, j) < -1.0 || rho(i, j) > 1.0) {
        raise(errc::internal_error, "correlation entry outside [-1, 1]");
      }
    }
  }
}

PricePanel align_panel(const std::vector<RawSeries>& raw) {
  if (raw.empty()) raise(errc::invalid_params, "no series given");
  for (const auto& s : raw) {
    if (s.observations.empty()) raise(errc::invalid_params, "empty series for " + s.entity);
    for (const auto& [period, price] : s.observations) {
      if (!(price > 0.0)) raise(errc::non_positive_price, "entity " + s.entity + " period " + period);
    }
  }

  // Intersection of period sets across all series.
  std::set<std::string> common;
  for (const auto& [period, price] : raw.front().observations) common.insert(period);
  for (std::size_t k = 1; k < raw.size(); ++k) {
    std::set<std::string> here;
    for (const auto& [period, price] : raw[k].observations) here.insert(period);
    std::set<std::string> out;
    std::set_intersection(common.begin(), common.end(), here.begin(), here.end(),
                          std::inserter(out, out.begin()));
    common.swap(out);
  }
  if (common.empty()) raise(errc::empty_intersection, "no period shared by all series");

  std::vector<std::string> periods(common.begin(), common.end());
  std::vector<std::string> entities;
  entities.reserve(raw.size());
  Eigen::MatrixXd prices(raw.size(), periods.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    entities.push_back(raw[i].entity);
    std::map<std::string, double> lookup(raw[i].observations.begin(), raw[i].observations.end());
    for (std::size_t t = 0; t < periods.size(); ++t) {
      prices(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(t)) = lookup.at(periods[t]);
    }
  }
  return PricePanel(std::move(entities), std::move(periods), std::move(prices));
}

ReturnPanel log_returns(const PricePanel& panel) {
  const Eigen::Index n = panel.n_entities();
  const Eigen::Index t_count = panel.n_periods();
  if (t_count < 2) raise(errc::too_short, "need at least 2 periods, have " + std::to_string(t_count));
  Eigen::MatrixXd r(n, t_count - 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index t = 0; t + 1 < t_count; ++t) {
      r(i, t) = std::log(panel.prices(i, t + 1) / panel.prices(i, t));
    }
  }
  std::vector<std::string> periods(panel.periods.begin() + 1, panel.periods.end());
  return ReturnPanel(panel.entities, std::move(periods), std::move(r));
}

std::vector<double> zscore(const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n < 2) raise(errc::too_short, "zscore needs at least 2 values");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  double sd = std::sqrt(ss / static_cast<double>(n - 1));
  if (!(sd > 0.0)) raise(errc::degenerate_variance, "all values equal");
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = (values[k] - mean) / sd;
  return out;
}

CorrelationMatrix pearson_correlation(const ReturnPanel& panel) {
  const Eigen::Index n = panel.n_entities();
  const Eigen::Index t_count = panel.n_observations();
  if (t_count < 3) raise(errc::too_short, "need at least 3 observations");

  Eigen::MatrixXd centered = panel.returns;
  Eigen::VectorXd norm(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    centered.row(i).array() -= centered.row(i).mean();
    norm(i) = centered.row(i).norm();
    if (!(norm(i) > 0.0)) {
      raise(errc::degenerate_variance, "zero variance for entity " + panel.entities[i]);
    }
  }

  Eigen::MatrixXd rho(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    rho(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      double value = centered.row(i).dot(centered.row(j)) / (norm(i) * norm(j));
      if (std::fabs(value) > 1.0 + 1e-9) {
        raise(errc::internal_error, "correlation escaped [-1,1] beyond rounding");
      }
      value = std::clamp(value, -1.0, 1.0);
      rho(i, j) = value;
      rho(j, i) = value;
    }
  }
  return CorrelationMatrix(panel.entities, std::move(rho));
}

}  // namespace macronet
