#include "macronet/var.hpp"

#include <Eigen/Dense>

#include "macronet/errors.hpp"
#include "macronet/stats.hpp"

namespace macronet {

namespace {

GrangerResult wald_on_lags(const RegressionResult& eq, const std::string& other) {
  // The two restricted coefficients, located by name.
  std::vector<Eigen::Index> idx;
  for (std::size_t j = 0; j < eq.names.size(); ++j) {
    if (eq.names[j] == "L1." + other || eq.names[j] == "L2." + other) {
      idx.push_back(static_cast<Eigen::Index>(j));
    }
  }
  if (idx.size() != 2) raise(errc::internal_error, "lag coefficients not found for " + other);

  Eigen::Vector2d rb(eq.beta(idx[0]), eq.beta(idx[1]));
  Eigen::Matrix2d rvr;
  rvr << eq.vcov(idx[0], idx[0]), eq.vcov(idx[0], idx[1]),
         eq.vcov(idx[1], idx[0]), eq.vcov(idx[1], idx[1]);

  GrangerResult out;
  out.df1 = 2.0;
  out.df2 = eq.df_resid;
  out.f = rb.dot(rvr.ldlt().solve(rb)) / 2.0;
  if (!(out.f >= 0.0)) out.f = 0.0;  // exact-zero restriction under rounding
  out.p = 1.0 - f_cdf(out.f, out.df1, out.df2);
  return out;
}

}  // namespace

VarResult var2(const std::vector<double>& first, const std::vector<double>& second,
               const std::string& name_first, const std::string& name_second) {
  if (first.size() != second.size()) raise(errc::invalid_params, "series lengths differ");
  const Eigen::Index t_len = static_cast<Eigen::Index>(first.size());
  if (t_len < 7) {
    raise(errc::too_short, "VAR(2) needs at least 7 observations, have " + std::to_string(t_len));
  }
  const Eigen::Index n = t_len - 2;

  auto lag_col = [&](const std::vector<double>& v, int lag) {
    Eigen::VectorXd col(n);
    for (Eigen::Index t = 0; t < n; ++t) col(t) = v[static_cast<std::size_t>(t + 2 - lag)];
    return col;
  };

  std::vector<std::pair<std::string, Eigen::VectorXd>> cols;
  cols.emplace_back("L1." + name_first, lag_col(first, 1));
  cols.emplace_back("L2." + name_first, lag_col(first, 2));
  cols.emplace_back("L1." + name_second, lag_col(second, 1));
  cols.emplace_back("L2." + name_second, lag_col(second, 2));
  DesignMatrix design = DesignMatrix::build(cols, true);

  Eigen::VectorXd y1(n);
  Eigen::VectorXd y2(n);
  for (Eigen::Index t = 0; t < n; ++t) {
    y1(t) = first[static_cast<std::size_t>(t + 2)];
    y2(t) = second[static_cast<std::size_t>(t + 2)];
  }

  VarResult out;
  out.name_first = name_first;
  out.name_second = name_second;
  out.n_used = static_cast<long>(n);
  try {
    out.eq_first = ols(y1, design);
    out.eq_second = ols(y2, design);
  } catch (const Error& err) {
    if (err.code() == errc::rank_deficient) {
      raise(errc::near_singular_design, err.what());
    }
    throw;
  }
  out.eq_first.estimator = Estimator::VAREq;
  out.eq_second.estimator = Estimator::VAREq;

  Eigen::VectorXd e1 = y1 - design.X * out.eq_first.beta;
  Eigen::VectorXd e2 = y2 - design.X * out.eq_second.beta;
  const double denom = out.eq_first.df_resid;
  out.resid_cov << e1.squaredNorm() / denom, e1.dot(e2) / denom,
                   e1.dot(e2) / denom, e2.squaredNorm() / denom;

  out.granger_second_to_first = wald_on_lags(out.eq_first, name_second);
  out.granger_first_to_second = wald_on_lags(out.eq_second, name_first);
  return out;
}

GrangerResult granger_wald(const VarResult& v, GrangerDirection direction) {
  if (direction == GrangerDirection::SecondToFirst) {
    return wald_on_lags(v.eq_first, v.name_second);
  }
  return wald_on_lags(v.eq_second, v.name_first);
}

}  // namespace macronet
